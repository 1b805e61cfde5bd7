#include "armlab/config.hpp"

#include <initializer_list>
#include <set>

#include <json.hpp>

#include "armlab/trace_io.hpp"

namespace armlab::cfg {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("config: unknown key '" + item.key() + "' in " + context);
  }
}

const json& require(const json& obj, const std::string& context, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("config: missing key '" + std::string(key) + "' in " + context);
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError("config: expected a number for " + where);
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError("config: expected an integer for " + where);
  return v.get<int>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError("config: expected a string for " + where);
  return v.get<std::string>();
}

Vec3d vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3)
    throw ConfigError("config: expected an array of 3 numbers for " + where);
  return Vec3d{number(v[0], where), number(v[1], where), number(v[2], where)};
}

ArmParamsd parse_arm(const json& obj) {
  check_keys(obj, "arm", {"m1", "m2", "m3", "l1", "l2", "l3", "g"});
  ArmParamsd p = default_arm_params();
  p.m1 = number(require(obj, "arm", "m1"), "arm.m1");
  p.m2 = number(require(obj, "arm", "m2"), "arm.m2");
  p.m3 = number(require(obj, "arm", "m3"), "arm.m3");
  p.l1 = number(require(obj, "arm", "l1"), "arm.l1");
  p.l2 = number(require(obj, "arm", "l2"), "arm.l2");
  p.l3 = number(require(obj, "arm", "l3"), "arm.l3");
  p.g = number(require(obj, "arm", "g"), "arm.g");
  try {
    validate(p);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  return p;
}

ReferenceSpec parse_reference(const json& obj) {
  check_keys(obj, "reference", {"joints", "initial_position", "initial_velocity"});
  ReferenceSpec spec = default_reference();
  if (obj.contains("joints")) {
    const json& joints = obj["joints"];
    if (!joints.is_array() || joints.size() != 3)
      throw ConfigError("config: reference.joints must be an array of 3 objects");
    for (std::size_t i = 0; i < 3; ++i) {
      const json& jj = joints[i];
      const std::string ctx = "reference.joints[" + std::to_string(i) + "]";
      check_keys(jj, ctx, {"offset", "amplitude", "waveform"});
      JointSinusoid& sin_spec = spec.joints[i];
      sin_spec.offset = number(require(jj, ctx, "offset"), ctx + ".offset");
      sin_spec.amplitude = number(require(jj, ctx, "amplitude"), ctx + ".amplitude");
      const std::string w = text(require(jj, ctx, "waveform"), ctx + ".waveform");
      if (w == "sin")
        sin_spec.waveform = Waveform::Sin;
      else if (w == "cos")
        sin_spec.waveform = Waveform::Cos;
      else
        throw ConfigError("config: " + ctx + ".waveform must be 'sin' or 'cos'");
    }
  }
  if (obj.contains("initial_position"))
    spec.initial_position = vec3(obj["initial_position"], "reference.initial_position");
  if (obj.contains("initial_velocity"))
    spec.initial_velocity = vec3(obj["initial_velocity"], "reference.initial_velocity");
  return spec;
}

SurfaceSpec parse_surface(const json& obj, const std::string& ctx) {
  const std::string kind = text(require(obj, ctx, "kind"), ctx + ".kind");
  try {
    if (kind == "pd") {
      check_keys(obj, ctx, {"kind", "lambda"});
      return SurfaceSpec::pd(number(require(obj, ctx, "lambda"), ctx + ".lambda"));
    }
    if (kind == "tsmc") {
      check_keys(obj, ctx, {"kind", "beta", "p", "q"});
      return SurfaceSpec::terminal(number(require(obj, ctx, "beta"), ctx + ".beta"),
                                   integer(require(obj, ctx, "p"), ctx + ".p"),
                                   integer(require(obj, ctx, "q"), ctx + ".q"));
    }
    if (kind == "ftsmc") {
      check_keys(obj, ctx, {"kind", "alpha", "beta", "p", "q"});
      return SurfaceSpec::fast_terminal(number(require(obj, ctx, "alpha"), ctx + ".alpha"),
                                        number(require(obj, ctx, "beta"), ctx + ".beta"),
                                        integer(require(obj, ctx, "p"), ctx + ".p"),
                                        integer(require(obj, ctx, "q"), ctx + ".q"));
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError("config: " + ctx + ": " + err.what());
  }
  throw ConfigError("config: " + ctx + ".kind must be 'pd', 'tsmc' or 'ftsmc'");
}

std::array<double, 3> parse_gains(const json& v, const std::string& where) {
  if (v.is_number()) {
    const double k = v.get<double>();
    return {k, k, k};
  }
  if (v.is_array() && v.size() == 3)
    return {number(v[0], where), number(v[1], where), number(v[2], where)};
  throw ConfigError("config: expected a number or array of 3 numbers for " + where);
}

std::array<ControlLaw, 3> build_laws(const SurfaceSpec& surface, SwitchingSpec::Kind kind,
                                     const std::array<double, 3>& k, double slope,
                                     const std::string& ctx) {
  std::array<ControlLaw, 3> laws;
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      laws[i].surface = surface;
      laws[i].switching = kind == SwitchingSpec::Kind::Sign ? SwitchingSpec::sign(k[i])
                                                            : SwitchingSpec::tanh(k[i], slope);
    } catch (const std::invalid_argument& err) {
      throw ConfigError("config: " + ctx + ": " + err.what());
    }
  }
  return laws;
}

ControllerChoice parse_controller(const json& obj, std::size_t index) {
  const std::string ctx = "controllers[" + std::to_string(index) + "]";
  check_keys(obj, ctx, {"name", "surface", "switching"});
  ControllerChoice choice;
  choice.name = text(require(obj, ctx, "name"), ctx + ".name");

  const json& sw = require(obj, ctx, "switching");
  const std::string sw_ctx = ctx + ".switching";
  check_keys(sw, sw_ctx, {"kind", "k", "slope"});
  const std::string sw_kind = text(require(sw, sw_ctx, "kind"), sw_ctx + ".kind");
  if (sw_kind != "sign" && sw_kind != "tanh")
    throw ConfigError("config: " + sw_ctx + ".kind must be 'sign' or 'tanh'");
  const auto kind = sw_kind == "sign" ? SwitchingSpec::Kind::Sign : SwitchingSpec::Kind::Tanh;
  const std::array<double, 3> k = parse_gains(require(sw, sw_ctx, "k"), sw_ctx + ".k");
  double slope = defaults::tanh_slope;
  if (sw.contains("slope")) slope = number(sw["slope"], sw_ctx + ".slope");

  choice.laws = build_laws(parse_surface(require(obj, ctx, "surface"), ctx + ".surface"), kind, k,
                           slope, sw_ctx);
  return choice;
}

}  // namespace

ControllerChoice preset_controller(const std::string& name, SwitchingSpec::Kind switching) {
  SurfaceSpec surface;
  std::array<double, 3> k{};
  if (name == "pdsmc") {
    surface = SurfaceSpec::pd(defaults::pd_lambda);
    k = defaults::pd_k;
  } else if (name == "tsmc") {
    surface = SurfaceSpec::terminal(defaults::tsmc_beta, defaults::power_p, defaults::power_q);
    k = defaults::tsmc_k;
  } else if (name == "ftsmc") {
    surface = SurfaceSpec::fast_terminal(defaults::ftsmc_alpha, defaults::ftsmc_beta,
                                         defaults::power_p, defaults::power_q);
    k = defaults::ftsmc_k;
  } else {
    throw ConfigError("config: unknown controller preset '" + name +
                      "' (expected pdsmc, tsmc or ftsmc)");
  }
  ControllerChoice choice;
  choice.name = name;
  choice.laws = build_laws(surface, switching, k, defaults::tanh_slope, name);
  return choice;
}

RunSpec default_run_spec() {
  RunSpec spec;
  for (const char* name : {"pdsmc", "tsmc", "ftsmc"})
    spec.controllers.push_back(preset_controller(name, SwitchingSpec::Kind::Sign));
  return spec;
}

RunSpec parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config: invalid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  check_keys(doc, "top level", {"arm", "reference", "controllers", "sim", "noise", "output"});

  RunSpec spec = default_run_spec();
  if (doc.contains("arm")) spec.arm = parse_arm(doc["arm"]);
  if (doc.contains("reference")) spec.reference = parse_reference(doc["reference"]);

  if (doc.contains("controllers")) {
    const json& list = doc["controllers"];
    if (!list.is_array() || list.empty())
      throw ConfigError("config: controllers must be a non-empty array");
    spec.controllers.clear();
    std::set<std::string> names;
    for (std::size_t i = 0; i < list.size(); ++i) {
      ControllerChoice choice = parse_controller(list[i], i);
      if (!names.insert(choice.name).second)
        throw ConfigError("config: duplicate controller name '" + choice.name + "'");
      spec.controllers.push_back(std::move(choice));
    }
  }

  if (doc.contains("sim")) {
    const json& sim = doc["sim"];
    check_keys(sim, "sim", {"t_end", "dt", "integrator"});
    if (sim.contains("t_end")) spec.t_end = number(sim["t_end"], "sim.t_end");
    if (sim.contains("dt")) spec.dt = number(sim["dt"], "sim.dt");
    if (sim.contains("integrator")) {
      const std::string name = text(sim["integrator"], "sim.integrator");
      if (name == "rk4")
        spec.integrator = Integrator::RK4;
      else if (name == "euler")
        spec.integrator = Integrator::Euler;
      else
        throw ConfigError("config: sim.integrator must be 'rk4' or 'euler'");
    }
    if (!(spec.dt > 0.0)) throw ConfigError("config: sim.dt must be > 0");
    if (!(spec.t_end >= spec.dt)) throw ConfigError("config: sim.t_end must be >= sim.dt");
  }

  if (doc.contains("noise")) {
    const json& noise = doc["noise"];
    check_keys(noise, "noise", {"sigma", "seed", "entry"});
    NoiseSpec n;
    n.sigma = number(require(noise, "noise", "sigma"), "noise.sigma");
    if (!(n.sigma >= 0.0)) throw ConfigError("config: noise.sigma must be >= 0");
    if (noise.contains("seed")) {
      if (!noise["seed"].is_number_unsigned() && !noise["seed"].is_number_integer())
        throw ConfigError("config: expected an integer for noise.seed");
      n.seed = noise["seed"].get<std::uint64_t>();
    }
    if (noise.contains("entry")) {
      const std::string entry = text(noise["entry"], "noise.entry");
      if (entry == "position")
        n.entry = NoiseEntry::Position;
      else if (entry == "velocity")
        n.entry = NoiseEntry::Velocity;
      else if (entry == "torque")
        n.entry = NoiseEntry::Torque;
      else
        throw ConfigError("config: noise.entry must be 'position', 'velocity' or 'torque'");
    }
    spec.noise = n;
  }

  if (doc.contains("output")) {
    const json& output = doc["output"];
    check_keys(output, "output", {"dir"});
    if (output.contains("dir")) spec.out_dir = text(output["dir"], "output.dir");
  }
  return spec;
}

RunSpec load_config(const std::string& path) {
  std::string bytes;
  try {
    bytes = io::read_file(path);
  } catch (const io::IoError& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  return parse_config(bytes);
}

void apply_overrides(RunSpec& spec, const CliOverrides& overrides) {
  if (overrides.switching) {
    SwitchingSpec::Kind kind;
    if (*overrides.switching == "sign")
      kind = SwitchingSpec::Kind::Sign;
    else if (*overrides.switching == "tanh")
      kind = SwitchingSpec::Kind::Tanh;
    else
      throw ConfigError("config: --switching must be 'sign' or 'tanh'");
    for (ControllerChoice& choice : spec.controllers)
      for (ControlLaw& law : choice.laws)
        law.switching = kind == SwitchingSpec::Kind::Sign
                            ? SwitchingSpec::sign(law.switching.k)
                            : SwitchingSpec::tanh(law.switching.k,
                                                  law.switching.slope > 0.0 ? law.switching.slope
                                                                            : defaults::tanh_slope);
  }
  if (overrides.controller) {
    const auto kind = [&] {
      if (overrides.switching && *overrides.switching == "tanh") return SwitchingSpec::Kind::Tanh;
      if (overrides.switching && *overrides.switching == "sign") return SwitchingSpec::Kind::Sign;
      return spec.controllers.empty()
                 ? SwitchingSpec::Kind::Sign
                 : spec.controllers.front().laws[0].switching.kind;
    }();
    spec.controllers = {preset_controller(*overrides.controller, kind)};
  }
  if (overrides.noise_sigma) {
    if (!(*overrides.noise_sigma >= 0.0)) throw ConfigError("config: --noise-sigma must be >= 0");
    if (!spec.noise) spec.noise = NoiseSpec{};
    spec.noise->sigma = *overrides.noise_sigma;
  }
  if (overrides.seed) {
    if (!spec.noise) spec.noise = NoiseSpec{};
    spec.noise->seed = *overrides.seed;
  }
  if (overrides.dt) {
    if (!(*overrides.dt > 0.0)) throw ConfigError("config: --dt must be > 0");
    spec.dt = *overrides.dt;
  }
  if (overrides.t_end) spec.t_end = *overrides.t_end;
  if (!(spec.t_end >= spec.dt)) throw ConfigError("config: t_end must be >= dt");
  if (overrides.out_dir) spec.out_dir = *overrides.out_dir;
}

SimConfig make_sim_config(const RunSpec& spec, const ControllerChoice& controller) {
  SimConfig config;
  config.t_end = spec.t_end;
  config.dt = spec.dt;
  config.integrator = spec.integrator;
  config.noise = spec.noise;
  config.controllers = controller.laws;
  config.arm = spec.arm;
  config.reference = spec.reference;
  return config;
}

}  // namespace armlab::cfg

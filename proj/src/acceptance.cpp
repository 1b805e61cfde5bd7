#include "armlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "armlab/scenario.hpp"

namespace armlab::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// Brute-force settling time of de/dt = -(alpha e + beta sig_pow(e, q/p)):
// fixed-step RK4 until |e| <= 1e-9, independent of the closed-form predictors.
double simulated_settling_time(double alpha, double beta, int p, int q, double e0) {
  const double gamma = static_cast<double>(q) / p;
  const auto rate = [&](double e) { return -(alpha * e + beta * sig_pow(e, gamma)); };
  const double dt = 1e-4;
  double e = e0;
  double t = 0.0;
  while (std::abs(e) > 1e-9 && t < 100.0) {
    const double k1 = rate(e);
    const double k2 = rate(e + 0.5 * dt * k1);
    const double k3 = rate(e + 0.5 * dt * k2);
    const double k4 = rate(e + dt * k3);
    e += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
  }
  return t;
}

cfg::RunSpec preset_spec(SwitchingSpec::Kind switching, bool with_noise) {
  cfg::RunSpec spec;
  spec.controllers.clear();
  for (const char* name : {"pdsmc", "tsmc", "ftsmc"})
    spec.controllers.push_back(cfg::preset_controller(name, switching));
  if (with_noise)
    spec.noise =
        NoiseSpec{cfg::defaults::noise_sigma, cfg::defaults::noise_seed, NoiseEntry::Position};
  return spec;
}

std::vector<SimRecord> run_presets(const cfg::RunSpec& spec) {
  std::vector<SimConfig> configs;
  for (const cfg::ControllerChoice& choice : spec.controllers)
    configs.push_back(cfg::make_sim_config(spec, choice));
  return scenario::run_many(configs);
}

CriterionResult settling_time_fidelity() {
  CriterionResult r{1, "settling-time formula fidelity", false, "", 0.0};
  const auto start = Clock::now();

  std::mt19937_64 rng(7151);
  std::uniform_real_distribution<double> gain(0.5, 5.0);
  std::uniform_real_distribution<double> initial(0.1, 2.0);
  constexpr int p = 5, q = 3;

  double worst_ftsmc = 0.0, worst_tsmc = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double alpha = gain(rng);
    const double beta = gain(rng);
    const double e0 = initial(rng);

    const double pred_f = settling_time_ftsmc(alpha, beta, p, q, e0);
    const double sim_f = simulated_settling_time(alpha, beta, p, q, e0);
    worst_ftsmc = std::max(worst_ftsmc, std::abs(pred_f - sim_f) / pred_f);

    const double pred_t = settling_time_tsmc(beta, p, q, e0);
    const double sim_t = simulated_settling_time(0.0, beta, p, q, e0);
    worst_tsmc = std::max(worst_tsmc, std::abs(pred_t - sim_t) / pred_t);
  }

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.pass = worst_ftsmc < 0.01 && worst_tsmc < 0.01 && r.seconds < 5.0;
  r.detail = fmt("max rel err ftsmc %.3g, tsmc %.3g over 20 draws", worst_ftsmc, worst_tsmc);
  return r;
}

CriterionResult dynamics_validity() {
  CriterionResult r{2, "dynamics validity suite", false, "", 0.0};
  const auto start = Clock::now();

  const ArmParamsd arm = default_arm_params();
  std::mt19937_64 rng(40923);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> speed(-2.0, 2.0);

  double max_asym = 0.0, min_eig = 1e300, max_skew = 0.0, max_grav = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const Vec3d q{angle(rng), angle(rng), angle(rng)};
    const Vec3d v{speed(rng), speed(rng), speed(rng)};

    const Mat3d m = mass_matrix(q, arm);
    max_asym = std::max(max_asym, (m - m.transpose()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Mat3d> eig(m);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());

    // dM/dt and the Christoffel matrix, both from finite differences of M.
    const double h = 1e-6;
    const Mat3d m_dot =
        (mass_matrix(Vec3d(q + h * v), arm) - mass_matrix(Vec3d(q - h * v), arm)) / (2.0 * h);
    std::array<Mat3d, 3> dm;
    for (int k = 0; k < 3; ++k) {
      Vec3d lo = q, hi = q;
      hi[k] += h;
      lo[k] -= h;
      dm[static_cast<std::size_t>(k)] =
          (mass_matrix(hi, arm) - mass_matrix(lo, arm)) / (2.0 * h);
    }
    Mat3d c_mat = Mat3d::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const auto si = static_cast<std::size_t>(i);
          const auto sj = static_cast<std::size_t>(j);
          const auto sk = static_cast<std::size_t>(k);
          c_mat(i, j) += 0.5 * (dm[sk](i, j) + dm[sj](i, k) - dm[si](j, k)) * v[k];
        }
    max_skew = std::max(max_skew, std::abs(v.dot((m_dot - 2.0 * c_mat) * v)));

    // Gravity torque against the finite-difference potential gradient.
    const double hg = 1e-5;
    Vec3d grad;
    for (int k = 0; k < 3; ++k) {
      Vec3d lo = q, hi = q;
      hi[k] += hg;
      lo[k] -= hg;
      grad[k] = (potential_energy(hi, arm) - potential_energy(lo, arm)) / (2.0 * hg);
    }
    max_grav = std::max(max_grav, (gravity_vector(q, arm) - grad).cwiseAbs().maxCoeff());
  }

  // Free swing, no gravity: total energy must be conserved by the integrator.
  SimConfig conservation;
  conservation.arm.g = 0.0;
  conservation.reference.initial_velocity = Vec3d{0.5, -0.4, 0.3};
  const SimRecord rec = run(conservation);
  const auto energy_at = [&](std::size_t k) {
    const Vec3d q{rec.position[0][k], rec.position[1][k], rec.position[2][k]};
    const Vec3d v{rec.velocity[0][k], rec.velocity[1][k], rec.velocity[2][k]};
    return total_energy(q, v, conservation.arm);
  };
  const double e0 = energy_at(0);
  double max_drift = 0.0;
  for (std::size_t k = 0; k < rec.size(); ++k)
    max_drift = std::max(max_drift, std::abs(energy_at(k) - e0) / std::abs(e0));

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.pass = max_asym < 1e-12 && min_eig > 0.0 && max_skew < 1e-8 && max_grav < 1e-6 &&
           max_drift < 1e-6 && r.seconds < 10.0;
  r.detail = fmt("asym %.2g, skew %.2g, grav %.2g, ", max_asym, max_skew, max_grav) +
             fmt("min eig %.3g, energy drift %.2g", min_eig, max_drift);
  return r;
}

CriterionResult mse_ordering() {
  CriterionResult r{3, "comparison MSE ordering (sign switching)", false, "", 0.0};
  const auto start = Clock::now();

  const auto records = run_presets(preset_spec(SwitchingSpec::Kind::Sign, false));
  const double pd = metrics::mse_pooled(records[0]);
  const double ts = metrics::mse_pooled(records[1]);
  const double ft = metrics::mse_pooled(records[2]);

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.pass = ft < ts && ts < pd && ft <= 0.85 * ts && r.seconds < 30.0;
  r.detail = fmt("pooled mse ftsmc %.4g < tsmc %.4g < pdsmc %.4g", ft, ts, pd);
  return r;
}

CriterionResult finite_time_tracking() {
  CriterionResult r{4, "finite-time tracking and reaching order (tanh switching)", false, "", 0.0};
  const auto start = Clock::now();

  const auto records = run_presets(preset_spec(SwitchingSpec::Kind::Tanh, false));
  const auto reach_pd = metrics::reach_time(records[0]);
  const auto reach_ts = metrics::reach_time(records[1]);
  const auto reach_ft = metrics::reach_time(records[2]);

  const std::size_t last = records[2].size() - 1;
  double final_err = 0.0;
  for (std::size_t j = 0; j < 3; ++j)
    final_err = std::max(final_err, std::abs(records[2].error[j][last]));

  bool order = true;
  for (std::size_t j = 0; j < 3; ++j) {
    if (!reach_ft[j] || !reach_ts[j] || !reach_pd[j]) order = false;
    else if (!(*reach_ft[j] < *reach_ts[j] && *reach_ft[j] < *reach_pd[j])) order = false;
  }

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.pass = final_err < 1e-3 && order && r.seconds < 30.0;
  r.detail = fmt("ftsmc max |e(t_end)| %.3g; ", final_err) +
             (order ? "reach_time ftsmc < tsmc, pdsmc on every joint"
                    : "reaching order violated");
  return r;
}

CriterionResult chattering_elimination() {
  CriterionResult r{5, "chattering elimination (tanh vs sign)", false, "", 0.0};
  const auto start = Clock::now();

  cfg::RunSpec spec;
  spec.controllers = {cfg::preset_controller("ftsmc", SwitchingSpec::Kind::Sign),
                      cfg::preset_controller("ftsmc", SwitchingSpec::Kind::Tanh)};
  spec.controllers[1].name = "ftsmc_tanh";
  const auto records = run_presets(spec);
  const Vec3d sign_index = metrics::chattering_index(records[0]);
  const Vec3d tanh_index = metrics::chattering_index(records[1]);

  double worst_ratio = 0.0;
  for (int j = 0; j < 3; ++j) worst_ratio = std::max(worst_ratio, tanh_index[j] / sign_index[j]);

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.pass = worst_ratio <= 0.1 && r.seconds < 20.0;
  r.detail = fmt("worst per-joint total-variation ratio %.4g (<= 0.1 required)", worst_ratio);
  return r;
}

CriterionResult disturbance_rejection() {
  CriterionResult r{6, "disturbance rejection under measurement noise", false, "", 0.0};
  const auto start = Clock::now();

  const auto records = run_presets(preset_spec(SwitchingSpec::Kind::Tanh, true));
  const double pd = metrics::mse_pooled(records[0]);
  const double ts = metrics::mse_pooled(records[1]);
  const double ft = metrics::mse_pooled(records[2]);
  const Vec3d sse = metrics::steady_state_error(records[2]);
  const double worst_sse = sse.cwiseAbs().maxCoeff();

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.pass = ft < ts && ts < pd && worst_sse < 5e-3 && r.seconds < 30.0;
  r.detail = fmt("pooled mse ftsmc %.4g < tsmc %.4g < pdsmc %.4g; ", ft, ts, pd) +
             fmt("ftsmc max |sse| %.3g", worst_sse);
  return r;
}

CriterionResult reaching_condition() {
  CriterionResult r{7, "reaching condition S dS/dt < 0 outside the band", false, "", 0.0};
  const auto start = Clock::now();

  const auto records = run_presets(preset_spec(SwitchingSpec::Kind::Sign, false));
  std::size_t violations = 0;
  for (const SimRecord& rec : records)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k + 1 < rec.size(); ++k) {
        const double s = rec.surface[j][k];
        if (std::abs(s) > 0.01 && s * (rec.surface[j][k + 1] - s) >= 0.0) ++violations;
      }

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.pass = violations == 0 && r.seconds < 30.0;
  r.detail = fmt("%g violations across 3 sign-switching runs x 3 joints",
                 static_cast<double>(violations));
  return r;
}

CriterionResult determinism() {
  CriterionResult r{8, "suite determinism (byte-identical outputs)", false, "", 0.0};
  const auto start = Clock::now();

  const cfg::RunSpec base = cfg::default_run_spec();
  const scenario::FileMap first = scenario::render_suite(base);
  const scenario::FileMap second = scenario::render_suite(base);

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.pass = first == second;
  r.detail = std::to_string(first.size()) + " files rendered twice, " +
             (r.pass ? "all byte-identical" : "differences found");
  return r;
}

}  // namespace

std::vector<CriterionResult> evaluate_all() {
  return {settling_time_fidelity(), dynamics_validity(),      mse_ordering(),
          finite_time_tracking(),   chattering_elimination(), disturbance_rejection(),
          reaching_condition(),     determinism()};
}

std::string summary_text(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const CriterionResult& r : results) {
    char line[512];
    std::snprintf(line, sizeof(line), "[%s] %d. %s (%.2f s) - %s\n", r.pass ? "PASS" : "FAIL",
                  r.id, r.name.c_str(), r.seconds, r.detail.c_str());
    out += line;
  }
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace armlab::acceptance

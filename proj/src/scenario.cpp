#include "armlab/scenario.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "armlab/svg.hpp"
#include "armlab/trace_io.hpp"

namespace armlab::scenario {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fixed(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::vector<svg::Series> joint_series(const std::vector<ComparisonRow>& rows,
                                      const std::vector<SimRecord>& records,
                                      const std::array<std::vector<double>, 3> SimRecord::*group,
                                      std::size_t joint) {
  std::vector<svg::Series> series;
  for (std::size_t i = 0; i < records.size(); ++i)
    series.push_back({rows[i].controller, records[i].t, (records[i].*group)[joint]});
  return series;
}

// Comparison figures for one study: per-joint tracking and error, plus the
// joint-1 control effort, sliding surface and angular velocity.
void add_comparison_figures(FileMap& files, const std::string& prefix,
                            const std::vector<ComparisonRow>& rows,
                            const std::vector<SimRecord>& records) {
  if (records.empty()) return;
  for (std::size_t j = 0; j < 3; ++j) {
    const std::string joint = std::to_string(j + 1);
    {
      auto series = joint_series(rows, records, &SimRecord::position, j);
      series.insert(series.begin(), {"desired", records[0].t, records[0].desired[j]});
      files[prefix + "plots/tracking_joint" + joint + ".svg"] = svg::line_chart(
          {"Joint " + joint + " tracking", "t [s]", "angle [rad]"}, series);
    }
    files[prefix + "plots/error_joint" + joint + ".svg"] = svg::line_chart(
        {"Joint " + joint + " tracking error", "t [s]", "error [rad]"},
        joint_series(rows, records, &SimRecord::error, j));
  }
  files[prefix + "plots/control_joint1.svg"] =
      svg::line_chart({"Joint 1 control effort", "t [s]", "torque [N m]"},
                      joint_series(rows, records, &SimRecord::control, 0));
  files[prefix + "plots/surface_joint1.svg"] =
      svg::line_chart({"Joint 1 sliding surface", "t [s]", "S"},
                      joint_series(rows, records, &SimRecord::surface, 0));
  files[prefix + "plots/velocity_joint1.svg"] =
      svg::line_chart({"Joint 1 angular velocity", "t [s]", "velocity [rad/s]"},
                      joint_series(rows, records, &SimRecord::velocity, 0));
}

}  // namespace

std::size_t thread_cap() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SMC_ARM_LAB_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) cap = static_cast<std::size_t>(parsed);
  }
  return cap;
}

std::vector<SimRecord> run_many(const std::vector<SimConfig>& configs) {
  std::vector<SimRecord> records(configs.size());
  const std::size_t workers = std::min(thread_cap(), configs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) records[i] = run(configs[i]);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= configs.size()) return;
        try {
          records[i] = run(configs[i]);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::vector<ComparisonRow> run_comparison(const cfg::RunSpec& spec) {
  std::vector<SimConfig> configs;
  configs.reserve(spec.controllers.size());
  for (const cfg::ControllerChoice& choice : spec.controllers)
    configs.push_back(cfg::make_sim_config(spec, choice));
  const std::vector<SimRecord> records = run_many(configs);

  std::vector<ComparisonRow> rows;
  rows.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    rows.push_back({spec.controllers[i].name, metrics::compute(records[i])});
  return rows;
}

std::string comparison_table(const std::vector<ComparisonRow>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %12s %27s %27s %27s\n", "controller", "mse_pooled",
                "reach_time [s]", "steady_state_error [rad]", "chattering_index [N m]");
  out += line;
  for (const ComparisonRow& row : rows) {
    std::string reach, sse, chatter;
    for (int i = 0; i < 3; ++i) {
      reach += row.metrics.reach_time[static_cast<std::size_t>(i)]
                   ? fixed(*row.metrics.reach_time[static_cast<std::size_t>(i)], 4)
                   : std::string("n/a");
      sse += fixed(row.metrics.steady_state_error[i], 6);
      chatter += fixed(row.metrics.chattering_index[i], 1);
      if (i < 2) {
        reach += ' ';
        sse += ' ';
        chatter += ' ';
      }
    }
    std::snprintf(line, sizeof(line), "%-10s %12s %27s %27s %27s\n", row.controller.c_str(),
                  fixed(row.metrics.mse_pooled, 6).c_str(), reach.c_str(), sse.c_str(),
                  chatter.c_str());
    out += line;
  }
  return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out =
      "controller,mse1,mse2,mse3,mse_pooled,reach1,reach2,reach3,"
      "sse1,sse2,sse3,chatter1,chatter2,chatter3\n";
  for (const ComparisonRow& row : rows) {
    out += row.controller;
    for (int i = 0; i < 3; ++i) out += ',' + num(row.metrics.mse[i]);
    out += ',' + num(row.metrics.mse_pooled);
    for (const auto& reach : row.metrics.reach_time) out += ',' + (reach ? num(*reach) : "");
    for (int i = 0; i < 3; ++i) out += ',' + num(row.metrics.steady_state_error[i]);
    for (int i = 0; i < 3; ++i) out += ',' + num(row.metrics.chattering_index[i]);
    out += '\n';
  }
  return out;
}

std::string comparison_json(const std::vector<ComparisonRow>& rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const ComparisonRow& row : rows) {
    nlohmann::ordered_json j;
    j["controller"] = row.controller;
    j["mse"] = {row.metrics.mse[0], row.metrics.mse[1], row.metrics.mse[2]};
    j["mse_pooled"] = row.metrics.mse_pooled;
    auto reach = nlohmann::ordered_json::array();
    for (const auto& r : row.metrics.reach_time)
      reach.push_back(r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json(nullptr));
    j["reach_time"] = reach;
    j["steady_state_error"] = {row.metrics.steady_state_error[0],
                               row.metrics.steady_state_error[1],
                               row.metrics.steady_state_error[2]};
    j["chattering_index"] = {row.metrics.chattering_index[0], row.metrics.chattering_index[1],
                             row.metrics.chattering_index[2]};
    doc.push_back(j);
  }
  return doc.dump(2) + "\n";
}

FileMap render_run(const cfg::RunSpec& spec, const cfg::ControllerChoice& controller) {
  const SimRecord rec = run(cfg::make_sim_config(spec, controller));
  const metrics::RunMetrics m = metrics::compute(rec);

  FileMap files;
  files["trace.csv"] = io::trace_csv(rec);
  files["metrics.json"] = io::metrics_json(controller.name, rec, m);

  for (std::size_t j = 0; j < 3; ++j) {
    const std::string joint = std::to_string(j + 1);
    files["plots/tracking_joint" + joint + ".svg"] =
        svg::line_chart({"Joint " + joint + " tracking (" + controller.name + ")", "t [s]",
                         "angle [rad]"},
                        {{"desired", rec.t, rec.desired[j]}, {"actual", rec.t, rec.position[j]}});
  }
  files["plots/error.svg"] = svg::line_chart(
      {"Tracking error (" + controller.name + ")", "t [s]", "error [rad]"},
      {{"joint 1", rec.t, rec.error[0]}, {"joint 2", rec.t, rec.error[1]},
       {"joint 3", rec.t, rec.error[2]}});
  files["plots/control.svg"] = svg::line_chart(
      {"Control effort (" + controller.name + ")", "t [s]", "torque [N m]"},
      {{"joint 1", rec.t, rec.control[0]}, {"joint 2", rec.t, rec.control[1]},
       {"joint 3", rec.t, rec.control[2]}});
  files["plots/surface.svg"] = svg::line_chart(
      {"Sliding surfaces (" + controller.name + ")", "t [s]", "S"},
      {{"joint 1", rec.t, rec.surface[0]}, {"joint 2", rec.t, rec.surface[1]},
       {"joint 3", rec.t, rec.surface[2]}});
  files["plots/velocity.svg"] = svg::line_chart(
      {"Angular velocity (" + controller.name + ")", "t [s]", "velocity [rad/s]"},
      {{"joint 1", rec.t, rec.velocity[0]}, {"joint 2", rec.t, rec.velocity[1]},
       {"joint 3", rec.t, rec.velocity[2]}});
  return files;
}

FileMap render_compare(const cfg::RunSpec& spec) {
  std::vector<SimConfig> configs;
  configs.reserve(spec.controllers.size());
  for (const cfg::ControllerChoice& choice : spec.controllers)
    configs.push_back(cfg::make_sim_config(spec, choice));
  const std::vector<SimRecord> records = run_many(configs);

  std::vector<ComparisonRow> rows;
  FileMap files;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const cfg::ControllerChoice& choice = spec.controllers[i];
    rows.push_back({choice.name, metrics::compute(records[i])});
    files[choice.name + "/trace.csv"] = io::trace_csv(records[i]);
    files[choice.name + "/metrics.json"] = io::metrics_json(choice.name, records[i], rows[i].metrics);
  }
  files["compare.csv"] = comparison_csv(rows);
  files["compare.json"] = comparison_json(rows);
  files["compare.txt"] = comparison_table(rows);
  add_comparison_figures(files, "", rows, records);
  return files;
}

FileMap render_suite(const cfg::RunSpec& base) {
  struct Study {
    const char* name;
    SwitchingSpec::Kind switching;
    bool noise;
  };
  const Study studies[] = {{"study_sign", SwitchingSpec::Kind::Sign, false},
                           {"study_tanh", SwitchingSpec::Kind::Tanh, false},
                           {"study_noise", SwitchingSpec::Kind::Tanh, true}};

  FileMap files;
  for (const Study& study : studies) {
    cfg::RunSpec spec = base;
    spec.controllers.clear();
    for (const char* name : {"pdsmc", "tsmc", "ftsmc"})
      spec.controllers.push_back(cfg::preset_controller(name, study.switching));
    if (study.noise)
      spec.noise = NoiseSpec{cfg::defaults::noise_sigma, cfg::defaults::noise_seed,
                             NoiseEntry::Position};
    else
      spec.noise.reset();

    const FileMap study_files = render_compare(spec);
    for (const auto& [path, bytes] : study_files)
      files[std::string(study.name) + "/" + path] = bytes;
  }
  return files;
}

void write_files(const std::string& root, const FileMap& files) {
  for (const auto& [path, bytes] : files)
    io::write_file((std::filesystem::path(root) / path).string(), bytes);
}

}  // namespace armlab::scenario

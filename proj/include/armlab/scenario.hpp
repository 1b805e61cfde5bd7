#pragma once

#include <map>
#include <string>
#include <vector>

#include "armlab/config.hpp"
#include "armlab/metrics.hpp"
#include "armlab/sim_engine.hpp"

// Batch execution of simulation scenarios and rendering of their artifacts
// (trace CSV, metrics JSON, SVG figures, comparison tables). Rendering is
// pure: it returns a path -> bytes map so callers can diff or write it.
// Independent runs fan out across worker threads, capped by the
// SMC_ARM_LAB_THREADS environment variable, and results are joined in
// scenario order so outputs are deterministic.

namespace armlab::scenario {

using FileMap = std::map<std::string, std::string>;

struct ComparisonRow {
  std::string controller;
  metrics::RunMetrics metrics;
};

std::size_t thread_cap();

// Runs all configs (in parallel up to the cap) and returns records in input
// order. The first simulation failure, if any, is rethrown.
std::vector<SimRecord> run_many(const std::vector<SimConfig>& configs);

std::vector<ComparisonRow> run_comparison(const cfg::RunSpec& spec);

std::string comparison_table(const std::vector<ComparisonRow>& rows);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string comparison_json(const std::vector<ComparisonRow>& rows);

// Single run: trace.csv, metrics.json and per-signal figures.
FileMap render_run(const cfg::RunSpec& spec, const cfg::ControllerChoice& controller);

// Multi-controller comparison: per-controller artifacts plus table files and
// comparison figures.
FileMap render_compare(const cfg::RunSpec& spec);

// The three benchmark studies (sign switching, tanh switching, measurement
// noise), each a full controller comparison, under study_sign/, study_tanh/
// and study_noise/.
FileMap render_suite(const cfg::RunSpec& base);

void write_files(const std::string& root, const FileMap& files);

}  // namespace armlab::scenario

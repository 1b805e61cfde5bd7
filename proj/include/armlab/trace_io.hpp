#pragma once

#include <stdexcept>
#include <string>

#include "armlab/metrics.hpp"
#include "armlab/sim_engine.hpp"

// Serialization of traces and metrics. The trace CSV schema is fixed:
// header `t,th1,th2,th3,th1d,th2d,th3d,e1,e2,e3,S1,S2,S3,u1,u2,u3`, one row
// per step, comma separators, LF line endings, values printed with 17
// significant digits so parsing reproduces the arrays exactly.

namespace armlab::io {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kTraceHeader =
    "t,th1,th2,th3,th1d,th2d,th3d,e1,e2,e3,S1,S2,S3,u1,u2,u3";

std::string trace_csv(const SimRecord& rec);

// Inverse of trace_csv for the columns the schema carries; joint velocities
// are not part of the schema and come back zero-filled.
SimRecord parse_trace_csv(const std::string& text);

// Metrics plus run metadata as a JSON document (stable key order).
std::string metrics_json(const std::string& controller, const SimRecord& rec,
                         const metrics::RunMetrics& m);

void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

}  // namespace armlab::io

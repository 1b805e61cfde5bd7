#include "armlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace armlab::metrics {

namespace {

void require_samples(const SimRecord& rec, std::size_t n) {
  if (rec.size() < n) throw std::invalid_argument("metrics: record too short");
}

}  // namespace

Vec3d mse(const SimRecord& rec) {
  require_samples(rec, 1);
  Vec3d out = Vec3d::Zero();
  for (std::size_t j = 0; j < 3; ++j) {
    double acc = 0.0;
    for (double e : rec.error[j]) acc += e * e;
    out[static_cast<int>(j)] = acc / static_cast<double>(rec.size());
  }
  return out;
}

double mse_pooled(const SimRecord& rec) { return mse(rec).mean(); }

std::array<std::optional<double>, 3> reach_time(const SimRecord& rec, double tol) {
  require_samples(rec, 1);
  if (!(tol > 0.0)) throw std::invalid_argument("reach_time: tol must be > 0");
  std::array<std::optional<double>, 3> out;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& s = rec.surface[j];
    std::size_t first_held = 0;  // index after the last band violation
    for (std::size_t k = s.size(); k-- > 0;) {
      if (std::abs(s[k]) > tol) {
        first_held = k + 1;
        break;
      }
    }
    if (first_held < s.size()) out[j] = rec.t[first_held];
  }
  return out;
}

Vec3d steady_state_error(const SimRecord& rec, double window_fraction) {
  require_samples(rec, 1);
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw std::invalid_argument("steady_state_error: window fraction must be in (0, 1]");
  const std::size_t n = rec.size();
  const std::size_t count =
      std::max<std::size_t>(1, static_cast<std::size_t>(window_fraction * static_cast<double>(n)));
  Vec3d out = Vec3d::Zero();
  for (std::size_t j = 0; j < 3; ++j) {
    double acc = 0.0;
    for (std::size_t k = n - count; k < n; ++k) acc += rec.error[j][k];
    out[static_cast<int>(j)] = acc / static_cast<double>(count);
  }
  return out;
}

Vec3d chattering_index(const SimRecord& rec) {
  require_samples(rec, 2);
  Vec3d out = Vec3d::Zero();
  for (std::size_t j = 0; j < 3; ++j) {
    double acc = 0.0;
    const auto& u = rec.control[j];
    for (std::size_t k = 0; k + 1 < u.size(); ++k) acc += std::abs(u[k + 1] - u[k]);
    out[static_cast<int>(j)] = acc;
  }
  return out;
}

RunMetrics compute(const SimRecord& rec, double reach_tol, double window_fraction) {
  RunMetrics m;
  m.mse = mse(rec);
  m.mse_pooled = m.mse.mean();
  m.reach_time = reach_time(rec, reach_tol);
  m.steady_state_error = steady_state_error(rec, window_fraction);
  m.chattering_index = chattering_index(rec);
  return m;
}

}  // namespace armlab::metrics

#pragma once

#include <array>
#include <optional>

#include "armlab/sim_engine.hpp"
#include "armlab/types.hpp"

// Comparison quantities computed from a simulation trace: mean squared
// tracking error, time to reach the sliding surface, steady-state error and a
// total-variation chattering index.

namespace armlab::metrics {

struct RunMetrics {
  Vec3d mse;                                         // per joint [rad^2]
  double mse_pooled = 0.0;                           // mean over joints
  std::array<std::optional<double>, 3> reach_time;   // [s], empty if never reached
  Vec3d steady_state_error;                          // mean signed error, last window [rad]
  Vec3d chattering_index;                            // total variation of u [N m]
};

inline constexpr double kDefaultReachTolerance = 0.01;
inline constexpr double kDefaultSseWindow = 0.1;  // fraction of trailing samples

Vec3d mse(const SimRecord& rec);
double mse_pooled(const SimRecord& rec);

// First t with |S| <= tol from there on; empty when the band is never held.
std::array<std::optional<double>, 3> reach_time(const SimRecord& rec,
                                                double tol = kDefaultReachTolerance);

Vec3d steady_state_error(const SimRecord& rec, double window_fraction = kDefaultSseWindow);

// Sum of |u(k+1) - u(k)| per joint; zero iff the control is constant.
Vec3d chattering_index(const SimRecord& rec);

RunMetrics compute(const SimRecord& rec, double reach_tol = kDefaultReachTolerance,
                   double window_fraction = kDefaultSseWindow);

}  // namespace armlab::metrics

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "armlab/arm_dynamics.hpp"
#include "armlab/smc.hpp"
#include "armlab/trajectory.hpp"
#include "armlab/types.hpp"

// Deterministic fixed-step closed-loop simulation. The controller is sampled
// once per step from the (optionally noise-corrupted) measured state and the
// torque is held constant across the step (zero-order hold).

namespace armlab {

enum class Integrator { RK4, Euler };

enum class NoiseEntry { Position, Velocity, Torque };

struct NoiseSpec {
  double sigma = 0.0;  // standard deviation [rad], [rad/s] or [N m] by entry
  std::uint64_t seed = 0;
  NoiseEntry entry = NoiseEntry::Position;
};

struct SimConfig {
  double t_end = 4.5;
  double dt = 5e-4;
  Integrator integrator = Integrator::RK4;
  std::optional<NoiseSpec> noise;
  // One law per joint; absent means open loop (tau = 0).
  std::optional<std::array<ControlLaw, 3>> controllers;
  ArmParamsd arm = default_arm_params();
  ReferenceSpec reference = default_reference();
};

struct SimRecord {
  std::vector<double> t;
  std::array<std::vector<double>, 3> position;  // theta [rad]
  std::array<std::vector<double>, 3> velocity;  // dtheta [rad/s]
  std::array<std::vector<double>, 3> desired;   // theta_d [rad]
  std::array<std::vector<double>, 3> error;     // theta - theta_d [rad]
  std::array<std::vector<double>, 3> surface;   // S per joint (0 in open loop)
  std::array<std::vector<double>, 3> control;   // commanded torque [N m]
  std::string config_hash;                      // 16 hex digits
  std::uint64_t seed = 0;

  std::size_t size() const { return t.size(); }
};

struct SimulationDiverged : std::runtime_error {
  std::size_t step;
  explicit SimulationDiverged(std::size_t step_index)
      : std::runtime_error("simulation produced a non-finite value at step " +
                           std::to_string(step_index)),
        step(step_index) {}
};

// Seeded standard-normal sampler (Box-Muller over mt19937_64), pinned here so
// traces are reproducible independently of the standard library's
// distribution implementation.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}
  double operator()();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Adds iid zero-mean Gaussian noise (std sigma) to each component. sigma = 0
// is the identity and consumes no draws.
Vec3d inject_noise(const Vec3d& value, double sigma, GaussianSampler& rng);

// 64-bit FNV-1a over the canonically serialized configuration.
std::uint64_t config_fingerprint(const SimConfig& config);

// Runs the closed loop and records the full trace; bitwise deterministic for
// a fixed config and seed. Throws SimulationDiverged if any state, torque or
// surface value becomes non-finite.
SimRecord run(const SimConfig& config);

}  // namespace armlab

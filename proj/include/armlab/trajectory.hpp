#pragma once

#include <array>
#include <cmath>

#include "armlab/types.hpp"

// Desired joint trajectories: per-joint sinusoids with offset, evaluated with
// analytically consistent velocity and acceleration.

namespace armlab {

enum class Waveform { Sin, Cos };

struct JointSinusoid {
  double offset = 0.0;     // [rad]
  double amplitude = 0.0;  // [rad], may be negative
  Waveform waveform = Waveform::Sin;
};

struct ReferenceSpec {
  std::array<JointSinusoid, 3> joints;
  Vec3d initial_position = Vec3d::Zero();  // theta(0) [rad]
  Vec3d initial_velocity = Vec3d::Zero();  // dtheta(0) [rad/s], rest start by default
};

struct Reference {
  Vec3d position;      // [rad]
  Vec3d velocity;      // [rad/s]
  Vec3d acceleration;  // [rad/s^2]
};

// Benchmark trajectory and initial state:
//   th1d = 0.35 - 0.5 sin t, th2d = 0.25 + 0.5 cos t, th3d = 0.45 - 0.5 cos t,
//   theta(0) = (0.7, 1.5, 0.5), rest start.
inline ReferenceSpec default_reference() {
  ReferenceSpec spec;
  spec.joints = {JointSinusoid{0.35, -0.5, Waveform::Sin},
                 JointSinusoid{0.25, 0.5, Waveform::Cos},
                 JointSinusoid{0.45, -0.5, Waveform::Cos}};
  spec.initial_position = Vec3d{0.7, 1.5, 0.5};
  spec.initial_velocity = Vec3d::Zero();
  return spec;
}

inline Reference reference(double t, const ReferenceSpec& spec) {
  Reference ref;
  for (int i = 0; i < 3; ++i) {
    const JointSinusoid& j = spec.joints[static_cast<std::size_t>(i)];
    const double w = j.waveform == Waveform::Sin ? std::sin(t) : std::cos(t);
    const double dw = j.waveform == Waveform::Sin ? std::cos(t) : -std::sin(t);
    ref.position[i] = j.offset + j.amplitude * w;
    ref.velocity[i] = j.amplitude * dw;
    ref.acceleration[i] = -j.amplitude * w;
  }
  return ref;
}

// e(0) = theta(0) - theta_d(0).
inline Vec3d initial_error(const ReferenceSpec& spec) {
  return spec.initial_position - reference(0.0, spec).position;
}

}  // namespace armlab

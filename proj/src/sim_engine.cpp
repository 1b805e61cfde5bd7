#include "armlab/sim_engine.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "armlab/state_space.hpp"

namespace armlab {

namespace {

Vec3d acceleration(const Vec3d& q, const Vec3d& v, const Vec3d& tau, const ArmParamsd& arm) {
  return forward_dynamics(q, v, tau, arm);
}

void rk4_step(Vec3d& q, Vec3d& v, const Vec3d& tau, double dt, const ArmParamsd& arm) {
  const Vec3d k1q = v;
  const Vec3d k1v = acceleration(q, v, tau, arm);
  const Vec3d k2q = v + 0.5 * dt * k1v;
  const Vec3d k2v = acceleration(q + 0.5 * dt * k1q, v + 0.5 * dt * k1v, tau, arm);
  const Vec3d k3q = v + 0.5 * dt * k2v;
  const Vec3d k3v = acceleration(q + 0.5 * dt * k2q, v + 0.5 * dt * k2v, tau, arm);
  const Vec3d k4q = v + dt * k3v;
  const Vec3d k4v = acceleration(q + dt * k3q, v + dt * k3v, tau, arm);
  q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
}

void euler_step(Vec3d& q, Vec3d& v, const Vec3d& tau, double dt, const ArmParamsd& arm) {
  const Vec3d a = acceleration(q, v, tau, arm);
  q += dt * v;
  v += dt * a;
}

void fnv_append(std::uint64_t& h, const char* data, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ull;
  }
}

void fnv_append_double(std::uint64_t& h, double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g;", x);
  fnv_append(h, buf, static_cast<std::size_t>(n));
}

void fnv_append_int(std::uint64_t& h, long long x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof(buf), "%lld;", x);
  fnv_append(h, buf, static_cast<std::size_t>(n));
}

void fingerprint_law(std::uint64_t& h, const ControlLaw& law) {
  fnv_append_int(h, static_cast<int>(law.surface.kind));
  fnv_append_double(h, law.surface.lambda);
  fnv_append_double(h, law.surface.alpha);
  fnv_append_double(h, law.surface.beta);
  fnv_append_int(h, law.surface.p);
  fnv_append_int(h, law.surface.q);
  fnv_append_int(h, static_cast<int>(law.switching.kind));
  fnv_append_double(h, law.switching.k);
  fnv_append_double(h, law.switching.slope);
}

void validate(const SimConfig& config) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
  if (!(config.t_end >= config.dt)) throw std::invalid_argument("SimConfig: t_end must be >= dt");
  if (config.noise && !(config.noise->sigma >= 0.0))
    throw std::invalid_argument("SimConfig: noise sigma must be >= 0");
  validate(config.arm);
}

bool finite(const Vec3d& v) { return v.allFinite(); }

}  // namespace

double GaussianSampler::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;          // [0, 1)
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Vec3d inject_noise(const Vec3d& value, double sigma, GaussianSampler& rng) {
  if (sigma == 0.0) return value;
  Vec3d out = value;
  for (int i = 0; i < 3; ++i) out[i] += sigma * rng();
  return out;
}

std::uint64_t config_fingerprint(const SimConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  fnv_append_double(h, config.t_end);
  fnv_append_double(h, config.dt);
  fnv_append_int(h, static_cast<int>(config.integrator));
  fnv_append_int(h, config.noise.has_value());
  if (config.noise) {
    fnv_append_double(h, config.noise->sigma);
    fnv_append_int(h, static_cast<long long>(config.noise->seed));
    fnv_append_int(h, static_cast<int>(config.noise->entry));
  }
  fnv_append_int(h, config.controllers.has_value());
  if (config.controllers)
    for (const ControlLaw& law : *config.controllers) fingerprint_law(h, law);
  for (double x : {config.arm.m1, config.arm.m2, config.arm.m3, config.arm.l1, config.arm.l2,
                   config.arm.l3, config.arm.g})
    fnv_append_double(h, x);
  for (const JointSinusoid& j : config.reference.joints) {
    fnv_append_double(h, j.offset);
    fnv_append_double(h, j.amplitude);
    fnv_append_int(h, static_cast<int>(j.waveform));
  }
  for (int i = 0; i < 3; ++i) fnv_append_double(h, config.reference.initial_position[i]);
  for (int i = 0; i < 3; ++i) fnv_append_double(h, config.reference.initial_velocity[i]);
  return h;
}

SimRecord run(const SimConfig& config) {
  validate(config);

  const std::size_t steps =
      static_cast<std::size_t>(std::floor(config.t_end / config.dt + 1e-9));
  const std::size_t samples = steps + 1;

  SimRecord rec;
  rec.seed = config.noise ? config.noise->seed : 0;
  {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_fingerprint(config)));
    rec.config_hash = buf;
  }
  rec.t.reserve(samples);
  for (auto group : {&rec.position, &rec.velocity, &rec.desired, &rec.error, &rec.surface,
                     &rec.control})
    for (auto& column : *group) column.reserve(samples);

  const double sigma = config.noise ? config.noise->sigma : 0.0;
  const NoiseEntry entry = config.noise ? config.noise->entry : NoiseEntry::Position;
  GaussianSampler rng(rec.seed);

  Vec3d q = config.reference.initial_position;
  Vec3d v = config.reference.initial_velocity;

  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const Reference ref = reference(t, config.reference);

    // Measurements seen by the controller; the plant state stays exact.
    Vec3d q_meas = q;
    Vec3d v_meas = v;
    if (config.noise && entry == NoiseEntry::Position) q_meas = inject_noise(q, sigma, rng);
    if (config.noise && entry == NoiseEntry::Velocity) v_meas = inject_noise(v, sigma, rng);

    Vec3d u = Vec3d::Zero();
    Vec3d s_true = Vec3d::Zero();
    if (config.controllers) {
      const AffineTerms<double> aff = affine_terms(q_meas, v_meas, config.arm);
      for (int i = 0; i < 3; ++i) {
        const ControlLaw& law = (*config.controllers)[static_cast<std::size_t>(i)];
        const TrackingError meas{q_meas[i] - ref.position[i], v_meas[i] - ref.velocity[i]};
        u[i] = control(law.surface, law.switching, meas, aff.f[i], aff.g[i], ref.acceleration[i]);
        s_true[i] =
            surface(law.surface, TrackingError{q[i] - ref.position[i], v[i] - ref.velocity[i]});
      }
    }

    if (!finite(q) || !finite(v) || !finite(u) || !finite(s_true)) throw SimulationDiverged(k);

    rec.t.push_back(t);
    for (int i = 0; i < 3; ++i) {
      const auto j = static_cast<std::size_t>(i);
      rec.position[j].push_back(q[i]);
      rec.velocity[j].push_back(v[i]);
      rec.desired[j].push_back(ref.position[i]);
      rec.error[j].push_back(q[i] - ref.position[i]);
      rec.surface[j].push_back(s_true[i]);
      rec.control[j].push_back(u[i]);
    }

    if (k == steps) break;

    Vec3d tau = u;
    if (config.noise && entry == NoiseEntry::Torque) tau = inject_noise(u, sigma, rng);
    if (config.integrator == Integrator::RK4)
      rk4_step(q, v, tau, config.dt, config.arm);
    else
      euler_step(q, v, tau, config.dt, config.arm);
  }
  return rec;
}

}  // namespace armlab

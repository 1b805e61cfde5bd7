#pragma once

#include <cmath>
#include <stdexcept>

// Sliding mode tracking controllers for one joint: PD, terminal, and fast
// terminal surfaces with sign or tanh switching. The terminal exponent is the
// fractional q/p in (0, 1) with p, q odd, realized through the signed power
// sig_pow so surfaces stay real and odd-symmetric for negative errors.

namespace armlab {

// sign(x) * |x|^gamma, the odd continuous extension of the fractional power.
inline double sig_pow(double x, double gamma) {
  return std::copysign(std::pow(std::abs(x), gamma), x);
}

struct TrackingError {
  double e;   // position error [rad]
  double de;  // velocity error [rad/s]
};

struct SurfaceSpec {
  enum class Kind { PD, Terminal, FastTerminal };

  Kind kind = Kind::PD;
  double lambda = 0.0;  // PD surface slope [1/s]
  double alpha = 0.0;   // fast-terminal linear gain [1/s]
  double beta = 0.0;    // terminal gain
  int p = 5, q = 3;     // odd integers, q < p

  static SurfaceSpec pd(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("SurfaceSpec: lambda must be > 0");
    SurfaceSpec s;
    s.kind = Kind::PD;
    s.lambda = lambda;
    return s;
  }

  static SurfaceSpec terminal(double beta, int p, int q) {
    check_terminal(beta, p, q);
    SurfaceSpec s;
    s.kind = Kind::Terminal;
    s.beta = beta;
    s.p = p;
    s.q = q;
    return s;
  }

  static SurfaceSpec fast_terminal(double alpha, double beta, int p, int q) {
    if (!(alpha > 0.0)) throw std::invalid_argument("SurfaceSpec: alpha must be > 0");
    check_terminal(beta, p, q);
    SurfaceSpec s;
    s.kind = Kind::FastTerminal;
    s.alpha = alpha;
    s.beta = beta;
    s.p = p;
    s.q = q;
    return s;
  }

  double exponent() const { return static_cast<double>(q) / p; }

 private:
  static void check_terminal(double beta, int p, int q) {
    if (!(beta > 0.0)) throw std::invalid_argument("SurfaceSpec: beta must be > 0");
    if (!(q > 0 && q < p)) throw std::invalid_argument("SurfaceSpec: require 0 < q < p");
    if (p % 2 == 0 || q % 2 == 0) throw std::invalid_argument("SurfaceSpec: p and q must be odd");
  }
};

// Below this error magnitude the |e|^(q/p - 1) factor of the equivalent
// control is clamped, bounding the classic terminal-SMC singularity at e = 0.
inline constexpr double kSingularityClamp = 1e-4;

inline double surface(const SurfaceSpec& spec, const TrackingError& err) {
  switch (spec.kind) {
    case SurfaceSpec::Kind::PD:
      return err.de + spec.lambda * err.e;
    case SurfaceSpec::Kind::Terminal:
      return err.de + spec.beta * sig_pow(err.e, spec.exponent());
    case SurfaceSpec::Kind::FastTerminal:
    default:
      return err.de + spec.alpha * err.e + spec.beta * sig_pow(err.e, spec.exponent());
  }
}

// Coefficient of de in dS/dt, i.e. dS/de. The fractional-power branch clamps
// |e| at kSingularityClamp so the coefficient stays finite through e = 0.
inline double surface_error_rate_coefficient(const SurfaceSpec& spec, double e) {
  if (spec.kind == SurfaceSpec::Kind::PD) return spec.lambda;
  const double gamma = spec.exponent();
  const double mag = std::max(std::abs(e), kSingularityClamp);
  const double terminal = spec.beta * gamma * std::pow(mag, gamma - 1.0);
  return spec.kind == SurfaceSpec::Kind::Terminal ? terminal : spec.alpha + terminal;
}

// Control holding the state on the surface (solves dS/dt = 0 for the nominal
// per-joint model), with the desired-acceleration feedforward.
inline double equivalent_control(const SurfaceSpec& spec, const TrackingError& err, double f,
                                 double g, double accel_desired) {
  return (accel_desired - f - err.de * surface_error_rate_coefficient(spec, err.e)) / g;
}

struct SwitchingSpec {
  enum class Kind { Sign, Tanh };

  Kind kind = Kind::Sign;
  double k = 0.0;      // robust gain [N m], > 0
  double slope = 0.0;  // tanh slope, > 0 when kind == Tanh

  static SwitchingSpec sign(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("SwitchingSpec: k must be > 0");
    SwitchingSpec s;
    s.kind = Kind::Sign;
    s.k = k;
    return s;
  }

  static SwitchingSpec tanh(double k, double slope) {
    if (!(k > 0.0)) throw std::invalid_argument("SwitchingSpec: k must be > 0");
    if (!(slope > 0.0)) throw std::invalid_argument("SwitchingSpec: slope must be > 0");
    SwitchingSpec s;
    s.kind = Kind::Tanh;
    s.k = k;
    s.slope = slope;
    return s;
  }
};

// Reaching term. sgn(0) := 0 so no torque is injected exactly on the surface.
inline double switching_control(const SwitchingSpec& sw, double s) {
  if (sw.kind == SwitchingSpec::Kind::Sign) return s > 0.0 ? -sw.k : (s < 0.0 ? sw.k : 0.0);
  return -sw.k * std::tanh(sw.slope * s);
}

// Combined law u = u_eq + u_s for one joint.
inline double control(const SurfaceSpec& spec, const SwitchingSpec& sw, const TrackingError& err,
                      double f, double g, double accel_desired) {
  return equivalent_control(spec, err, f, g, accel_desired) +
         switching_control(sw, surface(spec, err));
}

// Per-joint control law: surface family plus switching term.
struct ControlLaw {
  SurfaceSpec surface;
  SwitchingSpec switching;
};

// Time for de/dt = -beta e^(q/p) to reach zero from e0.
inline double settling_time_tsmc(double beta, int p, int q, double e0) {
  if (!(beta > 0.0) || !(q > 0 && q < p))
    throw std::invalid_argument("settling_time_tsmc: require beta > 0 and 0 < q < p");
  const double m = static_cast<double>(p - q) / p;
  return std::pow(std::abs(e0), m) / (beta * m);
}

// Time for de/dt = -alpha e - beta e^(q/p) to reach zero from e0.
inline double settling_time_ftsmc(double alpha, double beta, int p, int q, double e0) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(q > 0 && q < p))
    throw std::invalid_argument("settling_time_ftsmc: require alpha, beta > 0 and 0 < q < p");
  const double m = static_cast<double>(p - q) / p;
  return std::log1p(alpha * std::pow(std::abs(e0), m) / beta) / (alpha * m);
}

// Settling-time bound for dV/dt <= -a V^gamma1 - b V^gamma2 with gamma1 > 1
// and gamma2 in (0, 1): T <= 1/(a (gamma1 - 1)) + 1/(b (1 - gamma2)).
inline double lemma1_bound(double a, double b, double gamma1, double gamma2) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("lemma1_bound: require a, b > 0");
  if (!(gamma1 > 1.0)) throw std::invalid_argument("lemma1_bound: require gamma1 > 1");
  if (!(gamma2 > 0.0 && gamma2 < 1.0))
    throw std::invalid_argument("lemma1_bound: require gamma2 in (0, 1)");
  return 1.0 / (a * (gamma1 - 1.0)) + 1.0 / (b * (1.0 - gamma2));
}

}  // namespace armlab

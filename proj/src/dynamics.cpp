#include "zetadyn/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace zetadyn::dynamics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kEpsRoot2 = std::sqrt(kEps);
const double kEpsRoot4 = std::sqrt(kEpsRoot2);

void check_domain(double x, const MapParams& params) {
  if (!std::isfinite(x)) throw DomainError("map: x must be finite");
  if (x == 0.0 || std::fabs(x) < params.min_abs_x)
    throw DomainError("map: |x| below the singularity guard");
}

}  // namespace

double sinc(double t) {
  const double a = std::fabs(t);
  if (a >= kEpsRoot4) return std::sin(t) / t;
  // |t| < eps^(1/4): sin(t)/t loses nothing, but the series is cheaper and
  // avoids the 0/0 corner outright.
  double r = 1.0;
  if (a >= kEps) {
    const double t2 = t * t;
    r -= t2 / 6.0;
    if (a >= kEpsRoot2) r += t2 * t2 / 120.0;
  }
  return r;
}

double one_minus_sinc_sq(double t) {
  const double a = std::fabs(t);
  if (a < 0.25) {
    // u = 1 - sinc(t) by series; forming 1 - sinc(t)^2 = u (2 - u) this way
    // keeps full precision where the direct difference would cancel.
    const double t2 = a * a;
    const double u =
        t2 / 6.0 - t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0 -
        t2 * t2 * t2 * t2 / 362880.0 + t2 * t2 * t2 * t2 * t2 / 39916800.0;
    return u * (2.0 - u);
  }
  const double s = std::sin(a) / a;
  return 1.0 - s * s;
}

double montgomery_kernel(double u) {
  return one_minus_sinc_sq(kPi * std::fabs(u));
}

double step(double x, const MapParams& params) {
  check_domain(x, params);
  const double r = one_minus_sinc_sq(kPi / x) + params.eps / x;
  if (!std::isfinite(r)) throw OverflowError("step: non-finite result");
  return r;
}

double step_derivative(double x, const MapParams& params) {
  check_domain(x, params);
  const double t = kPi / x;
  const double s = sinc(t);
  const double sp = std::sin(t) / kPi - std::cos(t) / x;
  const double d = -2.0 * s * sp - params.eps / (x * x);
  if (!std::isfinite(d)) throw OverflowError("step_derivative: non-finite result");
  return d;
}

Trajectory iterate(double x0, std::size_t n, const MapParams& params) {
  check_domain(x0, params);
  Trajectory traj;
  traj.x0 = x0;
  traj.params = params;
  traj.values.reserve(n + 1);
  traj.values.push_back(x0);
  for (std::size_t k = 0; k < n; ++k) {
    double next;
    try {
      next = step(traj.values.back(), params);
    } catch (const NumericError& e) {
      traj.terminated_early = true;
      traj.failure_index = traj.values.size();
      traj.failure_reason = e.what();
      break;
    }
    traj.values.push_back(next);
  }
  return traj;
}

double linear_step_small(double x) { return 1.0 - kPi * kPi * x * x; }

double linear_step_large(double y) { return kPi * kPi / 6.0 * y; }

double lyapunov_function_small(double x, const LyapunovFunctionParams& p) {
  if (!(p.c1 > 0.0)) throw DomainError("lyapunov_function_small: c1 must be > 0");
  return p.c1 * std::exp(-kPi * kPi * x * x * x / 3.0);
}

double lyapunov_function_large(std::size_t n, const LyapunovFunctionParams& p) {
  if (!(p.c2 > 0.0)) throw DomainError("lyapunov_function_large: c2 must be > 0");
  return p.c2 * std::pow(kPi * kPi / 6.0, static_cast<double>(n));
}

}  // namespace zetadyn::dynamics

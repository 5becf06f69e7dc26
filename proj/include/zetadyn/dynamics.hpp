#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zetadyn/errors.hpp"

namespace zetadyn::dynamics {

/// Parameters of the iterated map x -> 1 - sinc(pi/x)^2 + eps/x.
struct MapParams {
  double eps = 1.0;          ///< weight of the 1/x correction term
  double min_abs_x = 1e-300; ///< guard radius around the x = 0 singularity
};

/// An orbit of the map, truncated at the first failing step (if any).
struct Trajectory {
  double x0 = 0.0;
  MapParams params;
  std::vector<double> values;      ///< values[0] = x0; values[k+1] = step(values[k])
  bool terminated_early = false;   ///< true if some step could not be evaluated
  std::size_t failure_index = 0;   ///< index of the value that could not be computed
  std::string failure_reason;      ///< empty when terminated_early is false
};

/// Scale constants of the two closed-form Lyapunov functions.
struct LyapunovFunctionParams {
  double c1 = 1.0;  ///< small-x regime scale, must be > 0
  double c2 = 1.0;  ///< large-x regime scale, must be > 0
};

/// sin(t)/t with the removable singularity filled in (sinc(0) = 1).
double sinc(double t);

/// 1 - sinc(t)^2, evaluated without cancellation for small |t|.
/// Shared by montgomery_kernel and step; accurate to ~1 ulp of the result.
double one_minus_sinc_sq(double t);

/// Pair-correlation kernel 1 - sinc(pi*u)^2: 0 at u=0, 1 at nonzero integers,
/// exactly even, with values in [0, 1].
double montgomery_kernel(double u);

/// One application of the map: 1 - sinc(pi/x)^2 + eps/x.
/// Throws DomainError if x is non-finite or |x| < params.min_abs_x,
/// OverflowError if the result is non-finite.
double step(double x, const MapParams& params);

/// Analytic derivative of step with respect to x:
///   f'(x) = -2 s s' - eps/x^2,  s = sinc(pi/x),  s' = sin(pi/x)/pi - cos(pi/x)/x.
/// Same domain guards as step.
double step_derivative(double x, const MapParams& params);

/// Iterate the map n times from x0. values[0] = x0. On a failing step the
/// trajectory is truncated and flagged instead of throwing.
/// Throws DomainError if x0 itself violates the domain guard.
Trajectory iterate(double x0, std::size_t n, const MapParams& params);

/// Small-x linearization x -> 1 - pi^2 x^2.
double linear_step_small(double x);

/// Large-x linearization y -> (pi^2/6) y.
double linear_step_large(double y);

/// V(x) = c1 * exp(-pi^2 x^3 / 3); strictly positive, decreasing on [0, 1].
/// Throws DomainError unless p.c1 > 0.
double lyapunov_function_small(double x, const LyapunovFunctionParams& p);

/// V(n) = c2 * (pi^2/6)^n over the iteration count n.
/// Throws DomainError unless p.c2 > 0.
double lyapunov_function_large(std::size_t n, const LyapunovFunctionParams& p);

}  // namespace zetadyn::dynamics

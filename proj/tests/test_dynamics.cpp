#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "zetadyn/dynamics.hpp"
#include "zetadyn/errors.hpp"

namespace dyn = zetadyn::dynamics;
using zetadyn::DomainError;
using zetadyn::OverflowError;

namespace {

constexpr double kPi = std::numbers::pi;

// Relative closeness with a symmetric scale; exact equality short-circuits so
// the check also covers signed zeros and exact integers.
bool rel_close(double a, double b, double rel) {
  if (a == b) return true;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= rel * scale;
}

// Reference sinc via the alternating series, accurate to < 1e-18 relative for
// |t| <= 1e-2; used to cross-check every branch of the cascaded evaluation.
double sinc_series_ref(double t) {
  const double t2 = t * t;
  return 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0;
}

}  // namespace

TEST_CASE("sinc: removable singularity and reference values") {
  CHECK(dyn::sinc(0.0) == 1.0);
  CHECK(rel_close(dyn::sinc(0.1), 0.9983341664682815, 1e-15));
  CHECK(rel_close(dyn::sinc(1.0), 0.8414709848078965, 1e-15));
  CHECK(rel_close(dyn::sinc(1.5707963267948966), 0.6366197723675814, 1e-15));
  CHECK(rel_close(dyn::sinc(-1.0), dyn::sinc(1.0), 1e-15));
}

TEST_CASE("sinc: branch cascade agrees with the series reference") {
  const double probes[] = {1e-18, 1e-12, 1e-9, 2e-8,   1e-6,
                           5e-5,  1.2e-4, 1.3e-4, 2e-4, 1e-3, 1e-2};
  for (double t : probes) {
    const double ref = sinc_series_ref(t);
    CAPTURE(t);
    CHECK(rel_close(dyn::sinc(t), ref, 1e-15));
    CHECK(rel_close(dyn::sinc(-t), dyn::sinc(t), 1e-15));
  }
}

TEST_CASE("one_minus_sinc_sq: cancellation-free small-argument evaluation") {
  CHECK(dyn::one_minus_sinc_sq(0.0) == 0.0);
  CHECK(rel_close(dyn::one_minus_sinc_sq(0.1), 0.003328892062081556, 1e-14));
  CHECK(rel_close(dyn::one_minus_sinc_sq(0.2), 0.013262425036063535, 1e-14));
  CHECK(rel_close(dyn::one_minus_sinc_sq(0.3), 0.029642305053768317, 1e-14));
  CHECK(rel_close(dyn::one_minus_sinc_sq(1.0), 0.2919265817264288, 1e-14));

  // Leading behavior t^2/3: the direct form 1 - sinc^2 would lose every
  // significant digit at t = 1e-8; the series form keeps full precision.
  for (double t : {1e-10, 1e-8, 1e-6, 1e-4}) {
    const double lead = t * t / 3.0;
    CAPTURE(t);
    CHECK(rel_close(dyn::one_minus_sinc_sq(t), lead, 1e-7));
  }

  // Continuity across the series/direct switch: just below the crossover the
  // direct evaluation still carries ~13 good digits, so both must agree.
  for (double t : {1e-2, 0.1, 0.249}) {
    const double s = std::sin(t) / t;
    const double direct = 1.0 - s * s;
    CAPTURE(t);
    CHECK(rel_close(dyn::one_minus_sinc_sq(t), direct, 1e-10));
  }
  CHECK(rel_close(dyn::one_minus_sinc_sq(0.2499999), dyn::one_minus_sinc_sq(0.2500001),
                  1e-5));
}

TEST_CASE("one_minus_sinc_sq: bounded in [0, 1]") {
  for (double t = 0.0; t <= 50.0; t += 0.173) {
    CAPTURE(t);
    const double v = dyn::one_minus_sinc_sq(t);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("montgomery_kernel: zero at origin, one at nonzero integers") {
  CHECK(dyn::montgomery_kernel(0.0) == 0.0);
  for (int k = 1; k <= 10; ++k) {
    CAPTURE(k);
    CHECK(std::fabs(dyn::montgomery_kernel(static_cast<double>(k)) - 1.0) <= 1e-12);
    CHECK(std::fabs(dyn::montgomery_kernel(static_cast<double>(-k)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("montgomery_kernel: exactly even and bounded") {
  for (double u : {1e-9, 1e-3, 0.25, 0.5, 0.75, 1.3, 2.5, 7.77, 123.456}) {
    CAPTURE(u);
    CHECK(dyn::montgomery_kernel(-u) == dyn::montgomery_kernel(u));  // bitwise
    const double v = dyn::montgomery_kernel(u);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(rel_close(dyn::montgomery_kernel(0.25), 0.18943053086129782, 1e-14));
  CHECK(rel_close(dyn::montgomery_kernel(0.5), 0.5947152654306489, 1e-14));
  CHECK(rel_close(dyn::montgomery_kernel(1.5), 0.9549683628256277, 1e-14));
  CHECK(rel_close(dyn::montgomery_kernel(2.5), 0.983788610617226, 1e-14));
}

TEST_CASE("step: reference values") {
  const dyn::MapParams def{};
  CHECK(dyn::step(0.5, def) == 3.0);
  CHECK(dyn::step(1.0, def) == 2.0);
  CHECK(rel_close(dyn::step(2.0, def), 1.094715265430649, 1e-14));
  CHECK(rel_close(dyn::step(3.0, def), 0.6494153437475534, 1e-13));
  CHECK(rel_close(dyn::step(0.3, def), 4.3264941534374755, 1e-14));
  CHECK(dyn::step(-0.5, def) == -1.0);
  CHECK(rel_close(dyn::step(-2.0, def), 0.09471526543064891, 1e-13));
}

TEST_CASE("step: eps weights the 1/x correction") {
  CHECK(rel_close(dyn::step(2.0, {0.5, 1e-300}), 0.8447152654306489, 1e-14));
  // eps = 0 reduces the map to the kernel term alone.
  CHECK(rel_close(dyn::step(2.0, {0.0, 1e-300}), 0.5947152654306489, 1e-14));
  CHECK(rel_close(dyn::step(2.0, {0.0, 1e-300}), dyn::montgomery_kernel(0.5), 1e-15));
}

TEST_CASE("step: large-x decay toward 1/x") {
  const dyn::MapParams def{};
  for (double x : {1e3, 1e4, 1e5, 1e6}) {
    CAPTURE(x);
    CHECK(std::fabs(dyn::step(x, def) - 1.0 / x) <= 4.0 / (x * x));
  }
  CHECK(rel_close(dyn::step(1e6, def), 1.0000032898681337e-06, 1e-13));
  CHECK(rel_close(dyn::step(1e3, def), 0.0010032898638044066, 1e-13));
}

TEST_CASE("step: tiny-x blowup to ~1/x and two-step near-return") {
  const dyn::MapParams def{};
  for (double x0 : {1e-6, 1e-9, 5e-13}) {
    CAPTURE(x0);
    const double v1 = dyn::step(x0, def);
    // The kernel term lies in [0, 1], so the blowup is 1/x0 + O(1).
    CHECK(std::fabs(v1 - 1.0 / x0) <= 1.0 + 1e-9);
    const double v2 = dyn::step(v1, def);
    CHECK(rel_close(v2, x0, 1e-2));
  }
}

TEST_CASE("step: domain and overflow guards") {
  const dyn::MapParams def{};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(dyn::step(0.0, def), DomainError);
  CHECK_THROWS_AS(dyn::step(nan, def), DomainError);
  CHECK_THROWS_AS(dyn::step(inf, def), DomainError);
  CHECK_THROWS_AS(dyn::step(-inf, def), DomainError);
  CHECK_THROWS_AS(dyn::step(1e-301, def), DomainError);  // below default guard

  const dyn::MapParams tight{1.0, 0.5};
  CHECK_THROWS_AS(dyn::step(0.4, tight), DomainError);
  CHECK_NOTHROW(dyn::step(0.6, tight));

  // eps/x overflows to infinity -> flagged, not returned.
  CHECK_THROWS_AS(dyn::step(1e-10, {1e300, 1e-300}), OverflowError);
}

TEST_CASE("step_derivative: reference values") {
  const dyn::MapParams def{};
  CHECK(rel_close(dyn::step_derivative(0.5, def), -4.0, 1e-13));
  CHECK(rel_close(dyn::step_derivative(1.0, def), -1.0, 1e-13));
  CHECK(rel_close(dyn::step_derivative(2.0, def), -0.6552847345693511, 1e-13));
  CHECK(rel_close(dyn::step_derivative(3.0, def), -0.29139198979073505, 1e-12));
  CHECK(rel_close(dyn::step_derivative(0.3, def), -10.881041196039266, 1e-13));
  CHECK(rel_close(dyn::step_derivative(2.0, {2.0, 1e-300}), -0.9052847345693511,
                  1e-13));
}

TEST_CASE("step_derivative: matches central finite differences") {
  const dyn::MapParams def{};
  for (double x : {0.3, 0.5, 0.7, 1.7, 2.0, 5.0}) {
    CAPTURE(x);
    const double h = 1e-6 * std::max(1.0, std::fabs(x));
    const double fd =
        (dyn::step(x + h, def) - dyn::step(x - h, def)) / (2.0 * h);
    CHECK(rel_close(dyn::step_derivative(x, def), fd, 1e-6));
  }
}

TEST_CASE("step_derivative: domain and overflow guards") {
  const dyn::MapParams def{};
  CHECK_THROWS_AS(dyn::step_derivative(0.0, def), DomainError);
  CHECK_THROWS_AS(dyn::step_derivative(1e-301, def), DomainError);
  // eps/x^2 overflows long before eps/x does.
  CHECK_THROWS_AS(dyn::step_derivative(1e-160, def), OverflowError);
}

TEST_CASE("iterate: orbit layout and exact step replay") {
  const dyn::MapParams def{};
  const auto still = dyn::iterate(0.5, 0, def);
  CHECK(still.values == std::vector<double>{0.5});
  CHECK_FALSE(still.terminated_early);
  CHECK(still.failure_reason.empty());

  const auto traj = dyn::iterate(0.5, 5, def);
  REQUIRE(traj.values.size() == 6);
  CHECK(traj.values[0] == 0.5);
  CHECK_FALSE(traj.terminated_early);
  for (std::size_t k = 0; k + 1 < traj.values.size(); ++k) {
    CAPTURE(k);
    CHECK(traj.values[k + 1] == dyn::step(traj.values[k], def));  // bitwise
  }
}

TEST_CASE("iterate: tiny start alternates between ~1/x0 and ~x0") {
  const auto traj = dyn::iterate(5e-13, 30, {});
  REQUIRE(traj.values.size() == 31);
  CHECK_FALSE(traj.terminated_early);
  for (std::size_t k = 1; k < traj.values.size(); k += 2) {
    CAPTURE(k);
    CHECK(rel_close(traj.values[k], 2.0e12, 1e-6));
  }
  for (std::size_t k = 2; k < traj.values.size(); k += 2) {
    CAPTURE(k);
    CHECK(rel_close(traj.values[k], 5e-13, 1e-3));
  }
  // The +1 feedback drains the large branch: strictly decreasing, yet by far
  // less than 0.3% over the whole run.
  for (std::size_t k = 3; k < traj.values.size(); k += 2) {
    CAPTURE(k);
    CHECK(traj.values[k] < traj.values[k - 2]);
  }
  const double drift = (traj.values[1] - traj.values[29]) / traj.values[1];
  CHECK(drift > 0.0);
  CHECK(drift < 0.003);
}

TEST_CASE("iterate: mid-orbit failure truncates instead of throwing") {
  // Guard radius 2.0: the first step lands inside the forbidden disk.
  const dyn::MapParams tight{1.0, 2.0};
  const auto traj = dyn::iterate(2.5, 10, tight);
  CHECK(traj.terminated_early);
  REQUIRE(traj.values.size() == 2);
  CHECK(traj.values[0] == 2.5);
  CHECK(traj.failure_index == 2);
  CHECK_FALSE(traj.failure_reason.empty());

  // Overflow on the very first step: only x0 remains.
  const auto boom = dyn::iterate(1e-10, 10, {1e300, 1e-300});
  CHECK(boom.terminated_early);
  REQUIRE(boom.values.size() == 1);
  CHECK(boom.failure_index == 1);
}

TEST_CASE("iterate: invalid x0 throws rather than truncating") {
  CHECK_THROWS_AS(dyn::iterate(0.0, 3, {}), DomainError);
  CHECK_THROWS_AS(dyn::iterate(1.0, 3, dyn::MapParams{1.0, 2.0}), DomainError);
}

TEST_CASE("linearizations: values and fixed points") {
  CHECK(dyn::linear_step_small(0.0) == 1.0);
  CHECK(rel_close(dyn::linear_step_small(0.1), 0.9013039559891064, 1e-15));
  CHECK(rel_close(dyn::linear_step_small(0.3), 0.11173560390195772, 1e-14));
  CHECK(rel_close(dyn::linear_step_large(1.0), 1.6449340668482264, 1e-15));
  CHECK(rel_close(dyn::linear_step_large(0.6), 0.9869604401089359, 1e-15));
  CHECK(rel_close(dyn::linear_step_large(2.0) / 2.0, 1.6449340668482264, 1e-15));

  // Fixed points of x -> 1 - pi^2 x^2.
  for (double xs : {0.2716555250672189, -0.3729767087095567}) {
    CAPTURE(xs);
    CHECK(std::fabs(dyn::linear_step_small(xs) - xs) <= 1e-12);
  }
}

TEST_CASE("certificate functions: values, positivity, decay and growth") {
  const dyn::LyapunovFunctionParams unit{};
  CHECK(dyn::lyapunov_function_small(0.0, unit) == 1.0);
  CHECK(rel_close(dyn::lyapunov_function_small(0.5, unit), 0.6628321311472734,
                  1e-14));
  CHECK(rel_close(dyn::lyapunov_function_small(1.0, unit), 0.03725876224754124,
                  1e-14));

  // Scale constants multiply straight through.
  const dyn::LyapunovFunctionParams scaled{3.0, 5.0};
  CHECK(rel_close(dyn::lyapunov_function_small(0.5, scaled),
                  3.0 * dyn::lyapunov_function_small(0.5, unit), 1e-15));
  CHECK(rel_close(dyn::lyapunov_function_large(2, scaled),
                  5.0 * dyn::lyapunov_function_large(2, unit), 1e-15));

  // Strictly positive and strictly decreasing on [0, 1].
  double prev = dyn::lyapunov_function_small(0.0, unit);
  for (int i = 1; i <= 20; ++i) {
    const double x = i / 20.0;
    const double v = dyn::lyapunov_function_small(x, unit);
    CAPTURE(x);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }

  CHECK(dyn::lyapunov_function_large(0, unit) == 1.0);
  CHECK(rel_close(dyn::lyapunov_function_large(1, unit), 1.6449340668482264,
                  1e-14));
  CHECK(rel_close(dyn::lyapunov_function_large(2, unit), 2.7058080842778454,
                  1e-14));
  for (std::size_t n = 0; n < 6; ++n) {
    CAPTURE(n);
    CHECK(rel_close(dyn::lyapunov_function_large(n + 1, unit) /
                        dyn::lyapunov_function_large(n, unit),
                    1.6449340668482264, 1e-12));
  }
}

TEST_CASE("certificate functions: scale constants must be positive") {
  CHECK_THROWS_AS(dyn::lyapunov_function_small(0.5, {0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(dyn::lyapunov_function_small(0.5, {-1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(dyn::lyapunov_function_large(2, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(dyn::lyapunov_function_large(2, {1.0, -2.0}), DomainError);
}

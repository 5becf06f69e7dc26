#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zetadyn/dynamics.hpp"
#include "zetadyn/errors.hpp"

namespace zetadyn::chaos {

/// Running Lyapunov-exponent estimates along one orbit.
/// lambdas[k] is the estimate after k+1 iterations; lambdas[0] = 0 by
/// convention so that row 1 of the series aligns with a table row "1, 0.0".
struct LyapunovSeries {
  double x0 = 0.0;
  dynamics::MapParams params;
  std::vector<double> lambdas;
  bool truncated = false;  ///< orbit ended early; lambdas covers the prefix
};

/// Fixed-width histogram over the half-open range [lo, hi).
struct Histogram {
  std::vector<double> edges;          ///< bins+1 strictly increasing edges
  std::vector<std::uint64_t> counts;  ///< per-bin counts
  std::uint64_t total = 0;            ///< all inputs, including dropped ones
  std::uint64_t dropped = 0;          ///< inputs outside [lo, hi)
};

/// Post-transient orbit samples over a grid of eps values.
struct BifurcationDiagram {
  double x0 = 0.0;
  std::vector<double> eps_values;
  std::vector<std::vector<double>> samples;  ///< one sequence per eps value
  std::vector<std::uint8_t> truncated;       ///< per-eps early-termination flag
};

/// Exponential density rate * exp(-rate x) on x >= 0.
struct ExponentialModel {
  explicit ExponentialModel(double rate_in) : rate(rate_in) {
    if (!(rate > 0.0)) throw DomainError("ExponentialModel: rate must be > 0");
  }
  double rate;
};

/// One row of a bundled reference Lyapunov table.
struct PaperLyapunovRow {
  int iteration = 0;
  std::string raw;      ///< the value field exactly as written in the file
  double value = 0.0;   ///< parsed value; meaningful only if usable
  bool usable = false;  ///< false when the field does not parse as one number
};

struct PaperLyapunovTable {
  std::vector<PaperLyapunovRow> rows;
};

/// Running-mean estimator of ln|f'| along the orbit of an arbitrary 1-D map.
/// Returns n estimates; index 0 is the 0 placeholder described above.
/// Throws DegenerateOrbit (with the orbit index) if |f'(x_i)| == 0.
template <class Map, class Deriv>
std::vector<double> lyapunov_series_for_map(double x0, std::size_t n, Map f,
                                            Deriv df) {
  std::vector<double> lambdas;
  lambdas.reserve(n);
  if (n == 0) return lambdas;
  lambdas.push_back(0.0);
  double x = x0;
  double sum = 0.0, comp = 0.0;  // Neumaier-compensated running sum
  for (std::size_t k = 1; k < n; ++k) {
    const double d = df(x);
    if (d == 0.0)
      throw DegenerateOrbit("lyapunov: zero derivative on orbit", k - 1);
    const double term = std::log(std::fabs(d));
    const double t = sum + term;
    comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term
                                                : (term - t) + sum;
    sum = t;
    lambdas.push_back((sum + comp) / static_cast<double>(k));
    x = f(x);
  }
  return lambdas;
}

/// Lyapunov estimates along the orbit of the main map. The orbit is produced
/// by dynamics::iterate, so an early-terminating orbit yields a truncated
/// (prefix) series with the flag set rather than an error.
/// Throws DegenerateOrbit if some |f'(x_i)| == 0.
LyapunovSeries lyapunov_exponents(double x0, std::size_t n,
                                  const dynamics::MapParams& params);

/// Count values into `bins` equal-width bins over [lo, hi); values outside
/// the range are dropped but still counted in `total`.
/// Throws EmptyInput for an empty sample, DomainError unless lo < hi and
/// bins >= 1.
Histogram build_histogram(const std::vector<double>& values, std::size_t bins,
                          double lo, double hi);

/// Shannon entropy -sum p_i log2 p_i, p_i = counts[i]/total, 0 log 0 = 0.
/// Throws EmptyInput if the histogram has total == 0.
double shannon_entropy(const Histogram& h);

/// Trapezoid estimate of -integral P ln P over a uniform grid of (y, P(y))
/// samples; 0 ln 0 = 0.
/// Throws EmptyInput for fewer than 2 samples, NonUniformGrid if any spacing
/// deviates from the mean by more than 1e-9 relative, DomainError on P < 0.
double differential_entropy(const std::vector<std::pair<double, double>>& samples);

/// Orbit samples over a uniform eps grid: for each eps, iterate
/// n_transient + n_sample steps and record the last n_sample values.
/// Per-eps step failures truncate that column and set its flag; they are not
/// fatal. Throws DomainError if eps_steps == 0, if eps_steps > 1 without
/// eps_lo < eps_hi, or if x0 violates the domain guard.
BifurcationDiagram bifurcation_scan(double x0, double eps_lo, double eps_hi,
                                    std::size_t eps_steps,
                                    std::size_t n_transient,
                                    std::size_t n_sample,
                                    double min_abs_x = 1e-300);

/// Density of the exponential model at x (0 for x < 0).
double exponential_pdf(double x, const ExponentialModel& m);

/// Mean 1/rate of the exponential model.
double exponential_mean(const ExponentialModel& m);

/// Read a bundled reference table with header "iteration,lambda".
/// Value fields that do not parse as a single number (e.g. doubled decimal
/// points) are kept verbatim and flagged unusable.
/// Throws ParseError (with line number) on structural problems, EmptyTable
/// if there are no data rows.
PaperLyapunovTable load_paper_lyapunov(std::istream& in);
PaperLyapunovTable load_paper_lyapunov_file(const std::string& path);

}  // namespace zetadyn::chaos

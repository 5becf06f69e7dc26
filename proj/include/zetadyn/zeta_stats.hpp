#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zetadyn/errors.hpp"

namespace zetadyn::zetastats {

/// Density normalization used for spacings and pair correlation:
/// Paper uses d_n = ln(gamma_n)/(2 pi); Standard uses d_n = ln(gamma_n/2pi)/(2 pi).
enum class Convention { Paper, Standard };

/// Strictly increasing positive ordinates loaded from a text table.
struct ZeroTable {
  std::vector<double> gammas;
  std::string source;  ///< path or label, for diagnostics only
};

/// Consecutive-gap spacings u_n = (gamma_{n+1} - gamma_n) * d_n.
struct SpacingEnsemble {
  std::vector<double> spacings;
  Convention convention = Convention::Paper;
};

/// Binned pair-correlation estimate against the model kernel.
struct PairCorrelation {
  std::vector<double> bin_centers;
  std::vector<double> empirical;        ///< count / (N * bin_width)
  std::vector<double> model;            ///< montgomery_kernel at bin centers
  std::vector<std::uint64_t> counts;    ///< raw per-bin pair counts
  std::uint64_t pair_count = 0;         ///< pairs that landed in (0, max_u]
  std::size_t zero_count = 0;
  double bin_width = 0.0;
};

struct ErrorRow {
  std::size_t index = 0;  ///< 1-based row number
  double a = 0.0;
  double b = 0.0;
  double signed_error = 0.0;  ///< a - b
  double abs_error = 0.0;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
  double max_abs_error = 0.0;
};

struct ModelDeviation {
  double max_abs_dev = 0.0;
  double mean_sq_dev = 0.0;
};

/// Parse a zero table: one decimal per line, '#' comments and blank lines
/// skipped. Throws ParseError (1-based line) for malformed or non-positive
/// entries, MonotonicityError (first offending 0-based index) if not strictly
/// increasing, EmptyTable if no values remain.
ZeroTable load_zeros(std::istream& in, const std::string& source = "");
ZeroTable load_zeros_file(const std::string& path);

/// Normalized consecutive spacings under the chosen convention.
/// Throws TooFewZeros for fewer than 2 ordinates.
SpacingEnsemble normalized_spacings(const ZeroTable& table, Convention conv);

/// Empirical pair correlation: ordered pairs i < j scored at
/// u_ij = (gamma_j - gamma_i) * d_i, histogrammed over (0, max_u] with
/// `bins` equal bins; empirical[b] = count_b / (N * bin_width); model[b] is
/// the kernel at the bin center.
/// Throws TooFewZeros for fewer than 2 ordinates, DomainError unless
/// max_u > 0 and bins >= 1.
PairCorrelation pair_correlation_empirical(const ZeroTable& table, double max_u,
                                           std::size_t bins, Convention conv);

/// Max-abs and mean-square deviation between the empirical and model columns.
ModelDeviation compare_model(const PairCorrelation& pc);

/// Average density of zeros at height E: ln(E)/(2 pi).
/// Throws DomainError unless E > 1.
double zero_density(double E);

/// Row-by-row comparison of two equal-length sequences (signed and absolute
/// errors, 1-based indices) plus the maximum absolute error.
/// Throws LengthMismatch on different lengths, EmptyInput on empty input.
ErrorTable error_table(const std::vector<double>& a,
                       const std::vector<double>& b);

/// The harmonic ratio sequence r_k = (k+1)/k for k = 1..n.
/// Throws EmptyInput for n == 0.
std::vector<double> harmonic_reference(std::size_t n);

}  // namespace zetadyn::zetastats

#include "zetadyn/zeta_stats.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>

#include "zetadyn/dynamics.hpp"

namespace zetadyn::zetastats {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Density factor d_n applied to the gap following gamma_n.
double density_factor(double gamma, Convention conv) {
  const double arg = conv == Convention::Paper ? gamma : gamma / kTwoPi;
  return std::log(arg) / kTwoPi;
}

}  // namespace

ZeroTable load_zeros(std::istream& in, const std::string& source) {
  ZeroTable table;
  table.source = source;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t b = 0;
    while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b])))
      ++b;
    if (b == line.size() || line[b] == '#') continue;

    const char* begin = line.c_str() + b;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin)
      throw ParseError("zero table: not a number", lineno);
    while (*end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (*end != '\0')
      throw ParseError("zero table: trailing characters after value", lineno);
    if (!std::isfinite(v) || v <= 0.0)
      throw ParseError("zero table: ordinate must be positive and finite",
                       lineno);
    if (!table.gammas.empty() && v <= table.gammas.back())
      throw MonotonicityError("zero table: ordinates must be strictly increasing",
                              table.gammas.size());
    table.gammas.push_back(v);
  }
  if (table.gammas.empty()) throw EmptyTable("zero table: no values");
  return table;
}

ZeroTable load_zeros_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open zero table: " + path);
  return load_zeros(in, path);
}

SpacingEnsemble normalized_spacings(const ZeroTable& table, Convention conv) {
  if (table.gammas.size() < 2)
    throw TooFewZeros("normalized_spacings: need at least 2 ordinates");
  SpacingEnsemble ens;
  ens.convention = conv;
  ens.spacings.reserve(table.gammas.size() - 1);
  for (std::size_t n = 0; n + 1 < table.gammas.size(); ++n) {
    const double gap = table.gammas[n + 1] - table.gammas[n];
    ens.spacings.push_back(gap * density_factor(table.gammas[n], conv));
  }
  return ens;
}

PairCorrelation pair_correlation_empirical(const ZeroTable& table, double max_u,
                                           std::size_t bins, Convention conv) {
  if (table.gammas.size() < 2)
    throw TooFewZeros("pair_correlation: need at least 2 ordinates");
  if (!(max_u > 0.0) || !std::isfinite(max_u))
    throw DomainError("pair_correlation: max_u must be positive");
  if (bins == 0) throw DomainError("pair_correlation: need at least one bin");

  PairCorrelation pc;
  pc.zero_count = table.gammas.size();
  pc.bin_width = max_u / static_cast<double>(bins);
  pc.counts.assign(bins, 0);

  const std::vector<double>& g = table.gammas;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double d = density_factor(g[i], conv);
    if (!(d > 0.0)) continue;  // pairs from this ordinate score u <= 0
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const double u = (g[j] - g[i]) * d;
      if (u > max_u) break;
      if (u <= 0.0) continue;
      auto idx = static_cast<std::size_t>(std::ceil(u / pc.bin_width)) - 1;
      if (idx >= bins) idx = bins - 1;
      ++pc.counts[idx];
      ++pc.pair_count;
    }
  }

  const double norm =
      static_cast<double>(table.gammas.size()) * pc.bin_width;
  pc.bin_centers.resize(bins);
  pc.empirical.resize(bins);
  pc.model.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    pc.bin_centers[b] = (static_cast<double>(b) + 0.5) * pc.bin_width;
    pc.empirical[b] = static_cast<double>(pc.counts[b]) / norm;
    pc.model[b] = dynamics::montgomery_kernel(pc.bin_centers[b]);
  }
  return pc;
}

ModelDeviation compare_model(const PairCorrelation& pc) {
  ModelDeviation dev;
  if (pc.empirical.empty()) return dev;
  double sq = 0.0;
  for (std::size_t b = 0; b < pc.empirical.size(); ++b) {
    const double d = std::fabs(pc.empirical[b] - pc.model[b]);
    dev.max_abs_dev = std::max(dev.max_abs_dev, d);
    sq += d * d;
  }
  dev.mean_sq_dev = sq / static_cast<double>(pc.empirical.size());
  return dev;
}

double zero_density(double E) {
  if (!(E > 1.0)) throw DomainError("zero_density: requires E > 1");
  return std::log(E) / kTwoPi;
}

ErrorTable error_table(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.size() != b.size())
    throw LengthMismatch("error_table: inputs differ in length");
  if (a.empty()) throw EmptyInput("error_table: empty input");
  ErrorTable table;
  table.rows.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ErrorRow row;
    row.index = i + 1;
    row.a = a[i];
    row.b = b[i];
    row.signed_error = a[i] - b[i];
    row.abs_error = std::fabs(row.signed_error);
    table.max_abs_error = std::max(table.max_abs_error, row.abs_error);
    table.rows.push_back(row);
  }
  return table;
}

std::vector<double> harmonic_reference(std::size_t n) {
  if (n == 0) throw EmptyInput("harmonic_reference: n must be >= 1");
  std::vector<double> r(n);
  for (std::size_t k = 1; k <= n; ++k)
    r[k - 1] = static_cast<double>(k + 1) / static_cast<double>(k);
  return r;
}

}  // namespace zetadyn::zetastats

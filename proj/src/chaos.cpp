#include "zetadyn/chaos.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace zetadyn::chaos {

namespace {

// Neumaier-compensated accumulator; keeps entropy and Lyapunov averages
// well inside their 1e-12 contracts.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double t = sum + term;
    comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term
                                                : (term - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_full_double(const std::string& text, double* out) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size()) return false;
  *out = v;
  return true;
}

}  // namespace

LyapunovSeries lyapunov_exponents(double x0, std::size_t n,
                                  const dynamics::MapParams& params) {
  LyapunovSeries series;
  series.x0 = x0;
  series.params = params;
  if (n == 0) return series;

  const dynamics::Trajectory traj = dynamics::iterate(x0, n - 1, params);
  series.lambdas.reserve(n);
  series.lambdas.push_back(0.0);
  Accumulator acc;
  for (std::size_t k = 1; k < n && k <= traj.values.size(); ++k) {
    double d;
    try {
      d = dynamics::step_derivative(traj.values[k - 1], params);
    } catch (const NumericError&) {
      break;
    }
    if (d == 0.0)
      throw DegenerateOrbit("lyapunov: zero derivative on orbit", k - 1);
    acc.add(std::log(std::fabs(d)));
    series.lambdas.push_back(acc.value() / static_cast<double>(k));
  }
  series.truncated = traj.terminated_early || series.lambdas.size() < n;
  return series;
}

Histogram build_histogram(const std::vector<double>& values, std::size_t bins,
                          double lo, double hi) {
  if (values.empty()) throw EmptyInput("build_histogram: no values");
  if (bins == 0) throw DomainError("build_histogram: need at least one bin");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("build_histogram: need finite lo < hi");

  Histogram h;
  h.edges.resize(bins + 1);
  const double width = hi - lo;
  for (std::size_t i = 0; i <= bins; ++i)
    h.edges[i] = lo + width * static_cast<double>(i) / static_cast<double>(bins);
  h.edges[bins] = hi;
  h.counts.assign(bins, 0);
  h.total = values.size();
  for (const double v : values) {
    if (v >= lo && v < hi) {
      auto idx = static_cast<std::size_t>((v - lo) / width *
                                          static_cast<double>(bins));
      if (idx >= bins) idx = bins - 1;
      ++h.counts[idx];
    } else {
      ++h.dropped;
    }
  }
  return h;
}

double shannon_entropy(const Histogram& h) {
  if (h.total == 0) throw EmptyInput("shannon_entropy: empty histogram");
  Accumulator acc;
  const double total = static_cast<double>(h.total);
  for (const std::uint64_t c : h.counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    acc.add(p * std::log2(p));
  }
  double result = -acc.value();
  if (result == 0.0) result = 0.0;  // normalize -0
  return result;
}

double differential_entropy(
    const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2)
    throw EmptyInput("differential_entropy: need at least 2 samples");
  const std::size_t n = samples.size();
  const double mean_dy =
      (samples.back().first - samples.front().first) / static_cast<double>(n - 1);
  if (!(mean_dy > 0.0))
    throw NonUniformGrid("differential_entropy: grid must be increasing");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dy = samples[i + 1].first - samples[i].first;
    if (std::fabs(dy - mean_dy) > 1e-9 * std::fabs(mean_dy))
      throw NonUniformGrid("differential_entropy: non-uniform grid spacing");
  }
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = samples[i].second;
    if (p < 0.0)
      throw DomainError("differential_entropy: negative density value");
    const double g = (p == 0.0) ? 0.0 : -p * std::log(p);
    acc.add((i == 0 || i + 1 == n) ? 0.5 * g : g);
  }
  return acc.value() * mean_dy;
}

BifurcationDiagram bifurcation_scan(double x0, double eps_lo, double eps_hi,
                                    std::size_t eps_steps,
                                    std::size_t n_transient,
                                    std::size_t n_sample, double min_abs_x) {
  if (eps_steps == 0) throw DomainError("bifurcation_scan: eps_steps >= 1");
  if (eps_steps > 1 && !(eps_lo < eps_hi))
    throw DomainError("bifurcation_scan: need eps_lo < eps_hi");

  BifurcationDiagram diagram;
  diagram.x0 = x0;
  diagram.eps_values.reserve(eps_steps);
  for (std::size_t i = 0; i < eps_steps; ++i) {
    diagram.eps_values.push_back(
        eps_steps == 1 ? eps_lo
                       : eps_lo + (eps_hi - eps_lo) * static_cast<double>(i) /
                                      static_cast<double>(eps_steps - 1));
  }

  for (const double eps : diagram.eps_values) {
    const dynamics::MapParams params{eps, min_abs_x};
    const dynamics::Trajectory traj =
        dynamics::iterate(x0, n_transient + n_sample, params);
    const std::size_t begin = n_transient + 1;
    const std::size_t end =
        std::min(traj.values.size(), n_transient + n_sample + 1);
    std::vector<double> column;
    if (begin < end)
      column.assign(traj.values.begin() + static_cast<std::ptrdiff_t>(begin),
                    traj.values.begin() + static_cast<std::ptrdiff_t>(end));
    diagram.samples.push_back(std::move(column));
    diagram.truncated.push_back(traj.terminated_early ? 1 : 0);
  }
  return diagram;
}

double exponential_pdf(double x, const ExponentialModel& m) {
  if (x < 0.0) return 0.0;
  return m.rate * std::exp(-m.rate * x);
}

double exponential_mean(const ExponentialModel& m) { return 1.0 / m.rate; }

PaperLyapunovTable load_paper_lyapunov(std::istream& in) {
  PaperLyapunovTable table;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = strip(line);
    if (text.empty()) continue;
    if (!saw_header) {
      if (text != "iteration,lambda")
        throw ParseError("reference table: expected header 'iteration,lambda'",
                         lineno);
      saw_header = true;
      continue;
    }
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos)
      throw ParseError("reference table: missing comma", lineno);
    PaperLyapunovRow row;
    const std::string iter_text = strip(text.substr(0, comma));
    char* end = nullptr;
    const long it = std::strtol(iter_text.c_str(), &end, 10);
    if (iter_text.empty() || end != iter_text.c_str() + iter_text.size())
      throw ParseError("reference table: bad iteration field", lineno);
    row.iteration = static_cast<int>(it);
    row.raw = strip(text.substr(comma + 1));
    row.usable = parse_full_double(row.raw, &row.value);
    table.rows.push_back(std::move(row));
  }
  if (!saw_header)
    throw ParseError("reference table: missing header", lineno == 0 ? 1 : lineno);
  if (table.rows.empty()) throw EmptyTable("reference table: no data rows");
  return table;
}

PaperLyapunovTable load_paper_lyapunov_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open reference table: " + path);
  return load_paper_lyapunov(in);
}

}  // namespace zetadyn::chaos

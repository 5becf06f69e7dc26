// zetalab: deterministic batch front end for the iterated-map / zero-statistics
// library. One subcommand per analysis; CSV or JSON on stdout or --out;
// identical flags and inputs always produce identical bytes.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zetadyn/chaos.hpp"
#include "zetadyn/dynamics.hpp"
#include "zetadyn/errors.hpp"
#include "zetadyn/spectral.hpp"
#include "zetadyn/zeta_stats.hpp"

namespace {

namespace dynamics = zetadyn::dynamics;
namespace chaos = zetadyn::chaos;
namespace zetastats = zetadyn::zetastats;
namespace spectral = zetadyn::spectral;

/// Exit-1 problems the front end itself detects (flag combinations, ranges,
/// unwritable outputs). Library exceptions map to exits 2 and 3 instead.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

/// One value in a row or in the meta block: real, integer, boolean, text, or
/// empty. CSV renders empty cells as empty fields; JSON renders them as null.
struct Cell {
  enum class Kind { Real, Int, Bool, Text, Null };
  Kind kind = Kind::Null;
  double real = 0.0;
  long long int_value = 0;
  bool flag = false;
  std::string text;

  static Cell num(double v) {
    Cell c;
    c.kind = Kind::Real;
    c.real = v;
    return c;
  }
  static Cell count(std::uint64_t v) {
    Cell c;
    c.kind = Kind::Int;
    c.int_value = static_cast<long long>(v);
    return c;
  }
  static Cell boolean(bool v) {
    Cell c;
    c.kind = Kind::Bool;
    c.flag = v;
    return c;
  }
  static Cell str(std::string v) {
    Cell c;
    c.kind = Kind::Text;
    c.text = std::move(v);
    return c;
  }
  static Cell null() { return {}; }

  std::string csv() const {
    switch (kind) {
      case Kind::Real:
        return fmt(real);
      case Kind::Int:
        return std::to_string(int_value);
      case Kind::Bool:
        return flag ? "true" : "false";
      case Kind::Text:
        return text;
      case Kind::Null:
        return "";
    }
    return "";
  }
  std::string json() const {
    switch (kind) {
      case Kind::Real:
        return fmt(real);
      case Kind::Int:
        return std::to_string(int_value);
      case Kind::Bool:
        return flag ? "true" : "false";
      case Kind::Text:
        return '"' + json_escape(text) + '"';
      case Kind::Null:
        return "null";
    }
    return "null";
  }
};

/// Column-oriented result: a header, data rows, and a meta block that the
/// JSON format carries verbatim (CSV carries the rows only).
struct Document {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;

  void add_meta(const std::string& key, Cell value) {
    meta.emplace_back(key, std::move(value));
  }

  std::string render_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i].csv();
      }
      out += '\n';
    }
    return out;
  }

  std::string render_json() const {
    std::string out = "{\n  \"meta\": {";
    for (std::size_t i = 0; i < meta.size(); ++i) {
      if (i) out += ", ";
      out += '"' + json_escape(meta[i].first) + "\": " + meta[i].second.json();
    }
    out += "},\n";
    if (rows.empty()) {
      out += "  \"data\": []\n}\n";
      return out;
    }
    out += "  \"data\": [\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out += "    {";
      for (std::size_t i = 0; i < rows[r].size(); ++i) {
        if (i) out += ", ";
        out += '"' + json_escape(columns[i]) + "\": " + rows[r][i].json();
      }
      out += (r + 1 < rows.size()) ? "},\n" : "}\n";
    }
    out += "  ]\n}\n";
    return out;
  }
};

void emit(const Document& doc, const std::string& format,
          const std::string& out_path) {
  const std::string text =
      format == "json" ? doc.render_json() : doc.render_csv();
  if (out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(out_path);
  const fs::path tmp(out_path + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open output file " + tmp.string());
    f << text;
    f.flush();
    if (!f) throw UsageError("failed writing output file " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot move output into place at " + out_path + ": " +
                     ec.message());
  }
}

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// Translate a flat key=value config file into "--key[=value]" tokens and
/// splice them in right after the subcommand name, before the flags the user
/// typed. Every option takes the last occurrence, so explicit flags win.
std::vector<std::string> merge_config_tokens(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config requires a path");
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;

  std::ifstream f(config_path);
  if (!f) throw UsageError("cannot read config file " + config_path);
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw UsageError("config file " + config_path + " line " +
                       std::to_string(lineno) + ": expected key=value");
    const std::string key = strip(s.substr(0, eq));
    const std::string val = strip(s.substr(eq + 1));
    if (key.empty())
      throw UsageError("config file " + config_path + " line " +
                       std::to_string(lineno) + ": empty key");
    if (key == "config")
      throw UsageError("config files cannot chain another config file");
    extra.push_back(val.empty() ? "--" + key : "--" + key + "=" + val);
  }

  std::size_t pos = 0;
  while (pos < args.size() && args[pos].rfind('-', 0) == 0) ++pos;
  if (pos < args.size()) ++pos;  // step past the subcommand name
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), extra.begin(),
              extra.end());
  return args;
}

void require_finite(double v, const char* flag) {
  if (!std::isfinite(v))
    throw UsageError(std::string(flag) + " must be a finite number");
}

/// One finite value per line; '#' comments and blank lines skipped.
std::vector<double> load_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw zetadyn::InputError("cannot open value file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
      throw zetadyn::ParseError("value file " + path + ": not a finite number",
                                lineno);
    values.push_back(v);
  }
  return values;
}

zetastats::Convention parse_convention(const std::string& name) {
  return name == "standard" ? zetastats::Convention::Standard
                            : zetastats::Convention::Paper;
}

/// All flag storage in one place; only the parsed subcommand's fields are
/// meaningful.
struct Options {
  std::string format = "csv";
  std::string out;
  std::string config;

  double x0 = 0.0;
  std::uint64_t steps = 0;
  double eps = 1.0;
  std::string compare_paper;
  std::string paper_tables = "paper_tables";

  double eps_from = 0.0;
  double eps_to = 0.0;
  std::uint64_t eps_steps = 0;
  std::uint64_t transient = 0;
  std::uint64_t sample = 0;

  bool from_trajectory = false;
  std::uint64_t bins = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t uniform_bins = 0;

  std::string zeros;
  double max_u = 0.0;
  std::string convention = "paper";

  double e_from = 0.0;
  double e_to = 0.0;
  std::uint64_t points = 0;

  std::string a_path;
  std::string b_path;
  bool case3 = false;

  std::uint64_t n = 0;
  double h = 0.0;
  bool symmetrized = false;
  bool unfold = false;
};

Document run_iterate(const Options& o) {
  require_finite(o.x0, "--x0");
  require_finite(o.eps, "--eps");
  dynamics::MapParams params;
  params.eps = o.eps;
  const dynamics::Trajectory traj = dynamics::iterate(o.x0, o.steps, params);

  Document doc;
  doc.columns = {"n", "x"};
  bool negative = false;
  for (std::size_t i = 0; i < traj.values.size(); ++i) {
    if (traj.values[i] < 0.0) negative = true;
    doc.rows.push_back({Cell::count(i), Cell::num(traj.values[i])});
  }
  doc.add_meta("command", Cell::str("iterate"));
  doc.add_meta("format", Cell::str(o.format));
  doc.add_meta("x0", Cell::num(o.x0));
  doc.add_meta("steps", Cell::count(o.steps));
  doc.add_meta("eps", Cell::num(o.eps));
  doc.add_meta("terminated_early", Cell::boolean(traj.terminated_early));
  doc.add_meta("failure_index", traj.terminated_early
                                    ? Cell::count(traj.failure_index)
                                    : Cell::null());
  doc.add_meta("failure_reason", traj.terminated_early
                                     ? Cell::str(traj.failure_reason)
                                     : Cell::null());
  doc.add_meta("negative_values", Cell::boolean(negative));
  if (traj.terminated_early)
    std::cerr << "note: trajectory terminated early at index "
              << traj.failure_index << " (" << traj.failure_reason << ")\n";
  if (negative) std::cerr << "note: trajectory contains negative values\n";
  return doc;
}

Document run_lyapunov(const Options& o) {
  require_finite(o.x0, "--x0");
  require_finite(o.eps, "--eps");
  dynamics::MapParams params;
  params.eps = o.eps;
  const chaos::LyapunovSeries series =
      chaos::lyapunov_exponents(o.x0, o.steps, params);

  Document doc;
  const bool compare = !o.compare_paper.empty();
  chaos::PaperLyapunovTable table;
  if (compare)
    table = chaos::load_paper_lyapunov_file(o.paper_tables + "/lyapunov_" +
                                            o.compare_paper + ".csv");

  doc.columns = compare ? std::vector<std::string>{"iteration", "lambda",
                                                   "paper_lambda",
                                                   "paper_usable"}
                        : std::vector<std::string>{"iteration", "lambda"};
  for (std::size_t k = 0; k < series.lambdas.size(); ++k) {
    std::vector<Cell> row{Cell::count(k + 1), Cell::num(series.lambdas[k])};
    if (compare) {
      if (k < table.rows.size()) {
        row.push_back(Cell::str(table.rows[k].raw));
        row.push_back(Cell::count(table.rows[k].usable ? 1 : 0));
      } else {
        row.push_back(Cell::null());
        row.push_back(Cell::null());
      }
    }
    doc.rows.push_back(std::move(row));
  }
  doc.add_meta("command", Cell::str("lyapunov"));
  doc.add_meta("format", Cell::str(o.format));
  doc.add_meta("x0", Cell::num(o.x0));
  doc.add_meta("steps", Cell::count(o.steps));
  doc.add_meta("eps", Cell::num(o.eps));
  doc.add_meta("compare_paper",
               compare ? Cell::str(o.compare_paper) : Cell::null());
  if (compare) doc.add_meta("paper_rows", Cell::count(table.rows.size()));
  doc.add_meta("truncated", Cell::boolean(series.truncated));
  if (series.truncated)
    std::cerr << "note: orbit ended early; the series covers "
              << series.lambdas.size() << " of " << o.steps << " values\n";
  return doc;
}

Document run_bifurcate(const Options& o) {
  require_finite(o.x0, "--x0");
  require_finite(o.eps_from, "--eps-from");
  require_finite(o.eps_to, "--eps-to");
  if (o.eps_steps == 0) throw UsageError("--eps-steps must be at least 1");
  if (o.eps_steps > 1 && !(o.eps_from < o.eps_to))
    throw UsageError("--eps-from must be below --eps-to");

  const chaos::BifurcationDiagram diagram = chaos::bifurcation_scan(
      o.x0, o.eps_from, o.eps_to, o.eps_steps, o.transient, o.sample);

  Document doc;
  doc.columns = {"eps", "x"};
  std::uint64_t truncated_columns = 0;
  for (std::size_t e = 0; e < diagram.eps_values.size(); ++e) {
    if (diagram.truncated[e]) ++truncated_columns;
    for (const double v : diagram.samples[e])
      doc.rows.push_back({Cell::num(diagram.eps_values[e]), Cell::num(v)});
  }
  doc.add_meta("command", Cell::str("bifurcate"));
  doc.add_meta("format", Cell::str(o.format));
  doc.add_meta("x0", Cell::num(o.x0));
  doc.add_meta("eps_from", Cell::num(o.eps_from));
  doc.add_meta("eps_to", Cell::num(o.eps_to));
  doc.add_meta("eps_steps", Cell::count(o.eps_steps));
  doc.add_meta("transient", Cell::count(o.transient));
  doc.add_meta("sample", Cell::count(o.sample));
  doc.add_meta("truncated_columns", Cell::count(truncated_columns));
  if (truncated_columns > 0)
    std::cerr << "note: " << truncated_columns
              << " eps column(s) ended early\n";
  return doc;
}

Document run_entropy(const Options& o, bool uniform_mode) {
  Document doc;
  doc.columns = {"entropy"};
  doc.add_meta("command", Cell::str("entropy"));
  doc.add_meta("format", Cell::str(o.format));
  if (uniform_mode) {
    if (o.uniform_bins == 0)
      throw UsageError("--uniform-bins must be at least 1");
    chaos::Histogram h;
    const std::size_t bins = o.uniform_bins;
    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
      h.edges[i] = static_cast<double>(i) / static_cast<double>(bins);
    h.counts.assign(bins, 1);
    h.total = bins;
    const double entropy = chaos::shannon_entropy(h);
    doc.rows.push_back({Cell::num(entropy)});
    doc.add_meta("mode", Cell::str("uniform"));
    doc.add_meta("uniform_bins", Cell::count(o.uniform_bins));
    return doc;
  }

  require_finite(o.x0, "--x0");
  require_finite(o.lo, "--lo");
  require_finite(o.hi, "--hi");
  if (o.bins == 0) throw UsageError("--bins must be at least 1");
  if (!(o.lo < o.hi)) throw UsageError("--lo must be below --hi");
  const dynamics::Trajectory traj = dynamics::iterate(o.x0, o.steps, {});
  const chaos::Histogram h =
      chaos::build_histogram(traj.values, o.bins, o.lo, o.hi);
  const double entropy = chaos::shannon_entropy(h);
  doc.rows.push_back({Cell::num(entropy)});
  doc.add_meta("mode", Cell::str("trajectory"));
  doc.add_meta("x0", Cell::num(o.x0));
  doc.add_meta("steps", Cell::count(o.steps));
  doc.add_meta("bins", Cell::count(o.bins));
  doc.add_meta("lo", Cell::num(o.lo));
  doc.add_meta("hi", Cell::num(o.hi));
  doc.add_meta("total", Cell::count(h.total));
  doc.add_meta("dropped", Cell::count(h.dropped));
  doc.add_meta("terminated_early", Cell::boolean(traj.terminated_early));
  return doc;
}

Document run_paircorr(const Options& o) {
  require_finite(o.max_u, "--max-u");
  if (!(o.max_u > 0.0)) throw UsageError("--max-u must be positive");
  if (o.bins == 0) throw UsageError("--bins must be at least 1");
  const zetastats::ZeroTable table = zetastats::load_zeros_file(o.zeros);
  const zetastats::PairCorrelation pc = zetastats::pair_correlation_empirical(
      table, o.max_u, o.bins, parse_convention(o.convention));

  Document doc;
  doc.columns = {"bin_center", "empirical", "model"};
  for (std::size_t b = 0; b < pc.bin_centers.size(); ++b)
    doc.rows.push_back({Cell::num(pc.bin_centers[b]), Cell::num(pc.empirical[b]),
                        Cell::num(pc.model[b])});
  doc.add_meta("command", Cell::str("paircorr"));
  doc.add_meta("format", Cell::str(o.format));
  doc.add_meta("zeros", Cell::str(o.zeros));
  doc.add_meta("max_u", Cell::num(o.max_u));
  doc.add_meta("bins", Cell::count(o.bins));
  doc.add_meta("convention", Cell::str(o.convention));
  doc.add_meta("zero_count", Cell::count(pc.zero_count));
  doc.add_meta("pair_count", Cell::count(pc.pair_count));
  doc.add_meta("bin_width", Cell::num(pc.bin_width));
  return doc;
}

Document run_spacings(const Options& o) {
  const zetastats::ZeroTable table = zetastats::load_zeros_file(o.zeros);
  const zetastats::SpacingEnsemble ens =
      zetastats::normalized_spacings(table, parse_convention(o.convention));

  Document doc;
  doc.columns = {"n", "u"};
  double sum = 0.0;
  for (std::size_t k = 0; k < ens.spacings.size(); ++k) {
    sum += ens.spacings[k];
    doc.rows.push_back({Cell::count(k + 1), Cell::num(ens.spacings[k])});
  }
  doc.add_meta("command", Cell::str("spacings"));
  doc.add_meta("format", Cell::str(o.format));
  doc.add_meta("zeros", Cell::str(o.zeros));
  doc.add_meta("convention", Cell::str(o.convention));
  doc.add_meta("count", Cell::count(ens.spacings.size()));
  doc.add_meta("mean", Cell::num(sum / static_cast<double>(ens.spacings.size())));
  return doc;
}

Document run_density(const Options& o) {
  require_finite(o.e_from, "--e-from");
  require_finite(o.e_to, "--e-to");
  if (o.points == 0) throw UsageError("--points must be at least 1");
  if (!(o.e_to >= o.e_from)) throw UsageError("--e-to must be >= --e-from");

  Document doc;
  doc.columns = {"E", "rho"};
  for (std::uint64_t i = 0; i < o.points; ++i) {
    const double e =
        o.points == 1
            ? o.e_from
            : o.e_from + (o.e_to - o.e_from) * static_cast<double>(i) /
                             static_cast<double>(o.points - 1);
    doc.rows.push_back({Cell::num(e), Cell::num(zetastats::zero_density(e))});
  }
  doc.add_meta("command", Cell::str("density"));
  doc.add_meta("format", Cell::str(o.format));
  doc.add_meta("e_from", Cell::num(o.e_from));
  doc.add_meta("e_to", Cell::num(o.e_to));
  doc.add_meta("points", Cell::count(o.points));
  return doc;
}

Document run_errtable(const Options& o, bool have_files) {
  std::vector<double> a;
  std::vector<double> b;
  Document doc;
  doc.add_meta("command", Cell::str("errtable"));
  doc.add_meta("format", Cell::str(o.format));
  if (o.case3) {
    if (o.steps == 0) throw UsageError("--case3 requires --steps >= 1");
    const double x0 = 5e-13;
    const dynamics::Trajectory traj = dynamics::iterate(x0, o.steps, {});
    const std::size_t pairs =
        traj.values.size() >= 2 ? traj.values.size() - 1 : 0;
    a.assign(traj.values.begin(),
             traj.values.begin() + static_cast<std::ptrdiff_t>(pairs));
    b.assign(traj.values.begin() + 1, traj.values.end());
    doc.add_meta("mode", Cell::str("case3"));
    doc.add_meta("x0", Cell::num(x0));
    doc.add_meta("steps", Cell::count(o.steps));
    if (traj.terminated_early)
      std::cerr << "note: trajectory terminated early at index "
                << traj.failure_index << "\n";
  } else {
    if (!have_files)
      throw UsageError("errtable needs either --a and --b, or --case3");
    a = load_values(o.a_path);
    b = load_values(o.b_path);
    doc.add_meta("mode", Cell::str("files"));
    doc.add_meta("a", Cell::str(o.a_path));
    doc.add_meta("b", Cell::str(o.b_path));
  }
  const zetastats::ErrorTable table = zetastats::error_table(a, b);
  doc.columns = {"n", "a", "b", "signed_error", "abs_error"};
  for (const zetastats::ErrorRow& row : table.rows)
    doc.rows.push_back({Cell::count(row.index), Cell::num(row.a),
                        Cell::num(row.b), Cell::num(row.signed_error),
                        Cell::num(row.abs_error)});
  doc.add_meta("rows", Cell::count(table.rows.size()));
  doc.add_meta("max_abs_error", Cell::num(table.max_abs_error));
  return doc;
}

Document run_spectrum(const Options& o) {
  require_finite(o.h, "--h");
  if (o.n < 2) throw UsageError("--n must be at least 2");
  if (o.unfold && o.n < 3) throw UsageError("--unfold needs --n >= 3");

  const spectral::DiscretizedOperator op =
      spectral::build_operator(o.n, o.h, o.symmetrized);
  const spectral::Spectrum spec = spectral::eigenvalues(op);

  Document doc;
  doc.add_meta("command", Cell::str("spectrum"));
  doc.add_meta("format", Cell::str(o.format));
  doc.add_meta("n", Cell::count(o.n));
  doc.add_meta("h", Cell::num(op.h));
  doc.add_meta("symmetrized", Cell::boolean(o.symmetrized));
  doc.add_meta("unfold", Cell::boolean(o.unfold));
  if (!o.unfold) {
    doc.columns = {"index", "eigenvalue"};
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
      doc.rows.push_back({Cell::count(k + 1), Cell::num(spec.eigenvalues[k])});
    return doc;
  }
  const spectral::SpacingStats stats = spectral::unfold_spectrum(spec);
  const chaos::Histogram& h = stats.spacing_hist;
  doc.columns = {"bin_center", "density", "gue_model"};
  const double width = h.edges[1] - h.edges[0];
  const double total = static_cast<double>(h.total);
  for (std::size_t bin = 0; bin < h.counts.size(); ++bin) {
    const double center = 0.5 * (h.edges[bin] + h.edges[bin + 1]);
    const double density = static_cast<double>(h.counts[bin]) / (total * width);
    doc.rows.push_back({Cell::num(center), Cell::num(density),
                        Cell::num(spectral::wigner_surmise_gue(center))});
  }
  doc.add_meta("mean_spacing", Cell::num(stats.mean_spacing));
  doc.add_meta("gaps", Cell::count(h.total));
  doc.add_meta("dropped", Cell::count(h.dropped));
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  try {
    std::vector<std::string> tokens = merge_config_tokens(argc, argv);

    CLI::App app{
        "zetalab: deterministic batch analyses of the Montgomery-kernel "
        "iterated map, its Lyapunov/entropy diagnostics, zeta-zero spacing "
        "statistics, and the tridiagonal operator spectrum"};
    app.require_subcommand(1);
    // --h is a real option of the spectrum subcommand, so help is long-form
    // only, everywhere.
    app.set_help_flag("--help", "print help and exit");
    Options o;

    const auto last = [](CLI::Option* opt) {
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      return opt;
    };
    const auto add_common = [&](CLI::App* sub) {
      sub->set_help_flag("--help", "print help and exit");
      last(sub->add_option("--format", o.format, "output format (csv|json)")
               ->check(CLI::IsMember({"csv", "json"})));
      last(sub->add_option(
          "--out", o.out, "write the output atomically to this path"));
      last(sub->add_option(
          "--config", o.config,
          "flat key=value file expanded to flags (explicit flags win)"));
    };
    const auto add_convention = [&](CLI::App* sub) {
      last(sub->add_option("--convention", o.convention,
                           "spacing normalization (paper|standard)")
               ->check(CLI::IsMember({"paper", "standard"})));
    };

    CLI::App* cmd_iterate =
        app.add_subcommand("iterate", "iterate the map and emit the trajectory");
    last(cmd_iterate->add_option("--x0", o.x0, "initial value")->required());
    last(cmd_iterate->add_option("--steps", o.steps, "number of steps")
             ->required());
    last(cmd_iterate->add_option("--eps", o.eps,
                                 "weight of the 1/x correction (default 1)"));
    add_common(cmd_iterate);

    CLI::App* cmd_lyapunov = app.add_subcommand(
        "lyapunov", "running Lyapunov-exponent estimates along an orbit");
    last(cmd_lyapunov->add_option("--x0", o.x0, "initial value")->required());
    last(cmd_lyapunov->add_option("--steps", o.steps, "series length")
             ->required());
    last(cmd_lyapunov->add_option("--eps", o.eps,
                                  "weight of the 1/x correction (default 1)"));
    last(cmd_lyapunov->add_option(
             "--compare-paper", o.compare_paper,
             "append the bundled reference series (case1|case2)")
             ->check(CLI::IsMember({"case1", "case2"})));
    last(cmd_lyapunov->add_option("--paper-tables", o.paper_tables,
                                  "directory holding the reference tables"));
    add_common(cmd_lyapunov);

    CLI::App* cmd_bifurcate = app.add_subcommand(
        "bifurcate", "post-transient orbit samples over an eps grid");
    last(cmd_bifurcate->add_option("--x0", o.x0, "initial value")->required());
    last(cmd_bifurcate->add_option("--eps-from", o.eps_from, "grid start")
             ->required());
    last(cmd_bifurcate->add_option("--eps-to", o.eps_to, "grid end")
             ->required());
    last(cmd_bifurcate->add_option("--eps-steps", o.eps_steps, "grid size")
             ->required());
    last(cmd_bifurcate->add_option("--transient", o.transient,
                                   "steps to discard")
             ->required());
    last(cmd_bifurcate->add_option("--sample", o.sample, "steps to record")
             ->required());
    add_common(cmd_bifurcate);

    CLI::App* cmd_entropy = app.add_subcommand(
        "entropy", "Shannon entropy of a trajectory histogram");
    CLI::Option* opt_fromtraj = cmd_entropy->add_flag(
        "--from-trajectory", o.from_trajectory,
        "histogram an orbit of the map");
    last(opt_fromtraj);
    last(cmd_entropy->add_option("--x0", o.x0, "initial value"));
    last(cmd_entropy->add_option("--steps", o.steps, "number of steps"));
    last(cmd_entropy->add_option("--bins", o.bins, "histogram bins"));
    last(cmd_entropy->add_option("--lo", o.lo, "histogram lower edge"));
    last(cmd_entropy->add_option("--hi", o.hi, "histogram upper edge"));
    CLI::Option* opt_uniform = last(cmd_entropy->add_option(
        "--uniform-bins", o.uniform_bins,
        "self-test: entropy of a uniform histogram with this many bins"));
    add_common(cmd_entropy);

    CLI::App* cmd_paircorr = app.add_subcommand(
        "paircorr", "empirical pair correlation of a zero table vs the kernel");
    last(cmd_paircorr->add_option("--zeros", o.zeros, "zero-ordinate file")
             ->required());
    last(cmd_paircorr->add_option("--max-u", o.max_u, "upper spacing limit")
             ->required());
    last(cmd_paircorr->add_option("--bins", o.bins, "histogram bins")
             ->required());
    add_convention(cmd_paircorr);
    add_common(cmd_paircorr);

    CLI::App* cmd_spacings = app.add_subcommand(
        "spacings", "normalized consecutive spacings of a zero table");
    last(cmd_spacings->add_option("--zeros", o.zeros, "zero-ordinate file")
             ->required());
    add_convention(cmd_spacings);
    add_common(cmd_spacings);

    CLI::App* cmd_density = app.add_subcommand(
        "density", "zero-density law ln(E)/(2 pi) on a uniform grid");
    last(cmd_density->add_option("--e-from", o.e_from, "grid start")
             ->required());
    last(cmd_density->add_option("--e-to", o.e_to, "grid end")->required());
    last(cmd_density->add_option("--points", o.points, "grid size")
             ->required());
    add_common(cmd_density);

    CLI::App* cmd_errtable = app.add_subcommand(
        "errtable", "signed and absolute differences of two value sequences");
    CLI::Option* opt_a =
        last(cmd_errtable->add_option("--a", o.a_path, "first value file"));
    CLI::Option* opt_b =
        last(cmd_errtable->add_option("--b", o.b_path, "second value file"));
    CLI::Option* opt_case3 = last(cmd_errtable->add_flag(
        "--case3", o.case3,
        "compare consecutive iterates of the orbit started at 5e-13"));
    last(cmd_errtable->add_option(
        "--steps", o.steps, "number of steps for --case3"));
    opt_case3->excludes(opt_a);
    opt_case3->excludes(opt_b);
    opt_a->needs(opt_b);
    opt_b->needs(opt_a);
    add_common(cmd_errtable);

    CLI::App* cmd_spectrum = app.add_subcommand(
        "spectrum", "eigenvalues (or unfolded spacings) of the discretized "
                    "operator");
    cmd_spectrum->set_help_flag("--help", "print help and exit");
    last(cmd_spectrum->add_option("--n", o.n, "matrix dimension")->required());
    last(cmd_spectrum->add_option("--h", o.h,
                                  "grid step (default 1/n when omitted)"));
    last(cmd_spectrum->add_flag("--symmetrized", o.symmetrized,
                                "mirror the superdiagonal (beyond the printed "
                                "construction)"));
    last(cmd_spectrum->add_flag("--unfold", o.unfold,
                                "emit the unfolded spacing histogram"));
    add_common(cmd_spectrum);

    try {
      std::reverse(tokens.begin(), tokens.end());
      app.parse(tokens);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 1;
    }

    Document doc;
    if (cmd_iterate->parsed()) {
      doc = run_iterate(o);
    } else if (cmd_lyapunov->parsed()) {
      doc = run_lyapunov(o);
    } else if (cmd_bifurcate->parsed()) {
      doc = run_bifurcate(o);
    } else if (cmd_entropy->parsed()) {
      const bool uniform_mode = opt_uniform->count() > 0;
      if (uniform_mode && o.from_trajectory)
        throw UsageError(
            "entropy takes either --uniform-bins or --from-trajectory, not "
            "both");
      if (!uniform_mode && !o.from_trajectory)
        throw UsageError(
            "entropy needs --uniform-bins B, or --from-trajectory with --x0 "
            "--steps --bins --lo --hi");
      doc = run_entropy(o, uniform_mode);
    } else if (cmd_paircorr->parsed()) {
      doc = run_paircorr(o);
    } else if (cmd_spacings->parsed()) {
      doc = run_spacings(o);
    } else if (cmd_density->parsed()) {
      doc = run_density(o);
    } else if (cmd_errtable->parsed()) {
      doc = run_errtable(o, opt_a->count() > 0 && opt_b->count() > 0);
    } else if (cmd_spectrum->parsed()) {
      doc = run_spectrum(o);
    }
    emit(doc, o.format, o.out);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const zetadyn::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const zetadyn::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
}

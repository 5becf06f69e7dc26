#include "zetadyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace zetadyn::spectral {

DiscretizedOperator build_operator(std::size_t n, double h, bool symmetrized) {
  if (n < 2) throw DimensionError("build_operator: need n >= 2");
  if (std::isnan(h) || std::isinf(h))
    throw DimensionError("build_operator: grid step must be finite");

  DiscretizedOperator op;
  op.n = n;
  op.h = h > 0.0 ? h : 1.0 / static_cast<double>(n);
  op.symmetrized = symmetrized;
  op.diagonal.resize(n);
  const double pih = std::numbers::pi * op.h;
  const double pih2 = pih * pih;
  for (std::size_t j = 0; j < n; ++j) {
    const double jj = static_cast<double>(j + 1);
    op.diagonal[j] = -pih2 * jj * jj;
  }
  op.superdiagonal.assign(n - 1, 1.0);
  return op;
}

Spectrum eigenvalues(const DiscretizedOperator& op) {
  if (op.n < 2 || op.diagonal.size() != op.n ||
      op.superdiagonal.size() + 1 != op.n)
    throw DimensionError("eigenvalues: malformed operator");

  Spectrum spec;
  if (!op.symmetrized) {
    // Triangular matrix: the spectrum is the diagonal, copied bit-for-bit.
    spec.eigenvalues = op.diagonal;
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end());
    return spec;
  }

  const auto n = static_cast<Eigen::Index>(op.n);
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(op.diagonal.data(), n);
  Eigen::VectorXd sub =
      Eigen::Map<const Eigen::VectorXd>(op.superdiagonal.data(), n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eigenvalues: tridiagonal QR did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  spec.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end());
  return spec;
}

SpacingStats unfold_spectrum(const Spectrum& s) {
  const std::size_t m = s.eigenvalues.size();
  if (m < 3) throw EmptyInput("unfold_spectrum: need at least 3 eigenvalues");

  std::vector<double> E = s.eigenvalues;
  std::sort(E.begin(), E.end());

  std::size_t tiny = 0;
  for (std::size_t k = 0; k + 1 < m; ++k)
    if (E[k + 1] - E[k] < 1e-12) ++tiny;
  if (10 * tiny > m - 1)
    throw DegenerateSpectrum(
        "unfold_spectrum: more than 10% of the raw gaps are below 1e-12");

  const double lo = E.front();
  const double hi = E.back();
  if (!(hi > lo))
    throw DegenerateSpectrum("unfold_spectrum: spectrum has zero width");

  // Least-squares staircase: fit rank k against a degree-5 polynomial in the
  // eigenvalue, with the abscissa normalized to [-1, 1] to keep the
  // Vandermonde system well conditioned.
  constexpr int kDegree = 5;
  const auto rows = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd A(rows, kDegree + 1);
  Eigen::VectorXd b(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double t =
        (2.0 * E[static_cast<std::size_t>(k)] - (lo + hi)) / (hi - lo);
    double p = 1.0;
    for (int d = 0; d <= kDegree; ++d) {
      A(k, d) = p;
      p *= t;
    }
    b(k) = static_cast<double>(k + 1);
  }
  const Eigen::VectorXd coeff = A.colPivHouseholderQr().solve(b);

  std::vector<double> e(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double t = (2.0 * E[k] - (lo + hi)) / (hi - lo);
    double acc = 0.0;
    for (int d = kDegree; d >= 0; --d) acc = acc * t + coeff(d);
    e[k] = acc;
  }

  std::vector<double> gaps(m - 1);
  double gap_sum = 0.0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    gaps[k] = e[k + 1] - e[k];
    gap_sum += gaps[k];
  }
  const double mean_gap = gap_sum / static_cast<double>(m - 1);
  if (!(mean_gap > 0.0))
    throw DegenerateSpectrum("unfold_spectrum: non-positive mean gap");

  SpacingStats stats;
  stats.unfolded.resize(m);
  for (std::size_t k = 0; k < m; ++k) stats.unfolded[k] = e[k] / mean_gap;
  double rescaled_sum = 0.0;
  for (double& g : gaps) {
    g /= mean_gap;
    rescaled_sum += g;
  }
  stats.mean_spacing = rescaled_sum / static_cast<double>(m - 1);
  stats.spacing_hist = chaos::build_histogram(gaps, 40, 0.0, 4.0);
  return stats;
}

double wigner_surmise_gue(double s) {
  if (std::isnan(s) || s < 0.0)
    throw DomainError("wigner_surmise_gue: defined for s >= 0");
  if (std::isinf(s)) return 0.0;
  constexpr double pi = std::numbers::pi;
  return (32.0 / (pi * pi)) * s * s * std::exp(-4.0 * s * s / pi);
}

std::vector<double> diagnostic_weights(const DiscretizedOperator& op,
                                       const dynamics::LyapunovFunctionParams& p) {
  if (op.n == 0 || !(op.h > 0.0))
    throw DimensionError("diagnostic_weights: malformed operator");
  std::vector<double> psi(op.n);
  const double root_h = std::sqrt(op.h);
  for (std::size_t j = 0; j < op.n; ++j)
    psi[j] = root_h *
             dynamics::lyapunov_function_small(static_cast<double>(j + 1) * op.h, p);
  return psi;
}

}  // namespace zetadyn::spectral

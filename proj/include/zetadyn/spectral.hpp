#pragma once

#include <cstddef>
#include <vector>

#include "zetadyn/chaos.hpp"
#include "zetadyn/dynamics.hpp"
#include "zetadyn/errors.hpp"

namespace zetadyn::spectral {

/// Tridiagonal discretization T_h: (T psi)_j = psi_{j+1} - pi^2 h^2 j^2 psi_j.
/// The literal construction is upper triangular (unit superdiagonal only);
/// the symmetrized variant mirrors the superdiagonal onto the subdiagonal.
struct DiscretizedOperator {
  std::size_t n = 0;
  double h = 0.0;
  std::vector<double> diagonal;       ///< -pi^2 h^2 j^2, j = 1..n
  std::vector<double> superdiagonal;  ///< n-1 ones
  bool symmetrized = false;
};

/// Eigenvalues in ascending order.
struct Spectrum {
  std::vector<double> eigenvalues;
};

/// Unfolded levels with unit mean spacing plus their gap histogram.
struct SpacingStats {
  std::vector<double> unfolded;
  chaos::Histogram spacing_hist;  ///< gaps over [0, 4], 40 bins
  double mean_spacing = 0.0;      ///< arithmetic mean of unfolded gaps (== 1)
};

/// Build T_h. Pass h <= 0 to get the default grid step 1/n.
/// Throws DimensionError unless n >= 2 (and h is finite).
DiscretizedOperator build_operator(std::size_t n, double h,
                                   bool symmetrized = false);

/// Eigenvalues of the operator, ascending. The non-symmetrized operator is
/// triangular, so its eigenvalues are the diagonal entries, copied exactly;
/// the symmetrized variant is solved with a symmetric tridiagonal
/// eigensolver. Throws ConvergenceError if the solver fails.
Spectrum eigenvalues(const DiscretizedOperator& op);

/// Rank-based unfolding: fit a degree-5 polynomial staircase N(E) by least
/// squares to (E_k, k), set e_k = N(E_k), rescale the gaps to unit mean, and
/// histogram them over [0, 4] with 40 bins.
/// Throws EmptyInput for fewer than 3 eigenvalues, DegenerateSpectrum if more
/// than 10% of the raw gaps are below 1e-12.
SpacingStats unfold_spectrum(const Spectrum& s);

/// GUE Wigner surmise p(s) = (32/pi^2) s^2 exp(-4 s^2 / pi).
/// Throws DomainError for s < 0.
double wigner_surmise_gue(double s);

/// Diagnostic weight vector psi_j = sqrt(h) * V(j h), j = 1..n, where V is
/// the small-x Gaussian Lyapunov function. Affects neither the operator nor
/// its spectrum; provided as an optional normalization probe.
std::vector<double> diagnostic_weights(
    const DiscretizedOperator& op,
    const dynamics::LyapunovFunctionParams& p = {});

}  // namespace zetadyn::spectral

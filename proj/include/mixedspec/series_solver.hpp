#pragma once

#include <optional>
#include <vector>

#include "mixedspec/determinant_lab.hpp"
#include "mixedspec/mode_solver.hpp"
#include "mixedspec/model.hpp"
#include "mixedspec/spectral.hpp"

namespace mixedspec {

// A mode whose system is rank-deficient. It is skipped in the series when
// the data is orthogonal (all |phi_sk|, |psi_sk| below the orthogonality
// tolerance); homogeneous_sample spans one direction of the nullspace.
struct DegenerateModeRecord {
  int k = 0;
  bool data_orthogonal = false;
  int homogeneous_dim = 0;
  std::optional<ModeSolution> homogeneous_sample;
};

struct SeriesSolution {
  int K = 0;
  // modes[k-1] for k = 1..K; nullopt where a degenerate mode was skipped.
  std::vector<std::optional<ModeSolution>> modes;
  std::vector<DegenerateModeRecord> degenerate_modes;
  double tail_bound = 0.0;
};

// Smallest K whose weighted data tail sum_{k>K} k^{2n+gamma} sum_s
// (|phi_sk| + |psi_sk|) / M_fit drops below series_tol. Entries below the
// spectrum's noise floor count as zero so quadrature noise cannot inflate
// the k^{2n}-weighted tail. Throws CapExceeded when even the full stored
// range leaves a nonzero tail above the target.
int choose_truncation(const SpectralBoundary& spectrum, const Coefficients& coeffs,
                      const SmallDenominatorEstimate& est, double series_tol);

// End-to-end solve: validation, boundary spectrum up to k_cap, regime
// analysis (exact period scan or envelope fit), truncation choice,
// degenerate-mode scan, and the per-mode solves. Degenerate modes with
// orthogonal data are recorded and skipped; non-orthogonal data raises
// DegenerateUnsolvable listing the offending k.
SeriesSolution solve_dirichlet(const ProblemSpec& spec);

// Series value at (x, y); Kahan-compensated sum in ascending k. Exactly at
// y = 0 the hyperbolic-side expression is used.
double evaluate(const SeriesSolution& sol, const Coefficients& coeffs, double x, double y);

// Partial derivative d^{jx+jy} u / dx^{jx} dy^{jy}. Orders above 2n are
// rejected, as is total order exactly 2n on the interface y = 0 where the
// equation itself no longer constrains the one-sided limits to agree.
double evaluate_derivative(const SeriesSolution& sol, const Coefficients& coeffs,
                           double x, double y, int jx, int jy);

// Unit-normalized nullspace vector of the mode-k system (largest entry
// +1), packaged as a ModeSolution. Throws NotDegenerate if the system has
// full numerical rank at degeneracy_tol.
ModeSolution homogeneous_mode(int k, const Coefficients& coeffs, double degeneracy_tol);

}

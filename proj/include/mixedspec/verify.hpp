#pragma once

#include <cstdint>
#include <vector>

#include "mixedspec/model.hpp"
#include "mixedspec/mode_solver.hpp"
#include "mixedspec/series_solver.hpp"
#include "mixedspec/spectral.hpp"

namespace mixedspec {

// A single-mode problem built backwards from a known solution: random
// elliptic coefficients, the d-block solved from the interface rows, and
// the boundary data induced by the data rows. Round-tripping it through the
// solver must reproduce exact_mode.
struct ManufacturedCase {
  int k = 0;
  Coefficients coeffs;
  ModeSolution exact_mode;
  std::vector<double> phi_k;
  std::vector<double> psi_k;
};

ManufacturedCase manufactured_case(int k, const Coefficients& coeffs, std::uint64_t seed);

// Deterministic variant: elliptic holds the 2n scaled coefficients
// (c^_1, c_2, ...) directly. All zeros induces the zero mode.
ManufacturedCase manufactured_from_elliptic(int k, const Coefficients& coeffs,
                                            const std::vector<double>& elliptic);

// Finite-difference residual of the factored operator on both subdomains,
// run at grid_h and grid_h/2. A band of width (2n+5)*grid_h around the
// interface and along every edge is excluded from both passes, so the
// fitted orders compare the same region. They should sit near 2 for a
// solution smooth up to the boundary.
struct ResidualReport {
  double h = 0.0;
  double interior_max_residual_elliptic = 0.0;
  double interior_max_residual_hyperbolic = 0.0;
  double convergence_order = 0.0;  // fitted on the max over both subdomains
  double convergence_order_elliptic = 0.0;
  double convergence_order_hyperbolic = 0.0;
};

ResidualReport fd_residual(const SeriesSolution& sol, const Coefficients& coeffs,
                           double grid_h);

// Empirical constant for the a-priori mode-growth estimate: the largest
// |u_k^{(j)}(y)| * |delta_ratio(k)| / (k^j * sum_s(|phi_sk| + |psi_sk|))
// over k in [k_lo, k_hi], j in {0, 1, 2n-1} and a y-sample of both
// subdomains. Modes with vanishing data are skipped.
struct Theorem2Fit {
  double M = 0.0;
  int witness_k = 0;
  int witness_j = 0;
  double witness_y = 0.0;
};

Theorem2Fit theorem2_check(const Coefficients& coeffs, const SpectralBoundary& spectrum,
                           int k_lo, int k_hi);

// Max relative deviation between the matrix path and the closed-form n = 1
// path over k = 1..k_max with `trials` random data draws per k. Modes
// flagged degenerate by both paths are skipped.
double oracle_compare_n1(double a1, int k_max, int trials, std::uint64_t seed);

}

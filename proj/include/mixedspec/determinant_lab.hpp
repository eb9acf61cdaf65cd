#pragma once

#include <cstdint>
#include <vector>

#include "mixedspec/model.hpp"

namespace mixedspec {

struct DeterminantReport {
  int k = 0;
  double log_delta1 = 0.0;
  double delta_ratio = 0.0;
  double delta2_closed = 0.0;
  bool degenerate = false;
};

// prod_{j > s} (a_j^2 - a_s^2), the square-Vandermonde factor shared by the
// determinant split.
double vandermonde_sq(const Coefficients& coeffs);

// log of the dominant factor: pi k sum_s a_s + log prod_{j > s} (a_j^2 - a_s^2).
double log_delta1(int k, const Coefficients& coeffs);

// det(scaled mode matrix) / vandermonde_sq. Equals, up to a k-independent
// sign, the bounded remainder delta_2 + delta_k whose distance from zero
// controls solvability; it stays O(1) in k by construction.
double delta_ratio(int k, const Coefficients& coeffs);

// Interface angle for the sign pair (t_j, t_s) on coefficients (a_j, a_s):
// atan2(t_j a_j^2 + t_s a_s^2, a_j a_s (1 - t_j t_s)).
double alpha_angle(double a_j, double a_s, int t_j, int t_s);

// Closed form of the k-periodic part delta_2: the 2^{n-1} sign-vector
// expansion with a cosine for n mod 4 in {0, 3} and a sine otherwise. For
// exact regimes the trigonometric argument is reduced modulo the period in
// integer arithmetic, so the value is reliable for arbitrarily large k.
double delta2_closed_form(int k, const Coefficients& coeffs);

// Exact small-denominator analysis for Natural/Rational coefficients:
// delta_2 is periodic in k with period 2M, M the lcm of the denominators of
// all signed partial sums of the a_s. Scans one period for the minimum
// nonzero |delta_2| and the residues where it vanishes exactly.
struct RegimeAnalysis {
  Regime regime = Regime::Natural;
  std::int64_t lcm_denominator = 1;
  std::int64_t period = 2;
  double min_abs_delta2 = 0.0;
  std::vector<std::int64_t> zero_residues;  // k mod period with delta_2 = 0
};

RegimeAnalysis rational_min_delta2(const Coefficients& coeffs);

// Floating-regime envelope fit |delta_2(k)| >= M_fit / k^gamma_fit over
// k = 1..k_max (k_max >= 100). Exact zeros are excluded and listed;
// violations counts scanned modes below the fitted envelope (zero by
// construction). Throws AllZero when every scanned mode vanishes.
struct SmallDenominatorEstimate {
  double M_fit = 0.0;
  double gamma_fit = 0.0;
  int k_scanned = 0;
  int violations = 0;
  std::vector<int> zero_modes;
};

SmallDenominatorEstimate estimate_gamma(const Coefficients& coeffs, int k_max);

// Scans k = 1..K for |delta_ratio| below degeneracy_tol times the median
// magnitude, confirms each candidate against the smallest singular value of
// the assembled system, and reports the confirmed modes. degeneracy_tol = 0
// disables flagging.
std::vector<DeterminantReport> find_degenerate_modes(const Coefficients& coeffs, int K,
                                                     double degeneracy_tol);

}

#pragma once

#include <string>
#include <vector>

#include "mixedspec/model.hpp"

namespace mixedspec {

// Sine coefficients of the boundary data, phi_sk[s][k-1] for k = 1..K.
// noise_floor records the absolute resolution of the stored entries (the
// quadrature tolerance scaled by the largest sampled amplitude); consumers
// treat entries below it as zero when forming weighted tails.
struct SpectralBoundary {
  int K = 0;
  std::vector<std::vector<double>> phi_sk;
  std::vector<std::vector<double>> psi_sk;
  double noise_floor = 0.0;
};

// sqrt(2) * integral_0^1 f(x) sin(pi k x) dx by adaptive panel-doubled
// Gauss-Legendre; converged when successive levels agree to tol relative to
// max(1, max |f| sampled). Throws QuadratureError if doubling stalls.
double sine_coefficient(const BoundaryFn& f, int k, double tol);

SpectralBoundary boundary_spectrum(const BoundaryData& data, int n, int K, double tol);

struct SmoothnessFailure {
  std::string function_id;  // "phi0", "psi2", ...
  int order = 0;            // even derivative order that fails to vanish
  double endpoint = 0.0;    // 0 or 1
  double magnitude = 0.0;
};

struct SmoothnessReport {
  int order_checked = 0;
  std::vector<SmoothnessFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Endpoint compatibility: even derivatives of order 2m <= 2n + alpha must
// vanish at x = 0 and x = 1, where alpha = gamma_exponent rounded when it is
// a nonnegative integer and floor(gamma_exponent) + 1 otherwise. Derivatives
// are estimated by one-sided finite differences with Richardson
// extrapolation; the pass threshold is widened by the stencil's own noise
// indicator so roundoff in high orders cannot produce spurious failures.
SmoothnessReport smoothness_check(const BoundaryData& data, int n, double gamma_exponent);

// sqrt(sum_{k > K0} (k^weight_power * max_s(|phi_sk| + |psi_sk|))^2) over the
// stored range K0 < k <= K.
double parseval_tail(const SpectralBoundary& spectrum, int weight_power, int K0);

}

#include "mixedspec/series_solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mixedspec/errors.hpp"
#include "sinpi.hpp"

namespace mixedspec {

using detail::cos_pi;
using detail::ipow;
using detail::sin_pi;

namespace {

struct NullspaceInfo {
  int dim = 0;
  ModeSolution sample;
};

NullspaceInfo nullspace_info(int k, const Coefficients& c, double degeneracy_tol) {
  const std::vector<double> zeros(c.n, 0.0);
  const ModeSystem sys = assemble_mode_system(k, c, zeros, zeros);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);

  NullspaceInfo info;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) < degeneracy_tol * smax) ++info.dim;
  if (info.dim == 0)
    throw NotDegenerate("mode " + std::to_string(k) + " has full numerical rank");

  Eigen::VectorXd v = svd.matrixV().col(sys.dim - 1);
  int idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  v /= v(idx);

  ModeSolution& m = info.sample;
  m.k = k;
  m.c_hat = v.head(sys.dim / 2);
  m.d = v.tail(sys.dim / 2);
  m.smallest_singular = sv(sv.size() - 1);
  m.cond_estimate = smax / std::max(sv(sv.size() - 1), std::numeric_limits<double>::min());
  m.degenerate = true;
  return info;
}

double mode_data_max(const SpectralBoundary& sp, int k) {
  double m = 0.0;
  for (std::size_t s = 0; s < sp.phi_sk.size(); ++s)
    m = std::max({m, std::abs(sp.phi_sk[s][k - 1]), std::abs(sp.psi_sk[s][k - 1])});
  return m;
}

}

int choose_truncation(const SpectralBoundary& spectrum, const Coefficients& c,
                      const SmallDenominatorEstimate& est, double series_tol) {
  if (!(series_tol > 0))
    throw std::invalid_argument("choose_truncation needs a positive series tolerance");
  if (!(est.M_fit > 0))
    throw std::invalid_argument("choose_truncation needs a positive envelope constant");

  const int n = c.n;
  const int K = spectrum.K;
  std::vector<double> term(K + 2, 0.0);
  for (int k = 1; k <= K; ++k) {
    if (mode_data_max(spectrum, k) <= spectrum.noise_floor) continue;
    double sum = 0.0;
    for (int s = 0; s < n; ++s)
      sum += std::abs(spectrum.phi_sk[s][k - 1]) + std::abs(spectrum.psi_sk[s][k - 1]);
    term[k] = std::pow(static_cast<double>(k), 2 * n + est.gamma_fit) * sum / est.M_fit;
  }
  std::vector<double> tail(K + 2, 0.0);
  for (int k = K; k >= 1; --k) tail[k] = tail[k + 1] + term[k];

  for (int cut = 1; cut <= K; ++cut) {
    if (tail[cut + 1] < series_tol) {
      if (cut == K && term[K] > 0)
        throw CapExceeded("series truncation hit the stored spectrum cap K = " +
                          std::to_string(K) + " with undecayed data");
      return cut;
    }
  }
  throw CapExceeded("series truncation found no admissible cut below K = " +
                    std::to_string(K));
}

SeriesSolution solve_dirichlet(const ProblemSpec& spec) {
  const ValidationReport rep = validate_problem(spec);
  if (!rep.ok()) throw ValidationFailed(rep.violations);

  const Coefficients& c = spec.coefficients;
  const SpectralBoundary spectrum =
      boundary_spectrum(spec.boundary, c.n, spec.k_cap, spec.tolerances.quadrature);

  SmallDenominatorEstimate est;
  if (c.regime != Regime::Floating) {
    const RegimeAnalysis ra = rational_min_delta2(c);
    if (!(ra.min_abs_delta2 > 0))
      throw AllZero("delta_2 vanishes at every residue of its period");
    est.M_fit = ra.min_abs_delta2;
    est.gamma_fit = 0.0;
    est.k_scanned = static_cast<int>(ra.period);
  } else {
    est = estimate_gamma(c, std::max(100, 2 * spec.k_cap));
  }

  const int K = choose_truncation(spectrum, c, est, spec.tolerances.series);
  std::vector<bool> flagged(K + 1, false);
  for (const auto& d : find_degenerate_modes(c, K, spec.tolerances.degeneracy))
    flagged[d.k] = true;

  SeriesSolution sol;
  sol.K = K;
  sol.modes.assign(K, std::nullopt);
  const double orth_tol = std::max(spec.tolerances.quadrature, 1e-10);
  std::vector<int> offending;

  auto record_degenerate = [&](int k, double data_max) {
    DegenerateModeRecord rec;
    rec.k = k;
    rec.data_orthogonal = data_max <= orth_tol;
    try {
      NullspaceInfo info = nullspace_info(k, c, spec.tolerances.degeneracy);
      rec.homogeneous_dim = info.dim;
      rec.homogeneous_sample = std::move(info.sample);
    } catch (const NotDegenerate&) {
    }
    if (!rec.data_orthogonal) offending.push_back(k);
    sol.degenerate_modes.push_back(std::move(rec));
  };

  for (int k = 1; k <= K; ++k) {
    const double data_max = mode_data_max(spectrum, k);
    if (flagged[k]) {
      record_degenerate(k, data_max);
      continue;
    }
    std::vector<double> phi_k(c.n, 0.0), psi_k(c.n, 0.0);
    // Data below the quadrature resolution is indistinguishable from zero;
    // solving it would only inject noise modes into the series.
    if (data_max > spectrum.noise_floor) {
      for (int s = 0; s < c.n; ++s) {
        phi_k[s] = spectrum.phi_sk[s][k - 1];
        psi_k[s] = spectrum.psi_sk[s][k - 1];
      }
    }
    const ModeSystem sys = assemble_mode_system(k, c, phi_k, psi_k);
    try {
      ModeSolution m = solve_mode(sys, spec.tolerances.degeneracy);
      if (m.degenerate)
        record_degenerate(k, data_max);
      else
        sol.modes[k - 1] = std::move(m);
    } catch (const DegenerateUnsolvable&) {
      record_degenerate(k, data_max);
    }
  }

  if (!offending.empty())
    throw DegenerateUnsolvable(
        "boundary data is not orthogonal to numerically degenerate modes", offending);

  sol.tail_bound = parseval_tail(spectrum, 2 * c.n + 1, K);
  return sol;
}

double evaluate(const SeriesSolution& sol, const Coefficients& c, double x, double y) {
  return evaluate_derivative(sol, c, x, y, 0, 0);
}

double evaluate_derivative(const SeriesSolution& sol, const Coefficients& c, double x,
                           double y, int jx, int jy) {
  if (!(x >= 0.0 && x <= 1.0 && y >= -1.0 && y <= 1.0))
    throw std::invalid_argument("evaluate_derivative called outside the closed domain");
  if (jx < 0 || jy < 0 || jx + jy > 2 * c.n)
    throw std::invalid_argument("evaluate_derivative order exceeds 2n");
  if (jx + jy == 2 * c.n && y == 0.0)
    throw std::invalid_argument(
        "order-2n derivatives are one-sided at the interface; evaluate off y = 0");

  const double yy = y == 0.0 ? -0.0 : y;
  double acc = 0.0, comp = 0.0;
  for (int k = 1; k <= sol.K; ++k) {
    if (!sol.modes[k - 1]) continue;
    const double sx = sin_pi(k * x);
    const double cx = cos_pi(k * x);
    double osc;
    switch (jx % 4) {
      case 0: osc = sx; break;
      case 1: osc = cx; break;
      case 2: osc = -sx; break;
      default: osc = -cx; break;
    }
    const double term = std::numbers::sqrt2 * ipow(std::numbers::pi * k, jx) * osc *
                        mode_value(*sol.modes[k - 1], c, yy, jy);
    const double t = acc + term;
    comp += std::abs(acc) >= std::abs(term) ? (acc - t) + term : (term - t) + acc;
    acc = t;
  }
  return acc + comp;
}

ModeSolution homogeneous_mode(int k, const Coefficients& c, double degeneracy_tol) {
  if (k < 1) throw std::invalid_argument("homogeneous_mode needs k >= 1");
  return nullspace_info(k, c, degeneracy_tol).sample;
}

}

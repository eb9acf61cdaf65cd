#include "mixedspec/mode_solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "mixedspec/errors.hpp"
#include "phase.hpp"
#include "sinpi.hpp"

namespace mixedspec {

using detail::cos_pi;
using detail::ipow;
using detail::sin_pi;

namespace detail {

// Argument reduced mod 2 before rounding: exactly for rational
// coefficients, in long double otherwise. Plain double products lose the
// phase entirely by k ~ 1e15/a, and visibly before that; the mode matrix
// must stay trustworthy deep into the scans.
std::pair<double, double> trig_pi_ka(int k, const Coefficients& c, int s) {
  double red;
  if (c.exact) {
    red = ((*c.exact)[s] * Rational(k, 1)).floor_mod(2).value();
  } else {
    red = static_cast<double>(
        std::fmod(static_cast<long double>(k) * static_cast<long double>(c.a[s]), 2.0L));
  }
  return {cos_pi(red), sin_pi(red)};
}

}

namespace {

using detail::trig_pi_ka;

constexpr int kCosQuarter[4] = {1, 0, -1, 0};
constexpr int kSinQuarter[4] = {0, 1, 0, -1};

}

ModeSystem assemble_mode_system(int k, const Coefficients& c,
                                const std::vector<double>& phi_k,
                                const std::vector<double>& psi_k) {
  const int n = c.n;
  if (k < 1) throw std::invalid_argument("assemble_mode_system needs k >= 1");
  if (n < 1 || static_cast<int>(c.a.size()) != n)
    throw std::invalid_argument("assemble_mode_system: malformed coefficients");
  if (static_cast<int>(phi_k.size()) != n || static_cast<int>(psi_k.size()) != n)
    throw std::invalid_argument("assemble_mode_system: data size does not match n");

  ModeSystem sys;
  sys.k = k;
  sys.dim = 4 * n;
  sys.matrix = Eigen::MatrixXd::Zero(sys.dim, sys.dim);
  sys.rhs = Eigen::VectorXd::Zero(sys.dim);
  sys.scaling_log.resize(n);

  const double pk = std::numbers::pi * k;
  std::vector<double> E(n), cs(n), sn(n);
  for (int s = 0; s < n; ++s) {
    sys.scaling_log[s] = pk * c.a[s];
    E[s] = std::exp(-pk * c.a[s]);
    std::tie(cs[s], sn[s]) = trig_pi_ka(k, c, s);
  }

  for (int m = 0; m < n; ++m) {
    const double pk2m = ipow(pk, 2 * m);
    for (int s = 0; s < n; ++s) {
      const double a2m = ipow(c.a[s], 2 * m);
      sys.matrix(m, 2 * s) = a2m;
      sys.matrix(m, 2 * s + 1) = a2m * E[s];
      sys.matrix(n + m, 2 * n + 2 * s) = a2m * cs[s];
      sys.matrix(n + m, 2 * n + 2 * s + 1) = -a2m * sn[s];
    }
    sys.rhs(m) = phi_k[m] / pk2m;
    sys.rhs(n + m) = (m % 2 ? -1.0 : 1.0) * psi_k[m] / pk2m;
  }

  for (int t = 0; t < 2 * n; ++t) {
    const int ct = kCosQuarter[t % 4];
    const int st = kSinQuarter[t % 4];
    for (int s = 0; s < n; ++s) {
      const double at = ipow(c.a[s], t);
      sys.matrix(2 * n + t, 2 * s) = E[s] * at;
      sys.matrix(2 * n + t, 2 * s + 1) = (t % 2 ? -at : at);
      sys.matrix(2 * n + t, 2 * n + 2 * s) = -at * ct;
      sys.matrix(2 * n + t, 2 * n + 2 * s + 1) = -at * st;
    }
  }
  return sys;
}

ModeSolution solve_mode(const ModeSystem& sys, double degeneracy_tol) {
  if (!sys.matrix.allFinite() || !sys.rhs.allFinite())
    throw NumericalBreakdown("mode system contains non-finite entries at k = " +
                             std::to_string(sys.k));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);

  ModeSolution out;
  out.k = sys.k;
  out.smallest_singular = smin;
  out.cond_estimate = smax / std::max(smin, std::numeric_limits<double>::min());
  out.degenerate = smin < degeneracy_tol * smax;

  Eigen::VectorXd x;
  if (!out.degenerate) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
    x = lu.solve(sys.rhs);
    x += lu.solve((sys.rhs - sys.matrix * x).eval());
  } else {
    svd.setThreshold(degeneracy_tol);
    x = svd.solve(sys.rhs);
    const double resid = (sys.rhs - sys.matrix * x).norm();
    if (resid > std::max(degeneracy_tol, 1e-10) * (1.0 + sys.rhs.norm()))
      throw DegenerateUnsolvable("degenerate mode system with data outside its range",
                                 {sys.k});
  }
  if (!x.allFinite())
    throw NumericalBreakdown("mode solve produced non-finite coefficients at k = " +
                             std::to_string(sys.k));

  const int half = sys.dim / 2;
  out.c_hat = x.head(half);
  out.d = x.tail(half);
  return out;
}

double mode_value(const ModeSolution& sol, const Coefficients& c, double y, int j) {
  const int n = c.n;
  if (j < 0) throw std::invalid_argument("mode_value needs j >= 0");
  const double pk = std::numbers::pi * sol.k;

  if (!std::signbit(y)) {
    double acc = 0.0;
    for (int s = 0; s < n; ++s) {
      const double w = pk * c.a[s];
      const double wj = ipow(w, j);
      acc += wj * sol.c_hat(2 * s) * std::exp(w * (y - 1.0));
      acc += (j % 2 ? -wj : wj) * sol.c_hat(2 * s + 1) * std::exp(-w * y);
    }
    return acc;
  }

  double acc = 0.0;
  for (int s = 0; s < n; ++s) {
    const double w = pk * c.a[s];
    const double co = std::cos(w * y);
    const double si = std::sin(w * y);
    double cj, sj;
    switch (j % 4) {
      case 0: cj = co; sj = si; break;
      case 1: cj = -si; sj = co; break;
      case 2: cj = -co; sj = -si; break;
      default: cj = si; sj = -co; break;
    }
    acc += ipow(w, j) * (sol.d(2 * s) * cj + sol.d(2 * s + 1) * sj);
  }
  return acc;
}

ModeSolution closed_form_n1(int k, double a1, double phi_k, double psi_k,
                            double degeneracy_tol) {
  if (k < 1 || !(a1 > 0)) throw std::invalid_argument("closed_form_n1 needs k >= 1, a1 > 0");

  const double pk = std::numbers::pi * k;
  const double E = std::exp(-pk * a1);
  const double red = static_cast<double>(
      std::fmod(static_cast<long double>(k) * static_cast<long double>(a1), 2.0L));
  const double C = cos_pi(red);
  const double S = sin_pi(red);

  // Eliminating (d1, d2) = (c^1 E + c2, c^1 E - c2) from the matching rows
  // leaves [[1, E], [E(C-S), C+S]] (c^1, c2)^T = (phi_k, psi_k)^T.
  const double det2 = (C + S) - E * E * (C - S);
  const double fro2 = 1.0 + E * E + E * E * (C - S) * (C - S) + (C + S) * (C + S);
  const double D = std::abs(det2);
  const double smax = std::sqrt((fro2 + std::sqrt(std::max(0.0, fro2 * fro2 - 4 * D * D))) / 2);
  const double smin = smax > 0 ? D / smax : 0.0;

  ModeSolution out;
  out.k = k;
  out.smallest_singular = smin;
  out.cond_estimate = smax / std::max(smin, std::numeric_limits<double>::min());
  out.degenerate = smin < degeneracy_tol * smax;
  if (out.degenerate)
    throw DegenerateUnsolvable("closed-form n=1 mode system is degenerate", {k});

  const double chat1 = (phi_k * (C + S) - psi_k * E) / det2;
  const double c2 = (psi_k - phi_k * E * (C - S)) / det2;
  out.c_hat = Eigen::VectorXd(2);
  out.c_hat << chat1, c2;
  out.d = Eigen::VectorXd(2);
  out.d << chat1 * E + c2, chat1 * E - c2;
  return out;
}

double matching_residual(const ModeSolution& sol, const Coefficients& c) {
  double scale = 0.0;
  if (sol.c_hat.size() > 0) scale = std::max(scale, sol.c_hat.cwiseAbs().maxCoeff());
  if (sol.d.size() > 0) scale = std::max(scale, sol.d.cwiseAbs().maxCoeff());
  // The t-th derivative difference carries an intrinsic (pi k a_n)^t growth;
  // each order is compared against its own scale so the residual measures
  // interface mismatch, not frequency.
  const double growth = std::max(1.0, std::numbers::pi * sol.k * c.a.back());
  double worst = 0.0;
  double denom = 1.0;
  for (int t = 0; t < 2 * c.n; ++t) {
    const double diff =
        std::abs(mode_value(sol, c, 0.0, t) - mode_value(sol, c, -0.0, t));
    worst = std::max(worst, diff / denom);
    denom *= growth;
  }
  return worst / (1.0 + scale);
}

}

#include "mixedspec/determinant_lab.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "mixedspec/errors.hpp"
#include "mixedspec/mode_solver.hpp"
#include "sinpi.hpp"

namespace mixedspec {

using detail::cos_pi;
using detail::sin_pi;

namespace {

// One sign vector t (t_1 = +1 fixed) with everything k-independent
// precomputed: the difference product, the accumulated interface angles,
// and the signed coefficient sum driving the k-linear phase.
struct SignTerm {
  int positives = 0;
  double poly = 1.0;
  double alpha_sum = 0.0;
  int sum_t = 0;
  double sum_signed_a = 0.0;
  std::optional<Rational> sum_signed_exact;
};

std::vector<SignTerm> sign_terms(const Coefficients& c) {
  const int n = c.n;
  std::vector<SignTerm> out;
  out.reserve(std::size_t{1} << (n - 1));
  std::vector<int> t(n, 1);
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    for (int j = 1; j < n; ++j) t[j] = (mask >> (j - 1)) & 1u ? -1 : 1;
    SignTerm st;
    if (c.exact) st.sum_signed_exact = Rational(0, 1);
    for (int j = 0; j < n; ++j) {
      if (t[j] > 0) ++st.positives;
      st.sum_t += t[j];
      st.sum_signed_a += t[j] * c.a[j];
      if (c.exact) {
        const Rational term = t[j] > 0 ? (*c.exact)[j] : -(*c.exact)[j];
        st.sum_signed_exact = *st.sum_signed_exact + term;
      }
      for (int s = 0; s < j; ++s) {
        st.poly *= t[j] * c.a[j] - t[s] * c.a[s];
        st.alpha_sum += alpha_angle(c.a[j], c.a[s], t[j], t[s]);
      }
    }
    out.push_back(std::move(st));
  }
  return out;
}

double term_value(const SignTerm& st, int k, bool use_cos) {
  // Phase pi*(k*sum_j t_j a_j + sum_t/4) reduced mod 2 before any rounding;
  // the residual alpha_sum is O(n^2) and added afterwards.
  double red;
  if (st.sum_signed_exact) {
    const Rational r = (*st.sum_signed_exact * Rational(k, 1) + Rational(st.sum_t, 4))
                           .floor_mod(2);
    red = r.value();
  } else {
    const long double phase = static_cast<long double>(k) *
                                  static_cast<long double>(st.sum_signed_a) +
                              static_cast<long double>(st.sum_t) / 4.0L;
    red = static_cast<double>(std::fmod(phase, 2.0L));
  }
  const double ca = std::cos(st.alpha_sum);
  const double sa = std::sin(st.alpha_sum);
  const double trig = use_cos ? cos_pi(red) * ca - sin_pi(red) * sa
                              : sin_pi(red) * ca + cos_pi(red) * sa;
  return (st.positives % 2 ? -1.0 : 1.0) * st.poly * trig;
}

double coefficient_mass(const std::vector<SignTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.poly);
  return s;
}

}

double vandermonde_sq(const Coefficients& c) {
  double p = 1.0;
  for (int j = 0; j < c.n; ++j)
    for (int s = 0; s < j; ++s) p *= (c.a[j] * c.a[j] - c.a[s] * c.a[s]);
  return p;
}

double log_delta1(int k, const Coefficients& c) {
  return std::numbers::pi * k * c.a_sum() + std::log(vandermonde_sq(c));
}

double delta_ratio(int k, const Coefficients& c) {
  const std::vector<double> zeros(c.n, 0.0);
  const ModeSystem sys = assemble_mode_system(k, c, zeros, zeros);
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(sys.matrix).determinant();
  if (!std::isfinite(det))
    throw NumericalBreakdown("mode determinant overflowed at k = " + std::to_string(k));
  return det / vandermonde_sq(c);
}

double alpha_angle(double a_j, double a_s, int t_j, int t_s) {
  return std::atan2(t_j * a_j * a_j + t_s * a_s * a_s,
                    a_j * a_s * (1.0 - static_cast<double>(t_j) * t_s));
}

double delta2_closed_form(int k, const Coefficients& c) {
  if (k < 1) throw std::invalid_argument("delta2_closed_form needs k >= 1");
  const bool use_cos = (c.n % 4 == 0) || (c.n % 4 == 3);
  double acc = 0.0;
  for (const auto& st : sign_terms(c)) acc += term_value(st, k, use_cos);
  return acc;
}

RegimeAnalysis rational_min_delta2(const Coefficients& c) {
  if (c.regime == Regime::Floating || !c.exact)
    throw RegimeMismatch("rational_min_delta2 needs exact (natural/rational) coefficients");

  RegimeAnalysis ra;
  ra.regime = c.regime;
  std::int64_t M = 1;
  for (unsigned mask = 1; mask < (1u << c.n); ++mask) {
    Rational sum(0, 1);
    for (int j = 0; j < c.n; ++j)
      if (mask >> j & 1u) sum = sum + (*c.exact)[j];
    M = checked_lcm(M, sum.den());
  }
  ra.lcm_denominator = M;
  ra.period = 2 * M;

  const auto terms = sign_terms(c);
  const bool use_cos = (c.n % 4 == 0) || (c.n % 4 == 3);
  const double zero_tol = 1e-12 * std::max(1.0, coefficient_mass(terms));
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 1; k <= ra.period; ++k) {
    double v = 0.0;
    for (const auto& st : terms) v += term_value(st, static_cast<int>(k), use_cos);
    v = std::abs(v);
    if (v <= zero_tol)
      ra.zero_residues.push_back(k % ra.period);
    else
      best = std::min(best, v);
  }
  ra.min_abs_delta2 = std::isfinite(best) ? best : 0.0;
  return ra;
}

SmallDenominatorEstimate estimate_gamma(const Coefficients& c, int k_max) {
  if (k_max < 100) throw std::invalid_argument("estimate_gamma needs k_max >= 100");

  const auto terms = sign_terms(c);
  const bool use_cos = (c.n % 4 == 0) || (c.n % 4 == 3);
  const double zero_tol = 1e-12 * std::max(1.0, coefficient_mass(terms));

  SmallDenominatorEstimate est;
  est.k_scanned = k_max;
  std::vector<double> vals(k_max + 1, 0.0);
  // Running strict minima of |delta_2|; their log-log slope estimates the
  // decay exponent of the lower envelope.
  std::vector<std::pair<double, double>> records;  // (log k, log v)
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    double v = 0.0;
    for (const auto& st : terms) v += term_value(st, k, use_cos);
    v = std::abs(v);
    vals[k] = v;
    if (v <= zero_tol) {
      est.zero_modes.push_back(k);
      vals[k] = 0.0;
      continue;
    }
    if (v < (1.0 - 1e-9) * best) {
      best = v;
      records.emplace_back(std::log(static_cast<double>(k)), std::log(v));
    }
  }
  if (!std::isfinite(best)) throw AllZero("delta_2 vanished at every scanned k");

  if (records.size() >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : records) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(records.size());
    const double denom = m * sxx - sx * sx;
    if (denom > 0) est.gamma_fit = std::max(0.0, -(m * sxy - sx * sy) / denom);
  }

  double mfit = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k)
    if (vals[k] > 0)
      mfit = std::min(mfit, vals[k] * std::pow(static_cast<double>(k), est.gamma_fit));
  est.M_fit = mfit;
  for (int k = 1; k <= k_max; ++k)
    if (vals[k] > 0 &&
        vals[k] * std::pow(static_cast<double>(k), est.gamma_fit) < est.M_fit)
      ++est.violations;
  return est;
}

std::vector<DeterminantReport> find_degenerate_modes(const Coefficients& c, int K,
                                                     double degeneracy_tol) {
  if (K < 1) throw std::invalid_argument("find_degenerate_modes needs K >= 1");
  std::vector<double> ratios(K);
  for (int k = 1; k <= K; ++k) ratios[k - 1] = delta_ratio(k, c);

  std::vector<double> mags(K);
  for (int i = 0; i < K; ++i) mags[i] = std::abs(ratios[i]);
  std::nth_element(mags.begin(), mags.begin() + K / 2, mags.end());
  const double typical = mags[K / 2];

  std::vector<DeterminantReport> out;
  if (!(degeneracy_tol > 0)) return out;
  const std::vector<double> zeros(c.n, 0.0);
  for (int k = 1; k <= K; ++k) {
    if (std::abs(ratios[k - 1]) >= degeneracy_tol * typical) continue;
    const ModeSystem sys = assemble_mode_system(k, c, zeros, zeros);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < degeneracy_tol * sv(0))
      out.push_back({k, log_delta1(k, c), ratios[k - 1], delta2_closed_form(k, c), true});
  }
  return out;
}

}

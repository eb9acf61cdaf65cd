#include "mixedspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mixedspec/errors.hpp"

namespace mixedspec {

namespace {

constexpr double kGlNode[4] = {
    0.18343464249564980, 0.52553240991632899, 0.79666647741362674, 0.96028985649753623};
constexpr double kGlWeight[4] = {
    0.36268378337836198, 0.31370664587788729, 0.22238103445337447, 0.10122853629037626};

double panel_integral(const BoundaryFn& f, int k, int panels, double& fmax) {
  const double w = std::numbers::pi * k;
  const double h = 1.0 / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const double x = mid + sgn * 0.5 * h * kGlNode[i];
        const double fx = f(x);
        fmax = std::max(fmax, std::abs(fx));
        acc += kGlWeight[i] * fx * std::sin(w * x);
      }
    }
    total += acc * 0.5 * h;
  }
  return total;
}

double sine_coefficient_tracked(const BoundaryFn& f, int k, double tol, double& fmax_seen) {
  if (k < 1) throw std::invalid_argument("sine_coefficient needs k >= 1");
  if (!(tol > 0)) throw std::invalid_argument("sine_coefficient needs a positive tolerance");

  double fmax = 0.0;
  int panels = std::max(2, k);
  double prev = panel_integral(f, k, panels, fmax);
  for (int round = 0; round < 13; ++round) {
    panels *= 2;
    const double cur = panel_integral(f, k, panels, fmax);
    if (!std::isfinite(cur))
      throw QuadratureError("sine coefficient integrand is not finite at k = " + std::to_string(k));
    if (std::abs(cur - prev) <= 0.5 * tol * std::max(1.0, fmax)) {
      fmax_seen = std::max(fmax_seen, fmax);
      return std::numbers::sqrt2 * cur;
    }
    prev = cur;
  }
  throw QuadratureError("sine coefficient quadrature stalled at k = " + std::to_string(k));
}

// Fornberg's recursion: weights of the m-th derivative at x0 on the given nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int v = mn; v >= 1; --v)
          c[i][v] = c1 * (v * c[i - 1][v - 1] - c5 * c[i - 1][v]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int v = mn; v >= 1; --v) c[j][v] = (c4 * c[j][v] - v * c[j][v - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

struct DerivEstimate {
  double value = 0.0;
  double noise = 0.0;
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

double apply_stencil(const BoundaryFn& f, double x0, double dir, double h, int npts, int d,
                     double fscale, double& roundoff) {
  std::vector<double> nodes(npts);
  for (int i = 0; i < npts; ++i) nodes[i] = x0 + dir * i * h;
  const auto w = fd_weights(x0, nodes, d);
  double v = 0.0, wabs = 0.0;
  for (int i = 0; i < npts; ++i) {
    v += w[i] * f(nodes[i]);
    wabs += std::abs(w[i]);
  }
  roundoff = wabs * kEps * (1.0 + fscale);
  return v;
}

// One-sided derivative of order d at an endpoint, Richardson-extrapolated
// over two step sizes. noise combines the extrapolation gap with the
// stencil's roundoff bound; it is the resolution limit of the estimate.
DerivEstimate endpoint_derivative(const BoundaryFn& f, double x0, double dir, int d,
                                  double fscale) {
  if (d == 0) {
    const double v = f(x0);
    return {v, kEps * (1.0 + std::max(fscale, std::abs(v)))};
  }
  constexpr int kOrder = 6;
  const int npts = d + kOrder;
  const double h = std::min(0.035, 0.42 / (npts - 1));
  double r1 = 0.0, r2 = 0.0;
  const double d1 = apply_stencil(f, x0, dir, h, npts, d, fscale, r1);
  const double d2 = apply_stencil(f, x0, dir, h / 2, npts, d, fscale, r2);
  const double gain = std::pow(2.0, kOrder) - 1.0;
  const double value = d2 + (d2 - d1) / gain;
  const double noise = std::abs(d2 - d1) / gain + r1 + r2;
  return {value, noise};
}

double central_derivative(const BoundaryFn& f, double xc, int d) {
  const int half = d / 2 + 3;
  const int npts = 2 * half + 1;
  const double h = std::min(0.03, 0.4 / npts);
  std::vector<double> nodes(npts);
  for (int i = 0; i < npts; ++i) nodes[i] = xc + (i - half) * h;
  const auto w = fd_weights(xc, nodes, d);
  double v = 0.0;
  for (int i = 0; i < npts; ++i) v += w[i] * f(nodes[i]);
  return v;
}

}

double sine_coefficient(const BoundaryFn& f, int k, double tol) {
  double fmax = 0.0;
  return sine_coefficient_tracked(f, k, tol, fmax);
}

SpectralBoundary boundary_spectrum(const BoundaryData& data, int n, int K, double tol) {
  if (n < 1 || static_cast<int>(data.phi.size()) != n || static_cast<int>(data.psi.size()) != n)
    throw std::invalid_argument("boundary_spectrum: boundary data does not match n");
  if (K < 1) throw std::invalid_argument("boundary_spectrum needs K >= 1");

  SpectralBoundary sb;
  sb.K = K;
  sb.phi_sk.assign(n, std::vector<double>(K, 0.0));
  sb.psi_sk.assign(n, std::vector<double>(K, 0.0));
  double fmax = 0.0;

  auto fill = [&](const std::vector<BoundaryFn>& fns, std::vector<std::vector<double>>& out,
                  const char* name) {
    for (int s = 0; s < n; ++s) {
      for (int k = 1; k <= K; ++k) {
        try {
          out[s][k - 1] = sine_coefficient_tracked(fns[s], k, tol, fmax);
        } catch (const QuadratureError& e) {
          throw QuadratureError(std::string(e.what()) + " while expanding " + name +
                                std::to_string(s));
        }
      }
    }
  };
  fill(data.phi, sb.phi_sk, "phi");
  fill(data.psi, sb.psi_sk, "psi");

  sb.noise_floor = tol * std::max(1.0, fmax);
  return sb;
}

SmoothnessReport smoothness_check(const BoundaryData& data, int n, double gamma_exponent) {
  if (n < 1 || static_cast<int>(data.phi.size()) != n || static_cast<int>(data.psi.size()) != n)
    throw std::invalid_argument("smoothness_check: boundary data does not match n");
  const double g = std::max(0.0, gamma_exponent);
  const double r = std::round(g);
  const int alpha = (std::abs(g - r) <= 1e-9) ? static_cast<int>(r)
                                              : static_cast<int>(std::floor(g)) + 1;

  SmoothnessReport rep;
  rep.order_checked = 2 * n + 1 + alpha;
  const int max_even = 2 * n + alpha;

  auto check_fn = [&](const BoundaryFn& f, const std::string& id) {
    double fscale = 0.0;
    for (int i = 0; i <= 100; ++i) fscale = std::max(fscale, std::abs(f(i / 100.0)));
    for (int d = 0; d <= max_even; d += 2) {
      const double dscale = d == 0 ? fscale : std::abs(central_derivative(f, 0.5, d));
      for (double endpoint : {0.0, 1.0}) {
        const auto est = endpoint_derivative(f, endpoint, endpoint == 0.0 ? 1.0 : -1.0, d, fscale);
        const double threshold =
            std::max(1e-6 * (1.0 + std::max(fscale, dscale)), 8.0 * est.noise);
        if (std::abs(est.value) > threshold)
          rep.failures.push_back({id, d, endpoint, est.value});
      }
    }
  };

  for (int s = 0; s < n; ++s) check_fn(data.phi[s], "phi" + std::to_string(s));
  for (int s = 0; s < n; ++s) check_fn(data.psi[s], "psi" + std::to_string(s));
  return rep;
}

double parseval_tail(const SpectralBoundary& spectrum, int weight_power, int K0) {
  if (weight_power < 0) throw std::invalid_argument("parseval_tail needs a nonnegative power");
  const int n = static_cast<int>(spectrum.phi_sk.size());
  long double acc = 0.0L;
  for (int k = std::max(K0, 0) + 1; k <= spectrum.K; ++k) {
    double m = 0.0;
    for (int s = 0; s < n; ++s)
      m = std::max(m, std::abs(spectrum.phi_sk[s][k - 1]) + std::abs(spectrum.psi_sk[s][k - 1]));
    const double term = std::pow(static_cast<double>(k), weight_power) * m;
    acc += static_cast<long double>(term) * term;
  }
  return static_cast<double>(std::sqrt(acc));
}

}

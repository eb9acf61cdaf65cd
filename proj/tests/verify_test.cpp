#include <doctest.h>

#include <mixedspec/errors.hpp>
#include <mixedspec/model.hpp>
#include <mixedspec/series_solver.hpp>
#include <mixedspec/verify.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace mixedspec;

namespace {

constexpr double kPi = std::numbers::pi;

SeriesSolution solve_two_modes(const Coefficients& c) {
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(c.n);
  spec.boundary.phi[0] = [](double x) {
    return 0.5 * std::sin(kPi * x) + 0.2 * std::sin(2 * kPi * x);
  };
  spec.k_cap = 32;
  return solve_dirichlet(spec);
}

}

TEST_CASE("manufactured_from_elliptic with zero coefficients is the zero case") {
  auto c = make_coefficients({"1", "2"});
  auto mc = manufactured_from_elliptic(3, c, std::vector<double>(4, 0.0));
  CHECK(mc.exact_mode.c_hat.norm() == 0.0);
  CHECK(mc.exact_mode.d.norm() == 0.0);
  for (double v : mc.phi_k) CHECK(v == 0.0);
  for (double v : mc.psi_k) CHECK(v == 0.0);
}

TEST_CASE("manufactured_case is deterministic in the seed") {
  auto c = make_coefficients({"1", "2"});
  auto m1 = manufactured_case(7, c, 42);
  auto m2 = manufactured_case(7, c, 42);
  auto m3 = manufactured_case(7, c, 43);
  CHECK(m1.phi_k == m2.phi_k);
  CHECK(m1.psi_k == m2.psi_k);
  CHECK(m1.phi_k != m3.phi_k);
}

TEST_CASE("manufactured modes satisfy the matching rows to near machine") {
  for (int n : {1, 2, 3}) {
    std::vector<std::string> entries;
    for (int j = 1; j <= n; ++j) entries.push_back(std::to_string(j));
    auto c = make_coefficients(entries);
    for (int k : {1, 5, 20}) {
      auto mc = manufactured_case(k, c, 1000 + k);
      CHECK(matching_residual(mc.exact_mode, c) <= 1e-12);
    }
  }
}

TEST_CASE("solver round-trips a manufactured mode") {
  auto c = make_coefficients({"1", "2", "3"});
  auto mc = manufactured_case(9, c, 5);
  auto sol = solve_mode(assemble_mode_system(9, c, mc.phi_k, mc.psi_k), 1e-8);
  double scale = 0.0;
  for (int i = 0; i < 6; ++i)
    scale = std::max({scale, std::abs(mc.exact_mode.c_hat[i]), std::abs(mc.exact_mode.d[i])});
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(sol.c_hat[i] - mc.exact_mode.c_hat[i]) <= 1e-10 * std::max(1.0, scale));
    CHECK(std::abs(sol.d[i] - mc.exact_mode.d[i]) <= 1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("fd_residual converges at second order") {
  auto c = make_coefficients({"3/2"});
  auto sol = solve_two_modes(c);
  auto rep = fd_residual(sol, c, 1.0 / 32);
  CHECK(rep.h == doctest::Approx(1.0 / 32));
  CHECK(rep.interior_max_residual_elliptic > 0.0);
  CHECK(rep.interior_max_residual_hyperbolic > 0.0);
  CHECK(rep.convergence_order_elliptic == doctest::Approx(2.0).epsilon(0.15));
  CHECK(rep.convergence_order_hyperbolic == doctest::Approx(2.0).epsilon(0.15));
  CHECK(rep.convergence_order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("fd_residual of the zero field is zero with no fitted order") {
  auto c = make_coefficients({"1"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(1);
  spec.k_cap = 8;
  auto sol = solve_dirichlet(spec);
  auto rep = fd_residual(sol, c, 1.0 / 16);
  CHECK(rep.interior_max_residual_elliptic == 0.0);
  CHECK(rep.interior_max_residual_hyperbolic == 0.0);
  CHECK(rep.convergence_order == 0.0);
}

TEST_CASE("fd_residual validates the grid") {
  auto c = make_coefficients({"1"});
  auto sol = solve_two_modes(c);
  CHECK_THROWS_AS(fd_residual(sol, c, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(fd_residual(sol, c, 1.0 / 10), std::invalid_argument);  // below 2n+12
  CHECK_THROWS_AS(fd_residual(sol, c, -0.01), std::invalid_argument);
}

TEST_CASE("theorem2_check fits a stable growth constant") {
  auto c = make_coefficients({"1", "2"});
  SpectralBoundary sp;
  sp.K = 100;
  sp.phi_sk.assign(2, std::vector<double>(100, 0.0));
  sp.psi_sk.assign(2, std::vector<double>(100, 0.0));
  for (int k = 1; k <= 100; ++k) {
    const double w = std::pow(k, -4.0);
    sp.phi_sk[0][k - 1] = w;
    sp.phi_sk[1][k - 1] = 0.3 * w * std::sin(1.7 * k);
    sp.psi_sk[0][k - 1] = 0.7 * w * std::cos(0.9 * k);
    sp.psi_sk[1][k - 1] = 0.1 * w;
  }
  auto f50 = theorem2_check(c, sp, 1, 50);
  auto f100 = theorem2_check(c, sp, 1, 100);
  CHECK(std::isfinite(f50.M));
  CHECK(f50.M > 0.0);
  CHECK(f50.witness_k >= 1);
  CHECK(std::abs(f100.M - f50.M) <= 0.10 * f100.M);

  CHECK_THROWS_AS(theorem2_check(c, sp, 0, 50), std::invalid_argument);
  CHECK_THROWS_AS(theorem2_check(c, sp, 1, 101), std::invalid_argument);
  CHECK_THROWS_AS(theorem2_check(c, sp, 30, 20), std::invalid_argument);
}

TEST_CASE("matrix path tracks the closed-form oracle") {
  CHECK(oracle_compare_n1(1.0, 30, 3, 11) <= 1e-10);
  CHECK(oracle_compare_n1(2.5, 30, 3, 11) <= 1e-10);
}

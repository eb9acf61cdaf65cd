#include <doctest.h>

#include <mixedspec/errors.hpp>
#include <mixedspec/model.hpp>
#include <mixedspec/series_solver.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace mixedspec;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralBoundary synthetic_spectrum(int K, const std::vector<double>& phi1) {
  SpectralBoundary sp;
  sp.K = K;
  sp.phi_sk.assign(1, phi1);
  sp.psi_sk.assign(1, std::vector<double>(K, 0.0));
  sp.noise_floor = 0.0;
  return sp;
}

SmallDenominatorEstimate flat_envelope(double m_fit) {
  SmallDenominatorEstimate est;
  est.M_fit = m_fit;
  est.gamma_fit = 0.0;
  return est;
}

}

TEST_CASE("choose_truncation on synthetic spectra") {
  auto c1 = make_coefficients({"1"});
  SUBCASE("k^-8 data: the k^2-weighted tail crosses 1e-6 at K = 11") {
    std::vector<double> phi(64);
    for (int k = 1; k <= 64; ++k) phi[k - 1] = std::pow(k, -8.0);
    CHECK(choose_truncation(synthetic_spectrum(64, phi), c1, flat_envelope(1.0), 1e-6) == 11);
  }
  SUBCASE("slowly decaying data exhausts the cap") {
    std::vector<double> phi(32);
    for (int k = 1; k <= 32; ++k) phi[k - 1] = 1.0 / k;
    CHECK_THROWS_AS(
        choose_truncation(synthetic_spectrum(32, phi), c1, flat_envelope(1.0), 1e-6),
        CapExceeded);
  }
  SUBCASE("entries below the noise floor count as zero") {
    std::vector<double> phi(64, 1e-13);
    for (int k = 1; k <= 5; ++k) phi[k - 1] = std::pow(k, -8.0);
    auto sp = synthetic_spectrum(64, phi);
    sp.noise_floor = 1e-12;
    CHECK(choose_truncation(sp, c1, flat_envelope(1.0), 1e-6) == 5);
  }
  SUBCASE("a smaller envelope constant forces a deeper truncation") {
    std::vector<double> phi(64);
    for (int k = 1; k <= 64; ++k) phi[k - 1] = std::pow(k, -8.0);
    auto sp = synthetic_spectrum(64, phi);
    const int k_loose = choose_truncation(sp, c1, flat_envelope(1.0), 1e-6);
    const int k_tight = choose_truncation(sp, c1, flat_envelope(1e-3), 1e-6);
    CHECK(k_tight > k_loose);
  }
}

TEST_CASE("solve_dirichlet reproduces mode-finite boundary data") {
  auto c = make_coefficients({"1", "2"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(2);
  spec.boundary.phi[0] = [](double x) {
    return std::sin(kPi * x) + 0.25 * std::sin(3 * kPi * x);
  };
  spec.boundary.psi[0] = [](double x) { return 0.5 * std::sin(2 * kPi * x); };
  spec.k_cap = 64;
  auto sol = solve_dirichlet(spec);

  CHECK(sol.K == 3);
  CHECK(sol.tail_bound < 1e-6);
  CHECK(sol.degenerate_modes.empty());
  REQUIRE(sol.modes.size() == 3);
  for (const auto& m : sol.modes) CHECK(m.has_value());

  for (int i = 0; i <= 50; ++i) {
    const double x = i / 50.0;
    CHECK(evaluate(sol, c, x, 1.0) ==
          doctest::Approx(spec.boundary.phi[0](x)).epsilon(1e-10).scale(1.0));
    CHECK(evaluate(sol, c, x, -1.0) ==
          doctest::Approx(spec.boundary.psi[0](x)).epsilon(1e-10).scale(1.0));
  }
  // homogeneous x-edges hold exactly: sin(pi k x) vanishes by construction
  for (int j = 0; j <= 20; ++j) {
    const double y = -1.0 + j / 10.0;
    CHECK(evaluate(sol, c, 0.0, y) == 0.0);
    CHECK(evaluate(sol, c, 1.0, y) == 0.0);
  }
}

TEST_CASE("evaluate and evaluate_derivative agree at order zero") {
  auto c = make_coefficients({"1"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(1);
  spec.boundary.phi[0] = [](double x) { return std::sin(2 * kPi * x); };
  spec.k_cap = 32;
  auto sol = solve_dirichlet(spec);
  for (double x : {0.1, 0.37, 0.62}) {
    for (double y : {-0.8, -0.2, 0.0, 0.4, 1.0}) {
      CHECK(evaluate_derivative(sol, c, x, y, 0, 0) == evaluate(sol, c, x, y));
    }
  }
}

TEST_CASE("interface gaps shrink linearly in the probe offset") {
  auto c = make_coefficients({"1", "2"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(2);
  spec.boundary.phi[0] = [](double x) { return std::sin(kPi * x); };
  spec.boundary.psi[0] = [](double x) { return 0.3 * std::sin(2 * kPi * x); };
  spec.k_cap = 32;
  auto sol = solve_dirichlet(spec);
  for (int t = 0; t <= 3; ++t) {
    double g3 = 0.0, g4 = 0.0;
    for (int i = 1; i < 10; ++i) {
      const double x = i / 10.0;
      g3 = std::max(g3, std::abs(evaluate_derivative(sol, c, x, 1e-3, 0, t) -
                                 evaluate_derivative(sol, c, x, -1e-3, 0, t)));
      g4 = std::max(g4, std::abs(evaluate_derivative(sol, c, x, 1e-4, 0, t) -
                                 evaluate_derivative(sol, c, x, -1e-4, 0, t)));
    }
    // u is C^{2n-1} across y = 0: the gap is smooth variation, ~ 2 eps u'
    CHECK(g4 < 0.2 * g3);
  }
}

TEST_CASE("derivative order limits") {
  auto c = make_coefficients({"1"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(1);
  spec.boundary.phi[0] = [](double x) { return std::sin(kPi * x); };
  spec.k_cap = 16;
  auto sol = solve_dirichlet(spec);

  CHECK_NOTHROW(evaluate_derivative(sol, c, 0.5, 0.5, 1, 1));     // total 2n
  CHECK_THROWS_AS(evaluate_derivative(sol, c, 0.5, 0.5, 2, 1),    // above 2n
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_derivative(sol, c, 0.5, 0.0, 1, 1),    // 2n at y=0
                  std::invalid_argument);
  CHECK_NOTHROW(evaluate_derivative(sol, c, 0.5, 0.0, 0, 1));
  CHECK_THROWS_AS(evaluate(sol, c, 1.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(sol, c, 0.5, -1.5), std::invalid_argument);
}

TEST_CASE("zero data gives the zero solution") {
  auto c = make_coefficients({"1", "2"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(2);
  spec.k_cap = 16;
  auto sol = solve_dirichlet(spec);
  for (double x : {0.0, 0.3, 0.8})
    for (double y : {-1.0, -0.4, 0.0, 0.9}) CHECK(evaluate(sol, c, x, y) == 0.0);
}

TEST_CASE("validation failures surface before any numerics") {
  ProblemSpec spec;
  spec.coefficients = make_coefficients({"1"});
  spec.boundary = zero_boundary(2);  // arity mismatch
  CHECK_THROWS_AS(solve_dirichlet(spec), ValidationFailed);
  try {
    solve_dirichlet(spec);
  } catch (const ValidationFailed& e) {
    CHECK_FALSE(e.violations.empty());
  }
}

TEST_CASE("degenerate mode with orthogonal data is skipped and reported") {
  auto c = make_coefficients({"3/4"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(1);
  spec.boundary.phi[0] = [](double x) {
    return std::sin(2 * kPi * x) + 0.1 * std::sin(8 * kPi * x);
  };
  spec.k_cap = 64;
  auto sol = solve_dirichlet(spec);

  CHECK(sol.K == 8);
  REQUIRE(sol.degenerate_modes.size() == 1);
  const auto& rec = sol.degenerate_modes[0];
  CHECK(rec.k == 5);
  CHECK(rec.data_orthogonal);
  CHECK(rec.homogeneous_dim >= 1);
  REQUIRE(rec.homogeneous_sample.has_value());
  CHECK(matching_residual(*rec.homogeneous_sample, c) <= 1e-9);
  CHECK_FALSE(sol.modes[4].has_value());  // k = 5 skipped
  CHECK(sol.modes[1].has_value());

  // the skipped mode contributes nothing; the loaded modes still reproduce
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    CHECK(evaluate(sol, c, x, 1.0) ==
          doctest::Approx(spec.boundary.phi[0](x)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("degenerate mode with loaded data is unsolvable with the k listed") {
  auto c = make_coefficients({"3/4"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(1);
  spec.boundary.phi[0] = [](double x) { return std::sin(5 * kPi * x); };
  spec.k_cap = 64;
  try {
    solve_dirichlet(spec);
    FAIL("expected DegenerateUnsolvable");
  } catch (const DegenerateUnsolvable& e) {
    REQUIRE(e.modes == std::vector<int>{5});
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
}

TEST_CASE("homogeneous_mode spans the nullspace") {
  auto c = make_coefficients({"3/4"});
  auto hom = homogeneous_mode(5, c, 1e-8);
  CHECK(hom.degenerate);
  double largest = 0.0;
  for (int i = 0; i < 2; ++i) {
    largest = std::max({largest, std::abs(hom.c_hat[i]), std::abs(hom.d[i])});
  }
  CHECK(largest == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(matching_residual(hom, c) <= 1e-9);

  CHECK_THROWS_AS(homogeneous_mode(3, make_coefficients({"1"}), 1e-8), NotDegenerate);
}

TEST_CASE("tail_bound carries the Parseval weight") {
  auto c = make_coefficients({"1"});
  ProblemSpec spec;
  spec.coefficients = c;
  spec.boundary = zero_boundary(1);
  spec.boundary.phi[0] = [](double x) { return std::sin(kPi * x); };
  spec.k_cap = 24;
  auto sol = solve_dirichlet(spec);
  CHECK(sol.tail_bound >= 0.0);
  CHECK(sol.tail_bound < 1e-6);
}

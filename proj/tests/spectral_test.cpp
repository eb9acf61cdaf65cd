#include <doctest.h>

#include <mixedspec/errors.hpp>
#include <mixedspec/model.hpp>
#include <mixedspec/spectral.hpp>

#include <cmath>
#include <numbers>

using namespace mixedspec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sine_coefficient reproduces analytic coefficients") {
  // f = sin(pi x): integral is 1/2, coefficient sqrt(2)/2.
  CHECK(sine_coefficient([](double x) { return std::sin(kPi * x); }, 1, 1e-12) ==
        doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
  // f = x(1-x): 2(1 - cos(pi k))/(pi k)^3, so 4/(pi k)^3 for odd k, 0 even.
  CHECK(sine_coefficient([](double x) { return x * (1 - x); }, 1, 1e-12) ==
        doctest::Approx(4 * std::sqrt(2.0) / std::pow(kPi, 3)).epsilon(1e-13));
  CHECK(sine_coefficient([](double x) { return x * (1 - x); }, 3, 1e-12) ==
        doctest::Approx(4 * std::sqrt(2.0) / std::pow(3 * kPi, 3)).epsilon(1e-12));
  CHECK(std::abs(sine_coefficient([](double x) { return x * (1 - x); }, 2, 1e-12)) <
        1e-15);
  // orthonormality: <sqrt(2) sin(pi j x), sqrt(2) sin(pi k x)> = delta_jk
  for (int k = 1; k <= 4; ++k) {
    const double c =
        sine_coefficient([](double x) { return std::sqrt(2.0) * std::sin(3 * kPi * x); },
                         k, 1e-12);
    CHECK(c == doctest::Approx(k == 3 ? 1.0 : 0.0).epsilon(1e-13));
  }
}

TEST_CASE("sine_coefficient resolves moderately oscillatory data") {
  // k = 39 needs panel refinement well past the initial grid; the tolerance
  // is absolute (scaled by max(1, |f|)), so compare absolutely too.
  const double got = sine_coefficient([](double x) { return x * (1 - x); }, 39, 1e-12);
  CHECK(std::abs(got - 4 * std::sqrt(2.0) / std::pow(39 * kPi, 3)) < 1e-12);
}

TEST_CASE("sine_coefficient rejects non-finite data") {
  CHECK_THROWS_AS(sine_coefficient([](double x) { return 1.0 / (x - 0.31); }, 1, 1e-12),
                  QuadratureError);
}

TEST_CASE("boundary_spectrum lays out phi_sk and psi_sk") {
  BoundaryData data = zero_boundary(2);
  data.phi[0] = [](double x) { return std::sin(kPi * x); };
  data.psi[1] = [](double x) { return 2 * std::sin(3 * kPi * x); };
  auto sp = boundary_spectrum(data, 2, 5, 1e-12);
  REQUIRE(sp.K == 5);
  REQUIRE(sp.phi_sk.size() == 2);
  REQUIRE(sp.psi_sk.size() == 2);
  REQUIRE(sp.phi_sk[0].size() == 5);
  CHECK(sp.phi_sk[0][0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-13));
  CHECK(std::abs(sp.phi_sk[0][1]) < 1e-13);
  CHECK(sp.psi_sk[1][2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(std::abs(sp.psi_sk[0][2]) < 1e-13);
  CHECK(sp.noise_floor > 0.0);
  CHECK(sp.noise_floor <= 1e-11);  // tol * max(1, max amplitude = 2)
}

TEST_CASE("parseval_tail on a hand-built spectrum") {
  SpectralBoundary sp;
  sp.K = 3;
  sp.phi_sk = {{1.0, 0.5, 0.25}};
  sp.psi_sk = {{0.0, 0.5, 0.0}};
  // weight 2, drop k = 1: sqrt((4 * 1)^2 + (9 * 0.25)^2) = sqrt(21.0625)
  CHECK(parseval_tail(sp, 2, 1) == doctest::Approx(std::sqrt(21.0625)).epsilon(1e-15));
  CHECK(parseval_tail(sp, 2, 3) == 0.0);
  // weight 0, full range: sqrt(1 + 1 + 0.0625)
  CHECK(parseval_tail(sp, 0, 0) == doctest::Approx(std::sqrt(2.0625)).epsilon(1e-15));
}

TEST_CASE("smoothness_check passes admissible data") {
  BoundaryData data = zero_boundary(1);
  data.phi[0] = [](double x) { return std::sin(kPi * x); };
  auto rep = smoothness_check(data, 1, 0.0);
  CHECK(rep.order_checked == 3);  // 2n + 1 + alpha with alpha = 0
  CHECK(rep.ok());

  // every even derivative of sin(2 pi x) vanishes at both endpoints
  BoundaryData data2 = zero_boundary(2);
  data2.phi[0] = [](double x) { return std::sin(2 * kPi * x); };
  CHECK(smoothness_check(data2, 2, 0.0).ok());
}

TEST_CASE("smoothness_check flags a nonvanishing second derivative") {
  BoundaryData data = zero_boundary(1);
  data.phi[0] = [](double x) { return x * (1 - x); };
  auto rep = smoothness_check(data, 1, 0.0);
  REQUIRE(rep.failures.size() == 2);
  for (const auto& f : rep.failures) {
    CHECK(f.function_id == "phi0");
    CHECK(f.order == 2);
    CHECK(f.magnitude == doctest::Approx(-2.0).epsilon(1e-4));
  }
  CHECK(rep.failures[0].endpoint != rep.failures[1].endpoint);
}

TEST_CASE("smoothness_check flags a nonvanishing endpoint value") {
  BoundaryData data = zero_boundary(1);
  data.psi[0] = [](double x) { return x; };
  auto rep = smoothness_check(data, 1, 2.0);
  CHECK(rep.order_checked == 5);  // alpha = round(2) = 2
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0].function_id == "psi0");
  CHECK(rep.failures[0].order == 0);
  CHECK(rep.failures[0].endpoint == 1.0);
  CHECK(rep.failures[0].magnitude == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("smoothness_check widens the order for fractional gamma") {
  BoundaryData data = zero_boundary(1);
  data.phi[0] = [](double x) { return std::sin(kPi * x); };
  // alpha = floor(0.5) + 1 = 1 -> order_checked = 2n + 1 + 1 = 4
  CHECK(smoothness_check(data, 1, 0.5).order_checked == 4);
  // high even derivatives of a smooth admissible function stay below the
  // stencil noise indicator: no spurious failures at order 6
  BoundaryData data2 = zero_boundary(2);
  data2.phi[0] = [](double x) { return std::sin(kPi * x); };
  CHECK(smoothness_check(data2, 2, 1.5).ok());
}

TEST_CASE("quadrature tolerance shifts the noise floor") {
  BoundaryData data = zero_boundary(1);
  data.phi[0] = [](double x) { return 1e6 * std::sin(kPi * x); };
  auto fine = boundary_spectrum(data, 1, 3, 1e-12);
  auto coarse = boundary_spectrum(data, 1, 3, 1e-8);
  CHECK(fine.noise_floor < coarse.noise_floor);
  CHECK(fine.noise_floor >= 1e-12 * 1e6 * 0.99);
}

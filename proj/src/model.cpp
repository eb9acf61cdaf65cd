#include "mixedspec/model.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "mixedspec/errors.hpp"

namespace mixedspec {

namespace {

bool looks_floating(std::string_view s) {
  return s.find_first_of(".eE") != std::string_view::npos;
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Natural: return "natural";
    case Regime::Rational: return "rational";
    case Regime::Floating: return "floating";
  }
  return "unknown";
}

double Coefficients::a_sum() const {
  double s = 0;
  for (double v : a) s += v;
  return s;
}

BoundaryData zero_boundary(int n) {
  BoundaryData data;
  data.phi.assign(n, [](double) { return 0.0; });
  data.psi.assign(n, [](double) { return 0.0; });
  return data;
}

Coefficients make_coefficients(const std::vector<std::string>& entries) {
  if (entries.empty()) throw InvalidCoefficients("no coefficients given");

  Coefficients c;
  c.n = static_cast<int>(entries.size());
  std::vector<Rational> exact;
  bool all_exact = true;
  bool all_integer = true;

  for (const auto& e : entries) {
    if (!looks_floating(e)) {
      if (auto r = Rational::parse(e)) {
        if (r->num() <= 0)
          throw InvalidCoefficients("coefficient '" + e + "' is not positive");
        exact.push_back(*r);
        all_integer = all_integer && r->is_integer();
        c.a.push_back(r->value());
        continue;
      }
      throw InvalidCoefficients("coefficient '" + e + "' is not a number");
    }
    const auto v = parse_double(e);
    if (!v) throw InvalidCoefficients("coefficient '" + e + "' is not a number");
    if (!(*v > 0) || !std::isfinite(*v))
      throw InvalidCoefficients("coefficient '" + e + "' is not positive and finite");
    all_exact = false;
    c.a.push_back(*v);
  }

  for (std::size_t i = 1; i < c.a.size(); ++i) {
    const bool ordered = all_exact ? exact[i - 1] < exact[i] : c.a[i - 1] < c.a[i];
    if (!ordered)
      throw InvalidCoefficients("coefficients must be strictly increasing: '" +
                                entries[i - 1] + "' >= '" + entries[i] + "'");
  }

  if (all_exact) {
    c.exact = std::move(exact);
    c.regime = all_integer ? Regime::Natural : Regime::Rational;
  } else {
    c.regime = Regime::Floating;
  }
  return c;
}

ValidationReport validate_problem(const ProblemSpec& spec) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

  const Coefficients& c = spec.coefficients;
  if (c.n < 1) fail("n must be at least 1");
  if (static_cast<int>(c.a.size()) != c.n) fail("coefficient count does not match n");
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    if (!(c.a[i] > 0) || !std::isfinite(c.a[i]))
      fail("a[" + std::to_string(i) + "] is not positive and finite");
    if (i > 0 && !(c.a[i - 1] < c.a[i]))
      fail("a[" + std::to_string(i) + "] does not increase strictly");
  }
  const bool want_exact = c.regime != Regime::Floating;
  if (want_exact != c.exact.has_value()) {
    fail("exact values must be present exactly for the natural/rational regimes");
  } else if (c.exact) {
    if (c.exact->size() != c.a.size()) {
      fail("exact value count does not match n");
    } else {
      for (std::size_t i = 0; i < c.a.size(); ++i) {
        const double ref = (*c.exact)[i].value();
        if (std::abs(c.a[i] - ref) > 1e-15 * std::max(1.0, std::abs(ref)))
          fail("a[" + std::to_string(i) + "] disagrees with its exact value");
        if (c.regime == Regime::Natural && !(*c.exact)[i].is_integer())
          fail("natural regime holds a non-integer coefficient");
      }
    }
  }

  if (static_cast<int>(spec.boundary.phi.size()) != c.n)
    fail("boundary needs exactly n functions phi_s");
  if (static_cast<int>(spec.boundary.psi.size()) != c.n)
    fail("boundary needs exactly n functions psi_s");
  const double probes[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  auto check_fn = [&](const BoundaryFn& f, const std::string& id) {
    if (!f) {
      fail(id + " is empty");
      return;
    }
    for (double x : probes) {
      if (!std::isfinite(f(x))) {
        fail(id + " is not finite at x = " + std::to_string(x));
        return;
      }
    }
  };
  for (std::size_t s = 0; s < spec.boundary.phi.size(); ++s)
    check_fn(spec.boundary.phi[s], "phi" + std::to_string(s));
  for (std::size_t s = 0; s < spec.boundary.psi.size(); ++s)
    check_fn(spec.boundary.psi[s], "psi" + std::to_string(s));

  if (!(spec.tolerances.quadrature > 0)) fail("quadrature tolerance must be positive");
  if (!(spec.tolerances.degeneracy >= 0)) fail("degeneracy tolerance must be nonnegative");
  if (!(spec.tolerances.series > 0)) fail("series tolerance must be positive");
  if (spec.k_cap < 1) fail("k_cap must be at least 1");

  return rep;
}

}

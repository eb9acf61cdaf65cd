#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixedspec/rational.hpp"

namespace mixedspec {

// How the factor coefficients a_1 < ... < a_n were given. The regime decides
// which small-denominator analysis applies downstream: exact arithmetic for
// Natural/Rational, envelope estimation for Floating.
enum class Regime { Natural, Rational, Floating };

const char* regime_name(Regime r);

struct Coefficients {
  int n = 0;
  std::vector<double> a;  // strictly increasing, all positive
  // Present exactly when regime != Floating; exact[i] equals a[i].
  std::optional<std::vector<Rational>> exact;
  Regime regime = Regime::Floating;

  double a_sum() const;
  double a_max() const { return a.back(); }
};

using BoundaryFn = std::function<double(double)>;

// Dirichlet data on the horizontal edges: phi[s] at y = +1, psi[s] at y = -1,
// each paired with the s-th normal-derivative order 2s.
struct BoundaryData {
  std::vector<BoundaryFn> phi;
  std::vector<BoundaryFn> psi;
};

BoundaryData zero_boundary(int n);

struct Tolerances {
  double quadrature = 1e-12;
  double degeneracy = 1e-8;
  double series = 1e-6;
};

struct ProblemSpec {
  Coefficients coefficients;
  BoundaryData boundary;
  Tolerances tolerances;
  int k_cap = 256;
};

// A sampled solution on a tensor grid; values[iy][ix] pairs ys[iy], xs[ix].
struct Field {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::vector<double>> values;
};

// Parses coefficient strings and classifies the regime from their syntax:
// all integers -> Natural, otherwise all p/q -> Rational, anything with a
// decimal point or exponent -> Floating. Throws InvalidCoefficients when a
// string is unparsable, a value is not positive, or the order is not
// strictly increasing.
Coefficients make_coefficients(const std::vector<std::string>& entries);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Report-only structural check of a problem; never throws.
ValidationReport validate_problem(const ProblemSpec& spec);

}

#pragma once

#include <cmath>
#include <numbers>

namespace mixedspec::detail {

// sin(pi t) with exact argument reduction mod 2, so integer t gives exactly
// zero and half-integer t gives exactly +-1. fmod and the fold-subtractions
// are exact in binary floating point.
inline double sin_pi(double t) {
  double r = std::fmod(t, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) r = 1.0 - r;
  else if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

inline double cos_pi(double t) {
  const double r = std::fmod(t, 2.0);
  return sin_pi(0.5 - r);
}

inline double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}

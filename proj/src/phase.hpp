#pragma once

#include <utility>

#include "mixedspec/model.hpp"

namespace mixedspec::detail {

// (cos, sin) of pi k a_s, argument reduced mod 2 before rounding (exact for
// rational coefficients, long double otherwise). Defined in mode_solver.cpp.
std::pair<double, double> trig_pi_ka(int k, const Coefficients& c, int s);

}

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mixedspec/model.hpp"

namespace mixedspec {

// The 4n x 4n linear system for one sine mode k, assembled in the scaled
// unknowns (c^_1, c_2, c^_3, c_4, ..., d_1, ..., d_2n) where
// c^_{2s-1} = c_{2s-1} * exp(pi k a_s). The scaling keeps every matrix entry
// bounded by max(1, a_n^{2n-1}) for any k; scaling_log[s] = pi k a_s records
// the substitution. Row order: n elliptic data rows (m = 0..n-1), n
// hyperbolic data rows, 2n interface matching rows (t = 0..2n-1).
struct ModeSystem {
  int k = 0;
  int dim = 0;  // 4n
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<double> scaling_log;
};

struct ModeSolution {
  int k = 0;
  Eigen::VectorXd c_hat;  // (c^_1, c_2, c^_3, c_4, ...), length 2n
  Eigen::VectorXd d;      // (d_1, ..., d_2n)
  double cond_estimate = 0.0;
  double smallest_singular = 0.0;
  bool degenerate = false;
};

// phi_k, psi_k hold the n data coefficients (phi_sk, psi_sk) for this k.
ModeSystem assemble_mode_system(int k, const Coefficients& coeffs,
                                const std::vector<double>& phi_k,
                                const std::vector<double>& psi_k);

// LU solve with one step of iterative refinement; SVD supplies the
// condition estimate and degeneracy flag (smallest singular value below
// degeneracy_tol times the largest). A degenerate system is solved in the
// least-squares sense; if the data is not in the range the mode is
// unsolvable and DegenerateUnsolvable carries k.
ModeSolution solve_mode(const ModeSystem& system, double degeneracy_tol);

// j-th y-derivative of the mode profile at y in [-1, 1]. Signed zero picks
// the side: +0.0 evaluates the elliptic expression, -0.0 the hyperbolic one.
double mode_value(const ModeSolution& sol, const Coefficients& coeffs, double y, int j);

// Hand-reduced n = 1 solution (independent of the matrix path) used as an
// oracle. Throws DegenerateUnsolvable when the reduced 2x2 determinant is
// below degeneracy_tol.
ModeSolution closed_form_n1(int k, double a1, double phi_k, double psi_k,
                            double degeneracy_tol = 1e-8);

// max_t |mode_value(+0, t) - mode_value(-0, t)| / (1 + largest coefficient
// magnitude), t = 0..2n-1.
double matching_residual(const ModeSolution& sol, const Coefficients& coeffs);

}

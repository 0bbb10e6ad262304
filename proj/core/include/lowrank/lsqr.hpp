#pragma once

#include "lowrank/spectral_basis.hpp"

namespace lowrank {

struct LsqrResult {
  CVector x;
  double residual = 0.0;         // ||b - A x||
  double normal_residual = 0.0;  // ||A^H (b - A x)||
  int iterations = 0;
  bool converged = false;
};

/// LSQR (Golub-Kahan bidiagonalisation) for min ||b - A x||, started at x0.
/// Stops when ||r|| <= tol (||b|| + ||A|| ||x||) or ||A^H r|| <= tol ||A|| ||r||.
/// max_iterations <= 0 selects 10 * cols(A) + 50.
LsqrResult lsqr(const CMatrix& a, const CVector& b, const CVector& x0, double tol = 1e-12, int max_iterations = 0);

}  // namespace lowrank

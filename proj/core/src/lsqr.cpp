#include "lowrank/lsqr.hpp"

#include <cmath>

#include "lowrank/errors.hpp"

namespace lowrank {

LsqrResult lsqr(const CMatrix& a, const CVector& b, const CVector& x0, double tol, int max_iterations) {
  if (a.rows() != b.size() || a.cols() != x0.size()) throw ShapeError("lsqr: inconsistent system dimensions");
  if (max_iterations <= 0) max_iterations = 10 * static_cast<int>(a.cols()) + 50;

  LsqrResult out;
  out.x = x0;
  CVector u = b - a * x0;
  double beta = u.norm();
  const double b_norm = b.norm();
  const double a_norm = a.norm();  // Frobenius bound on ||A||_2
  if (beta == 0.0 || a_norm == 0.0) {
    out.residual = beta;
    out.converged = true;
    return out;
  }
  u /= beta;
  CVector v = a.adjoint() * u;
  double alpha = v.norm();
  if (alpha == 0.0) {
    // b - A x0 is orthogonal to range(A): x0 is already a least-squares solution.
    out.residual = beta;
    out.converged = true;
    return out;
  }
  v /= alpha;

  CVector w = v;
  CVector dx = CVector::Zero(x0.size());
  double phibar = beta;
  double rhobar = alpha;

  for (int it = 1; it <= max_iterations; ++it) {
    u = a * v - alpha * u;
    beta = u.norm();
    if (beta > 0.0) u /= beta;
    v = a.adjoint() * u - beta * v;
    alpha = v.norm();
    if (alpha > 0.0) v /= alpha;

    const double rho = std::hypot(rhobar, beta);
    const double c = rhobar / rho;
    const double s = beta / rho;
    const double theta = s * alpha;
    rhobar = -c * alpha;
    const double phi = c * phibar;
    phibar = s * phibar;

    dx += (phi / rho) * w;
    w = v - (theta / rho) * w;

    out.iterations = it;
    const double r_norm = phibar;
    const double ar_norm = phibar * alpha * std::abs(c);
    const double x_norm = (x0 + dx).norm();
    if (r_norm <= tol * (b_norm + a_norm * x_norm) || ar_norm <= tol * a_norm * r_norm || alpha == 0.0) {
      out.converged = true;
      break;
    }
  }
  out.x = x0 + dx;
  const CVector r = b - a * out.x;
  out.residual = r.norm();
  out.normal_residual = (a.adjoint() * r).norm();
  return out;
}

}  // namespace lowrank

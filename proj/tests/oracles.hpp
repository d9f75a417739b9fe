#pragma once

// Independent oracles used by the unit and acceptance suites. These must not
// share code paths with the implementations they check.

#include "riccert/riccati.hpp"

#include <cmath>

namespace riccert::testing {

/// Closed-form oracle for 1+1 instances: the contractive root of the scalar
/// quadratic v x^2 - (a1 - a0) x - conj(v) = 0. The two roots have moduli
/// with product 1; the contractive one carries the minus sign.
inline Complex scalar_contractive_root(double a0, double a1, Complex v) {
  if (std::abs(v) == 0.0) return 0.0;
  double gap = a1 - a0;
  double disc = std::sqrt(gap * gap + 4.0 * std::norm(v));
  return (gap - disc) / (2.0 * v);
}

/// Enumeration oracle for K0: an invariant subspace of the Hermitian V V^H
/// splits along its eigenspaces, so the maximal one inside W0 is the direct
/// sum of the eigenspace-wise intersections with W0.
inline Subspace k0_oracle(const BlockOperator& op, const Tolerances& tol) {
  Matrix shifted0 = op.a0 - op.lambda * Matrix::Identity(op.n0, op.n0);
  Matrix shifted1 = op.a1 - op.lambda * Matrix::Identity(op.n1, op.n1);
  Subspace ker_a0 = kernel(shifted0, tol, max_abs(op.a0) + std::abs(op.lambda));
  Subspace ker_a1 = kernel(shifted1, tol, max_abs(op.a1) + std::abs(op.lambda));
  Matrix leak = op.v.adjoint() -
                ker_a1.basis() * (ker_a1.basis().adjoint() * op.v.adjoint());
  Subspace w0 = intersect(intersect(ker_a0, range(op.v, tol), tol),
                          kernel(leak, tol, op.v.norm()), tol);

  Matrix gram = op.v * op.v.adjoint();
  EigResult eig = eig_hermitian(gram, tol);
  double window = tol.eig_window(max_abs(gram));
  Matrix collected(op.n0, 0);
  Index i = 0;
  while (i < eig.values.size()) {
    Index j = i;
    while (j < eig.values.size() && eig.values(j) - eig.values(i) <= window)
      ++j;
    Subspace eigenspace(eig.vectors.middleCols(i, j - i), tol);
    Subspace part = intersect(eigenspace, w0, tol);
    Matrix grown(op.n0, collected.cols() + part.dim());
    grown << collected, part.basis();
    collected = std::move(grown);
    i = j;
  }
  return Subspace::span_of(collected, tol);
}

}  // namespace riccert::testing

#include "riccert/projections.hpp"

#include <algorithm>
#include <cmath>

namespace riccert {

namespace {

double window_for(const RealVector& evals, const Tolerances& tol) {
  double scale = 0.0;
  if (evals.size() > 0)
    scale = std::max(std::abs(evals(0)), std::abs(evals(evals.size() - 1)));
  return tol.eig_window(scale);
}

}  // namespace

Subspace spectral_subspace_below(const Matrix& b, double lambda,
                                 const Tolerances& tol) {
  EigResult eig = eig_hermitian(b, tol);
  double w = window_for(eig.values, tol);
  Index k = 0;
  while (k < eig.values.size() && eig.values(k) < lambda - w) ++k;
  return Subspace(eig.vectors.leftCols(k), tol);
}

Subspace eigenspace_at(const Matrix& b, double lambda, const Tolerances& tol) {
  EigResult eig = eig_hermitian(b, tol);
  double w = window_for(eig.values, tol);
  Index first = 0;
  while (first < eig.values.size() && eig.values(first) < lambda - w) ++first;
  Index last = first;
  while (last < eig.values.size() && std::abs(eig.values(last) - lambda) <= w)
    ++last;
  return Subspace(eig.vectors.middleCols(first, last - first), tol);
}

KernelPair kernel_decomposition(const BlockOperator& op,
                                const Tolerances& tol) {
  require_hypothesis(op, tol);
  Matrix shifted0 = op.a0 - op.lambda * Matrix::Identity(op.n0, op.n0);
  Matrix shifted1 = op.a1 - op.lambda * Matrix::Identity(op.n1, op.n1);
  double scale0 = max_abs(op.a0) + std::abs(op.lambda);
  double scale1 = max_abs(op.a1) + std::abs(op.lambda);
  Subspace n0 =
      intersect(kernel(shifted0, tol, scale0), kernel(op.v.adjoint(), tol), tol);
  Subspace n1 = intersect(kernel(shifted1, tol, scale1), kernel(op.v, tol), tol);
  return {std::move(n0), std::move(n1)};
}

CanonCheck canon_cross_check(const BlockOperator& op, const Tolerances& tol) {
  return canon_cross_check(op, kernel_decomposition(op, tol), tol);
}

CanonCheck canon_cross_check(const BlockOperator& op, const KernelPair& pair,
                             const Tolerances& tol) {
  Subspace spectral = eigenspace_at(assemble(op), op.lambda, tol);
  CanonCheck check;
  check.dim_direct = pair.n0.dim() + pair.n1.dim();
  check.dim_spectral = spectral.dim();
  if (check.dim_direct != check.dim_spectral) return check;
  if (check.dim_direct == 0) {
    check.ok = true;
    return check;
  }
  Subspace direct = direct_sum(embed_h0(pair.n0, op.n1),
                               embed_h1(pair.n1, op.n0), tol);
  check.max_angle = std::asin(subspace_gap(direct, spectral));
  check.ok = check.max_angle <= tol.sub;
  return check;
}

Subspace build_q(const BlockOperator& op, const Tolerances& tol) {
  require_hypothesis(op, tol);
  Matrix b = assemble(op);
  Subspace below = spectral_subspace_below(b, op.lambda, tol);
  KernelPair pair = kernel_decomposition(op, tol);
  Subspace embedded = embed_h0(pair.n0, op.n1);
  Matrix span(op.n0 + op.n1, below.dim() + embedded.dim());
  span << below.basis(), embedded.basis();
  Subspace q = Subspace::span_of(span, tol);
  if (q.dim() != op.n0)
    throw DimensionMismatch(
        "build_q: invariant subspace dimension " + std::to_string(q.dim()) +
        " != n0 = " + std::to_string(op.n0) +
        " (eigenvalue clustering at lambda failed)");
  return q;
}

Subspace embed_h0(const Subspace& s, Index n1) {
  Matrix basis = Matrix::Zero(s.ambient() + n1, s.dim());
  basis.topRows(s.ambient()) = s.basis();
  return Subspace(std::move(basis), Tolerances{});
}

Subspace embed_h1(const Subspace& s, Index n0) {
  Matrix basis = Matrix::Zero(n0 + s.ambient(), s.dim());
  basis.bottomRows(s.ambient()) = s.basis();
  return Subspace(std::move(basis), Tolerances{});
}

Subspace h0_subspace(Index n0, Index n1) {
  Matrix basis = Matrix::Zero(n0 + n1, n0);
  basis.topRows(n0) = Matrix::Identity(n0, n0);
  return Subspace(std::move(basis), Tolerances{});
}

TwoProjectionGeometry two_projection_geometry(const Subspace& s_p,
                                              const Subspace& s_q,
                                              const Tolerances& tol) {
  if (s_p.ambient() != s_q.ambient())
    throw AmbientMismatch("two_projection_geometry: ambient dimensions differ");
  Subspace p_perp = complement(s_p, tol);
  Subspace q_perp = complement(s_q, tol);
  TwoProjectionGeometry geo;
  geo.dim_m11 = intersect(s_p, s_q, tol).dim();
  geo.dim_m10 = intersect(s_p, q_perp, tol).dim();
  geo.dim_m01 = intersect(p_perp, s_q, tol).dim();
  geo.dim_m00 = intersect(p_perp, q_perp, tol).dim();
  geo.dim_mprime = s_p.ambient() -
                   (geo.dim_m00 + geo.dim_m01 + geo.dim_m10 + geo.dim_m11);
  geo.norm_p_minus_q =
      std::clamp(spectral_norm(s_p.projector() - s_q.projector()), 0.0, 1.0);
  return geo;
}

GraphExtract graph_extract(const Subspace& s_q, Index n0,
                           const Tolerances& tol) {
  if (n0 < 0 || n0 > s_q.ambient())
    throw DimensionMismatch("graph_extract: n0 out of range");
  if (s_q.dim() != n0)
    throw DimensionMismatch("graph_extract: dim(Q) != n0");
  Index n1 = s_q.ambient() - n0;
  if (n0 == 0) return {Matrix::Zero(n1, 0), 1.0};
  Matrix z0 = s_q.basis().topRows(n0);
  Matrix z1 = s_q.basis().bottomRows(n1);
  SvdResult dec = svd(z0);
  double smax = dec.sigma(0);
  double smin = dec.sigma(n0 - 1);
  if (smax <= 0.0 || smin <= tol.rank * smax)
    throw NotAGraph(
        "graph_extract: top block is numerically singular, subspace is not a "
        "graph over H0");
  GraphExtract out;
  out.cond_z0 = smax / smin;
  Matrix z0_inv = dec.w * dec.sigma.cwiseInverse().asDiagonal() * dec.u.adjoint();
  out.x = z1 * z0_inv;
  return out;
}

Subspace graph_subspace(const Matrix& x, const Tolerances& tol) {
  require_finite(x, "graph_subspace");
  Index n0 = x.cols();
  Index n1 = x.rows();
  Matrix span(n0 + n1, n0);
  span.topRows(n0) = Matrix::Identity(n0, n0);
  span.bottomRows(n1) = x;
  Subspace g = Subspace::span_of(span, tol);
  if (g.dim() != n0)
    throw DimensionMismatch("graph_subspace: rank collapse");
  return g;
}

NormRelations norm_relations(const Matrix& x) {
  require_finite(x, "norm_relations");
  NormRelations out;
  if (x.rows() == 0 || x.cols() == 0) {
    out.angles = RealVector::Zero(std::min(x.rows(), x.cols()));
    return out;
  }
  Eigen::JacobiSVD<Matrix> dec(x);
  RealVector sigma = dec.singularValues();
  out.norm_x = sigma(0);
  out.norm_p_minus_q = out.norm_x / std::sqrt(1.0 + out.norm_x * out.norm_x);
  out.angles.resize(sigma.size());
  for (Index i = 0; i < sigma.size(); ++i)
    out.angles(i) = std::atan(sigma(sigma.size() - 1 - i));
  return out;
}

}  // namespace riccert

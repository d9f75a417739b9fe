#include "riccert/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace riccert {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m))
    throw NonFinite(std::string(what) + ": non-finite entry");
}

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  // Largest singular value through the smaller Gram matrix; relative
  // accuracy at the top of the spectrum is eps-level at any scale.
  Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint())
                                     : Matrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram,
                                               Eigen::EigenvaluesOnly);
  double top = solver.eigenvalues().tail(1)(0);
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

Subspace::Subspace(Matrix basis, const Tolerances& tol) : basis_(std::move(basis)) {
  require_finite(basis_, "subspace basis");
  if (basis_.cols() > basis_.rows())
    throw DimensionMismatch("subspace dimension exceeds ambient dimension");
  if (basis_.cols() > 0) {
    Matrix gram = basis_.adjoint() * basis_;
    gram -= Matrix::Identity(basis_.cols(), basis_.cols());
    if (max_abs(gram) > tol.orth)
      throw AssertionFailure("subspace basis is not orthonormal at tol_orth");
  }
}

Subspace Subspace::span_of(const Matrix& spanning, const Tolerances& tol) {
  require_finite(spanning, "span_of");
  if (spanning.cols() == 0 || spanning.rows() == 0)
    return Subspace(spanning.rows());
  Eigen::JacobiSVD<Matrix> dec(spanning, Eigen::ComputeThinU);
  Index r = numerical_rank(dec.singularValues(), tol);
  return Subspace(dec.matrixU().leftCols(r), tol);
}

EigResult eig_hermitian(const Matrix& m, const Tolerances& tol) {
  require_finite(m, "eig_hermitian");
  if (m.rows() != m.cols())
    throw NonHermitian("eig_hermitian: matrix is not square");
  double scale = max_abs(m);
  if (max_abs(m - m.adjoint()) > tol.orth * std::max(1.0, scale))
    throw NonHermitian("eig_hermitian: matrix is not Hermitian at tol_orth");
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("eig_hermitian: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SvdResult svd(const Matrix& m) {
  require_finite(m, "svd");
  if (m.rows() == 0 || m.cols() == 0) {
    return {Matrix::Identity(m.rows(), m.rows()), RealVector::Zero(0),
            Matrix::Identity(m.cols(), m.cols())};
  }
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

Index numerical_rank(const RealVector& sigma, const Tolerances& tol,
                     double scale) {
  if (sigma.size() == 0) return 0;
  double cutoff = tol.rank * std::max(sigma(0), scale);
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cutoff) ++r;
  return r;
}

Matrix polar_isometry(const Matrix& v, const Tolerances& tol) {
  require_finite(v, "polar_isometry");
  if (v.rows() == 0 || v.cols() == 0) return Matrix::Zero(v.cols(), v.rows());
  Eigen::JacobiSVD<Matrix> dec(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Index r = numerical_rank(dec.singularValues(), tol);
  // v = U S W^H, so v^H = W S U^H and (v v^H)^{1/2} = U S U^H; the isometric
  // factor is W_r U_r^H.
  return dec.matrixV().leftCols(r) * dec.matrixU().leftCols(r).adjoint();
}

Subspace kernel(const Matrix& m, const Tolerances& tol, double scale) {
  require_finite(m, "kernel");
  if (m.cols() == 0) return Subspace(0);
  if (m.rows() == 0)
    return Subspace(Matrix::Identity(m.cols(), m.cols()), tol);
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullV);
  Index r = numerical_rank(dec.singularValues(), tol, scale);
  return Subspace(dec.matrixV().rightCols(m.cols() - r), tol);
}

Subspace range(const Matrix& m, const Tolerances& tol) {
  require_finite(m, "range");
  if (m.rows() == 0 || m.cols() == 0) return Subspace(m.rows());
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeThinU);
  Index r = numerical_rank(dec.singularValues(), tol);
  return Subspace(dec.matrixU().leftCols(r), tol);
}

Subspace complement(const Subspace& s, const Tolerances& tol) {
  if (s.dim() == 0) return Subspace(Matrix::Identity(s.ambient(), s.ambient()), tol);
  return kernel(s.basis().adjoint(), tol);
}

Subspace intersect(const Subspace& s1, const Subspace& s2,
                   const Tolerances& tol) {
  if (s1.ambient() != s2.ambient())
    throw AmbientMismatch("intersect: ambient dimensions differ");
  Index n = s1.ambient();
  if (n == 0 || s1.dim() == 0 || s2.dim() == 0) return Subspace(n);
  // Joint null space of the stacked complements [I-P1; I-P2]. Both blocks
  // are Hermitian idempotent, so the stacked singular values squared are
  // exactly the eigenvalues of (I-P1) + (I-P2). A unit vector at distance
  // d1, d2 from the two subspaces scores d1^2 + d2^2, so cut at tol.sub^2.
  Matrix gram = 2.0 * Matrix::Identity(n, n) - s1.projector() - s2.projector();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (gram + gram.adjoint()));
  const RealVector& evals = solver.eigenvalues();
  Index keep = 0;
  while (keep < n && evals(keep) <= tol.sub * tol.sub) ++keep;
  return Subspace(solver.eigenvectors().leftCols(keep), tol);
}

RealVector principal_angles(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient() != s2.ambient())
    throw AmbientMismatch("principal_angles: ambient dimensions differ");
  Index k = std::min(s1.dim(), s2.dim());
  if (k == 0) return RealVector::Zero(0);
  Eigen::JacobiSVD<Matrix> dec(s1.basis().adjoint() * s2.basis());
  RealVector angles(k);
  for (Index i = 0; i < k; ++i) {
    double c = std::clamp(dec.singularValues()(i), 0.0, 1.0);
    angles(i) = std::acos(c);
  }
  return angles;  // sigma descending => angles ascending
}

bool is_invariant(const Matrix& m, const Subspace& s, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() != s.ambient())
    throw AmbientMismatch("is_invariant: matrix side must equal ambient dim");
  require_finite(m, "is_invariant");
  if (s.dim() == 0) return true;
  Matrix image = m * s.basis();
  Matrix leak = image - s.basis() * (s.basis().adjoint() * image);
  return spectral_norm(leak) <= tol.rank * spectral_norm(m);
}

double subspace_gap(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient() != s2.ambient())
    throw AmbientMismatch("subspace_gap: ambient dimensions differ");
  if (s1.dim() == 0 && s2.dim() == 0) return 0.0;
  if (s1.dim() == 0 || s2.dim() == 0) return 1.0;
  // sin of the largest principal angle, computed through the projection
  // leak; arccos of Gram singular values cannot resolve angles below
  // sqrt(eps).
  Matrix leak12 = s2.basis() - s1.basis() * (s1.basis().adjoint() * s2.basis());
  Matrix leak21 = s1.basis() - s2.basis() * (s2.basis().adjoint() * s1.basis());
  return std::min(1.0, std::max(spectral_norm(leak12), spectral_norm(leak21)));
}

bool subspace_equal(const Subspace& s1, const Subspace& s2, double max_angle) {
  if (s1.ambient() != s2.ambient())
    throw AmbientMismatch("subspace_equal: ambient dimensions differ");
  if (s1.dim() != s2.dim()) return false;
  if (s1.dim() == 0) return true;
  return subspace_gap(s1, s2) <= std::sin(max_angle) + 1e-15;
}

bool subspace_contains(const Subspace& outer, const Subspace& inner,
                       double max_angle) {
  if (outer.ambient() != inner.ambient())
    throw AmbientMismatch("subspace_contains: ambient dimensions differ");
  if (inner.dim() == 0) return true;
  if (inner.dim() > outer.dim()) return false;
  Matrix leak = inner.basis() - outer.basis() * (outer.basis().adjoint() * inner.basis());
  return spectral_norm(leak) <= std::sin(max_angle) + 1e-15;
}

Subspace direct_sum(const Subspace& s1, const Subspace& s2,
                    const Tolerances& tol) {
  if (s1.ambient() != s2.ambient())
    throw AmbientMismatch("direct_sum: ambient dimensions differ");
  Matrix basis(s1.ambient(), s1.dim() + s2.dim());
  basis << s1.basis(), s2.basis();
  return Subspace(std::move(basis), tol);
}

}  // namespace riccert

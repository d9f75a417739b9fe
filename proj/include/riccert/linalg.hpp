#pragma once

#include "riccert/types.hpp"

namespace riccert {

double max_abs(const Matrix& m);
double spectral_norm(const Matrix& m);
bool all_finite(const Matrix& m);
void require_finite(const Matrix& m, const char* what);

/// Closed subspace of C^n held as an orthonormal column basis.
/// dim() == 0 encodes the trivial subspace {0}.
class Subspace {
public:
  Subspace() : basis_(0, 0) {}

  explicit Subspace(Index ambient_dim)
      : basis_(Matrix::Zero(ambient_dim, 0)) {}

  /// Wraps an already-orthonormal basis; throws if columns fail the
  /// orthonormality check at tol.orth.
  Subspace(Matrix basis, const Tolerances& tol);

  /// Orthonormal basis of the column span of `spanning`, rank-truncated
  /// at tol.rank relative to the largest singular value.
  static Subspace span_of(const Matrix& spanning, const Tolerances& tol);

  Index ambient() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }

private:
  Matrix basis_;
};

struct EigResult {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns match values
};

/// Hermitian eigendecomposition. Symmetry is checked at tol.orth relative
/// to max|entry|, then the matrix is symmetrized before solving.
EigResult eig_hermitian(const Matrix& m, const Tolerances& tol = {});

struct SvdResult {
  Matrix u;          // rows x rows, unitary
  RealVector sigma;  // min(rows, cols) values, descending
  Matrix w;          // cols x cols, unitary; m = u * diag(sigma) * w^H
};

SvdResult svd(const Matrix& m);

/// Numerical rank at tol.rank relative to max(largest singular value, scale).
/// Pass the assembly scale when the matrix is a difference of O(scale)
/// quantities, so a matrix that is zero up to rounding reads as rank 0.
Index numerical_rank(const RealVector& sigma, const Tolerances& tol,
                     double scale = 0.0);

/// Partial isometry S : H0 -> H1 from the polar factorization
/// V^H = S (V V^H)^{1/2}, with initial space the numerical range of V and
/// final space the numerical range of V^H.
Matrix polar_isometry(const Matrix& v, const Tolerances& tol = {});

/// Numerical null space: right singular vectors at or below the rank cutoff.
Subspace kernel(const Matrix& m, const Tolerances& tol = {},
                double scale = 0.0);

/// Numerical column span: left singular vectors above the rank cutoff.
Subspace range(const Matrix& m, const Tolerances& tol = {});

/// Orthogonal complement within the ambient space.
Subspace complement(const Subspace& s, const Tolerances& tol = {});

/// Intersection computed as the joint null space of the two complement
/// projections, with an absolute cutoff of tol.sub on the stacked singular
/// values.
Subspace intersect(const Subspace& s1, const Subspace& s2,
                   const Tolerances& tol = {});

/// Principal angles in [0, pi/2], ascending; min(dim, dim) of them.
RealVector principal_angles(const Subspace& s1, const Subspace& s2);

/// True iff ||(I - P_S) M B_S|| <= tol.rank * ||M|| in spectral norm.
bool is_invariant(const Matrix& m, const Subspace& s,
                  const Tolerances& tol = {});

/// sin of the largest principal angle between equal-rank subspaces,
/// computed through projection leaks (accurate for tiny angles, unlike
/// arccos of Gram singular values). Returns 1 when only one side is
/// trivial.
double subspace_gap(const Subspace& s1, const Subspace& s2);

bool subspace_equal(const Subspace& s1, const Subspace& s2, double max_angle);
bool subspace_contains(const Subspace& outer, const Subspace& inner,
                       double max_angle);

/// Concatenates bases of two mutually orthogonal subspaces of the same
/// ambient space.
Subspace direct_sum(const Subspace& s1, const Subspace& s2,
                    const Tolerances& tol = {});

}  // namespace riccert

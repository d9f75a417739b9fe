#pragma once

#include "riccert/model.hpp"

namespace riccert {

/// Span of eigenvectors with eigenvalue < lambda - w, where
/// w = tol.eig * max(1, ||B||).
Subspace spectral_subspace_below(const Matrix& b, double lambda,
                                 const Tolerances& tol = {});

/// Span of eigenvectors with |eigenvalue - lambda| <= w.
Subspace eigenspace_at(const Matrix& b, double lambda,
                       const Tolerances& tol = {});

/// N0 = Ker(A0-lambda) /\ Ker(V^H) in H0 and N1 = Ker(A1-lambda) /\ Ker(V)
/// in H1. Computed directly in the block factors; the embedded direct sum
/// equals Ker(B-lambda) (see canon_cross_check).
struct KernelPair {
  Subspace n0;
  Subspace n1;
};

KernelPair kernel_decomposition(const BlockOperator& op,
                                const Tolerances& tol = {});

struct CanonCheck {
  Index dim_direct = 0;    // dim N0 + dim N1
  Index dim_spectral = 0;  // dim Ker(B - lambda)
  double max_angle = 0.0;  // max principal angle when dims agree
  bool ok = false;
};

/// Cross-checks the kernel split of B - lambda against eigenvector
/// clustering on the assembled matrix.
CanonCheck canon_cross_check(const BlockOperator& op,
                             const Tolerances& tol = {});
CanonCheck canon_cross_check(const BlockOperator& op, const KernelPair& pair,
                             const Tolerances& tol);

/// The B-invariant subspace
///   Q = Ran E_B((-inf, lambda)) (+) embedded (Ker(A0-lambda) /\ Ker V^H),
/// which is always a graph over H0 and therefore has dimension exactly n0.
/// Throws DimensionMismatch if numerical clustering broke that count.
Subspace build_q(const BlockOperator& op, const Tolerances& tol = {});

/// Embeds a subspace of H0 (resp. H1) into H0 (+) H1.
Subspace embed_h0(const Subspace& s, Index n1);
Subspace embed_h1(const Subspace& s, Index n0);

/// First-factor subspace H0 (+) {0} as a subspace of C^{n0+n1}.
Subspace h0_subspace(Index n0, Index n1);

struct TwoProjectionGeometry {
  Index dim_m00 = 0;  // Ran(I-P) /\ Ran(I-Q)
  Index dim_m01 = 0;  // Ran(I-P) /\ Ran Q
  Index dim_m10 = 0;  // Ran P /\ Ran(I-Q)
  Index dim_m11 = 0;  // Ran P /\ Ran Q
  Index dim_mprime = 0;
  double norm_p_minus_q = 0.0;
};

/// Dimensions of the canonical five-way splitting induced by the ordered
/// projection pair (P, Q) plus ||P - Q||. M01 = M10 = {0} iff Ran Q is a
/// graph over Ran P.
TwoProjectionGeometry two_projection_geometry(const Subspace& s_p,
                                              const Subspace& s_q,
                                              const Tolerances& tol = {});

struct GraphExtract {
  Matrix x;             // n1 x n0
  double cond_z0 = 0.0; // condition number of the top block
};

/// Writes the basis rows as [Z0; Z1] and solves X = Z1 Z0^{-1} via an SVD
/// pseudo-solve. Throws NotAGraph when cond(Z0) exceeds 1/tol.rank.
GraphExtract graph_extract(const Subspace& s_q, Index n0,
                           const Tolerances& tol = {});

/// Orthonormal basis of {x (+) Xx : x in H0}.
Subspace graph_subspace(const Matrix& x, const Tolerances& tol = {});

struct NormRelations {
  double norm_x = 0.0;
  double norm_p_minus_q = 0.0;  // ||X|| / sqrt(1 + ||X||^2)
  RealVector angles;            // arctan sigma_i(X), ascending
};

NormRelations norm_relations(const Matrix& x);

}  // namespace riccert

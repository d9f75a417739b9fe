#pragma once

#include "riccert/projections.hpp"

#include <string>
#include <vector>

namespace riccert {

/// Residual bound used throughout: solutions must satisfy
/// ||A1 X - X A0 - X V X + V^H|| <= residual_tolerance * ||B||.
inline constexpr double residual_tolerance = 1e-10;

/// A singular value counts as 1 when within this window.
inline constexpr double mu1_window = 1e-8;

/// Tolerance for the degenerate-structure identities (norm-attaining
/// subspaces, partial-isometry restriction, reduction clauses).
inline constexpr double degenerate_tolerance = 1e-8;

/// Spectral norm of A1 X - X A0 - X V X + V^H.
double residual(const BlockOperator& op, const Matrix& x);

struct GraphSolution {
  enum class Provenance { from_q, family };

  Matrix x;                    // n1 x n0
  RealVector singular_values;  // descending
  double norm = 0.0;           // largest singular value
  double residual = 0.0;
  Index mu1_multiplicity = 0;  // singular values within mu1_window of 1
  Provenance provenance = Provenance::from_q;
  std::string family_id;       // non-empty for family members
  bool noncontractive_family = false;  // ||T|| > 1 was requested
  double cond_z0 = 1.0;        // graph extraction conditioning (from_q)
};

/// The distinguished contractive solution: X extracted from the invariant
/// subspace Q. Never produced by Riccati iteration; the equation is only
/// used as a residual check.
GraphSolution solve(const BlockOperator& op, const Tolerances& tol = {});

struct SolveOutput {
  GraphSolution sol;
  Subspace q;  // the subspace X was extracted from
};

SolveOutput solve_with_subspace(const BlockOperator& op,
                                const Tolerances& tol = {});

/// Ker(I - X^H X) resp. Ker(I - X X^H): singular subspaces for the
/// singular value 1.
Subspace norm_attaining_right(const Matrix& x, const Tolerances& tol = {});
Subspace norm_attaining_left(const Matrix& x, const Tolerances& tol = {});

struct KPair {
  Subspace k0;  // in H0
  Subspace k1;  // in H1
};

/// Maximal V V^H-invariant subspace K0 inside
///   W0 = Ker(A0-lambda) /\ Ran V /\ {x : V^H x in Ker(A1-lambda)},
/// by the shrinking fixed-point iteration K <- K /\ {x in K : V V^H x in K}
/// (at most n0 steps, dimension is strictly monotone until it stabilizes);
/// K1 symmetric with V^H V.
KPair compute_k0_k1(const BlockOperator& op, const Tolerances& tol = {});

struct CheckResult {
  std::string name;
  bool ok = false;
  double defect = 0.0;
};

/// Lemma-level relations between K0 and K1: V^H maps K0 onto K1, V maps K1
/// onto K0, and V maps H1 (-) K1 into H0 (-) K0.
std::vector<CheckResult> k0_k1_relations(const BlockOperator& op,
                                         const KPair& kk,
                                         const Tolerances& tol = {});

struct KarkarReport {
  bool kernel_match_k0 = false;  // Ker(I - X^H X) == K0
  bool kernel_match_k1 = false;  // Ker(I - X X^H) == K1
  double isometry_defect = 0.0;  // ||(X + S) restricted to K0||
  bool isometry_ok = false;
  bool range_match = false;      // span(X K0) == K1
  std::vector<CheckResult> clauses() const;
  bool all() const;
};

/// Degenerate-structure verification: the norm-attaining subspaces equal
/// K0/K1 and X acts as minus the partial isometry of V on K0.
KarkarReport verify_karkar(const BlockOperator& op, const GraphSolution& sol,
                           const Subspace& k0, const Subspace& k1,
                           const Tolerances& tol = {});

/// Inclusion/reduction clauses on E0 = Ker(I - X^H X) and the mirror side
/// E1 = Ker(I - X X^H): both sit inside the lambda-kernels, are annihilated
/// by X V X - V^H (resp. the adjoint identity), and are invariant under
/// V X and V V^H (resp. V^H X^H and V^H V).
std::vector<CheckResult> lemma_side_checks(const BlockOperator& op,
                                           const GraphSolution& sol,
                                           const Tolerances& tol = {});

struct UniquenessVerdict {
  bool condition_i = false;   // N0 or N1 trivial
  bool condition_ii = false;  // K0 trivial
  bool unique = false;
  bool strictly_contractive = false;
  bool isolated = false;
};

/// Classifies whether the distinguished solution is the unique contractive
/// solution and whether it is isolated. Throws InconsistentVerdict when the
/// numerical clauses disagree with each other.
UniquenessVerdict classify_uniqueness(const BlockOperator& op,
                                      const GraphSolution& sol,
                                      const Subspace& k0,
                                      const Tolerances& tol = {});
UniquenessVerdict classify_uniqueness(const KernelPair& pair,
                                      const GraphSolution& sol,
                                      const Subspace& k0);

/// Member of the solution family that agrees with sol.x off N0 and acts as
/// T (expressed in the orthonormal bases fixed by kernel_decomposition) from
/// N0 into N1. T must be dim(N1) x dim(N0).
GraphSolution family_member(const BlockOperator& op, const GraphSolution& sol,
                            const Matrix& t, const Tolerances& tol = {});

}  // namespace riccert

#include "riccert/riccati.hpp"

#include <cmath>
#include <sstream>

namespace riccert {

double residual(const BlockOperator& op, const Matrix& x) {
  if (x.rows() != op.n1 || x.cols() != op.n0)
    throw ShapeMismatch("residual: X must be n1 x n0");
  require_finite(x, "residual");
  Matrix r = op.a1 * x - x * op.a0 - x * op.v * x + op.v.adjoint();
  return spectral_norm(r);
}

namespace {

GraphSolution solution_from_matrix(const BlockOperator& op, Matrix x,
                                   GraphSolution::Provenance provenance) {
  GraphSolution sol;
  sol.provenance = provenance;
  sol.residual = residual(op, x);
  if (x.rows() > 0 && x.cols() > 0) {
    Eigen::JacobiSVD<Matrix> dec(x);
    sol.singular_values = dec.singularValues();
    sol.norm = sol.singular_values(0);
  } else {
    sol.singular_values = RealVector::Zero(0);
  }
  for (Index i = 0; i < sol.singular_values.size(); ++i)
    if (std::abs(sol.singular_values(i) - 1.0) <= mu1_window)
      ++sol.mu1_multiplicity;
  sol.x = std::move(x);
  return sol;
}

}  // namespace

SolveOutput solve_with_subspace(const BlockOperator& op,
                                const Tolerances& tol) {
  SolveOutput out;
  out.q = build_q(op, tol);
  GraphExtract extract = graph_extract(out.q, op.n0, tol);
  out.sol = solution_from_matrix(op, std::move(extract.x),
                                 GraphSolution::Provenance::from_q);
  out.sol.cond_z0 = extract.cond_z0;
  return out;
}

GraphSolution solve(const BlockOperator& op, const Tolerances& tol) {
  return solve_with_subspace(op, tol).sol;
}

Subspace norm_attaining_right(const Matrix& x, const Tolerances& tol) {
  if (x.rows() == 0 || x.cols() == 0) return Subspace(x.cols());
  SvdResult dec = svd(x);
  Index first = 0, last = 0;
  for (Index i = 0; i < dec.sigma.size(); ++i) {
    if (std::abs(dec.sigma(i) - 1.0) <= mu1_window) {
      if (last == first) first = i;
      last = i + 1;
    }
  }
  return Subspace(dec.w.middleCols(first, last - first), tol);
}

Subspace norm_attaining_left(const Matrix& x, const Tolerances& tol) {
  return norm_attaining_right(x.adjoint(), tol);
}

namespace {

/// {y : M y within `inside`} as the kernel of (I - P_inside) M, with the
/// rank cutoff anchored to the scale of M.
Subspace preimage_of(const Matrix& m, const Subspace& inside,
                     const Tolerances& tol) {
  Matrix leak = m - inside.basis() * (inside.basis().adjoint() * m);
  return kernel(leak, tol, m.norm());
}

Subspace maximal_invariant(const Matrix& gram, Subspace start,
                           const Tolerances& tol) {
  Subspace k = std::move(start);
  for (Index step = 0; step < gram.rows() && k.dim() > 0; ++step) {
    Subspace next = intersect(k, preimage_of(gram, k, tol), tol);
    if (next.dim() == k.dim()) break;
    k = std::move(next);
  }
  return k;
}

}  // namespace

KPair compute_k0_k1(const BlockOperator& op, const Tolerances& tol) {
  require_hypothesis(op, tol);
  Matrix shifted0 = op.a0 - op.lambda * Matrix::Identity(op.n0, op.n0);
  Matrix shifted1 = op.a1 - op.lambda * Matrix::Identity(op.n1, op.n1);
  Subspace ker_a0 = kernel(shifted0, tol, max_abs(op.a0) + std::abs(op.lambda));
  Subspace ker_a1 = kernel(shifted1, tol, max_abs(op.a1) + std::abs(op.lambda));

  Subspace w0 = intersect(intersect(ker_a0, range(op.v, tol), tol),
                          preimage_of(op.v.adjoint(), ker_a1, tol), tol);
  Subspace w1 = intersect(intersect(ker_a1, range(op.v.adjoint(), tol), tol),
                          preimage_of(op.v, ker_a0, tol), tol);

  KPair kk;
  kk.k0 = maximal_invariant(op.v * op.v.adjoint(), std::move(w0), tol);
  kk.k1 = maximal_invariant(op.v.adjoint() * op.v, std::move(w1), tol);
  return kk;
}

std::vector<CheckResult> k0_k1_relations(const BlockOperator& op,
                                         const KPair& kk,
                                         const Tolerances& tol) {
  std::vector<CheckResult> out;
  Subspace vh_k0 = Subspace::span_of(op.v.adjoint() * kk.k0.basis(), tol);
  Subspace v_k1 = Subspace::span_of(op.v * kk.k1.basis(), tol);
  out.push_back({"k0k1_ran_vh_k0_is_k1", subspace_equal(vh_k0, kk.k1, tol.sub),
                 vh_k0.dim() == kk.k1.dim() ? subspace_gap(vh_k0, kk.k1) : 1.0});
  out.push_back({"k0k1_ran_v_k1_is_k0", subspace_equal(v_k1, kk.k0, tol.sub),
                 v_k1.dim() == kk.k0.dim() ? subspace_gap(v_k1, kk.k0) : 1.0});
  Subspace k1_perp = complement(kk.k1, tol);
  double leak = kk.k0.dim() > 0 && k1_perp.dim() > 0
                    ? spectral_norm(kk.k0.projector() * op.v * k1_perp.basis())
                    : 0.0;
  out.push_back({"k0k1_v_respects_complements", leak <= degenerate_tolerance, leak});
  return out;
}

std::vector<CheckResult> KarkarReport::clauses() const {
  return {
      {"karkar_kernel_is_k0", kernel_match_k0, 0.0},
      {"karkar_kernel_is_k1", kernel_match_k1, 0.0},
      {"karkar_x_is_minus_isometry_on_k0", isometry_ok, isometry_defect},
      {"karkar_x_maps_k0_onto_k1", range_match, 0.0},
  };
}

bool KarkarReport::all() const {
  return kernel_match_k0 && kernel_match_k1 && isometry_ok && range_match;
}

KarkarReport verify_karkar(const BlockOperator& op, const GraphSolution& sol,
                           const Subspace& k0, const Subspace& k1,
                           const Tolerances& tol) {
  KarkarReport report;
  Subspace e0 = norm_attaining_right(sol.x, tol);
  Subspace e1 = norm_attaining_left(sol.x, tol);
  report.kernel_match_k0 = subspace_equal(e0, k0, tol.sub);
  report.kernel_match_k1 = subspace_equal(e1, k1, tol.sub);
  if (k0.dim() > 0) {
    Matrix s = polar_isometry(op.v, tol);
    report.isometry_defect = spectral_norm((sol.x + s) * k0.basis());
  }
  report.isometry_ok = report.isometry_defect <= degenerate_tolerance;
  Subspace x_k0 = Subspace::span_of(sol.x * k0.basis(), tol);
  report.range_match = subspace_equal(x_k0, k1, tol.sub);
  return report;
}

namespace {

CheckResult norm_clause(std::string name, const Matrix& m, double scale) {
  double defect = spectral_norm(m) / std::max(1.0, scale);
  bool ok = defect <= degenerate_tolerance;
  return {std::move(name), ok, defect};
}

CheckResult invariance_clause(std::string name, const Matrix& m,
                              const Subspace& s) {
  bool ok = true;
  double defect = 0.0;
  if (s.dim() > 0) {
    Matrix image = m * s.basis();
    Matrix leak = image - s.basis() * (s.basis().adjoint() * image);
    defect = spectral_norm(leak) / std::max(1.0, spectral_norm(m));
    ok = defect <= degenerate_tolerance;
  }
  return {std::move(name), ok, defect};
}

}  // namespace

std::vector<CheckResult> lemma_side_checks(const BlockOperator& op,
                                           const GraphSolution& sol,
                                           const Tolerances& tol) {
  const Matrix& x = sol.x;
  Matrix shifted0 = op.a0 - op.lambda * Matrix::Identity(op.n0, op.n0);
  Matrix shifted1 = op.a1 - op.lambda * Matrix::Identity(op.n1, op.n1);
  Subspace e0 = norm_attaining_right(x, tol);
  Subspace e1 = norm_attaining_left(x, tol);
  double scale0 = spectral_norm(shifted0);
  double scale1 = spectral_norm(shifted1);
  double vscale = spectral_norm(op.v);

  std::vector<CheckResult> out;
  if (e0.dim() > 0) {
    out.push_back(norm_clause("side_e0_in_ker_a0", shifted0 * e0.basis(), scale0));
    out.push_back(norm_clause("side_x_e0_in_ker_a1",
                              shifted1 * (x * e0.basis()), scale1));
    out.push_back(norm_clause("side_xvx_equals_vh_on_e0",
                              (x * op.v * x - op.v.adjoint()) * e0.basis(),
                              vscale));
  } else {
    out.push_back({"side_e0_in_ker_a0", true, 0.0});
    out.push_back({"side_x_e0_in_ker_a1", true, 0.0});
    out.push_back({"side_xvx_equals_vh_on_e0", true, 0.0});
  }
  out.push_back(invariance_clause("side_vx_invariant_e0", op.v * x, e0));
  out.push_back(
      invariance_clause("side_vvh_invariant_e0", op.v * op.v.adjoint(), e0));

  if (e1.dim() > 0) {
    out.push_back(norm_clause("side_e1_in_ker_a1", shifted1 * e1.basis(), scale1));
    out.push_back(norm_clause("side_xh_e1_in_ker_a0",
                              shifted0 * (x.adjoint() * e1.basis()), scale0));
    out.push_back(norm_clause(
        "side_xhvhxh_equals_v_on_e1",
        (x.adjoint() * op.v.adjoint() * x.adjoint() - op.v) * e1.basis(),
        vscale));
  } else {
    out.push_back({"side_e1_in_ker_a1", true, 0.0});
    out.push_back({"side_xh_e1_in_ker_a0", true, 0.0});
    out.push_back({"side_xhvhxh_equals_v_on_e1", true, 0.0});
  }
  out.push_back(invariance_clause("side_vhxh_invariant_e1",
                                  op.v.adjoint() * x.adjoint(), e1));
  out.push_back(invariance_clause("side_vhv_invariant_e1",
                                  op.v.adjoint() * op.v, e1));
  return out;
}

UniquenessVerdict classify_uniqueness(const BlockOperator& op,
                                      const GraphSolution& sol,
                                      const Subspace& k0,
                                      const Tolerances& tol) {
  return classify_uniqueness(kernel_decomposition(op, tol), sol, k0);
}

UniquenessVerdict classify_uniqueness(const KernelPair& pair,
                                      const GraphSolution& sol,
                                      const Subspace& k0) {
  UniquenessVerdict verdict;
  verdict.condition_i = pair.n0.dim() == 0 || pair.n1.dim() == 0;
  verdict.condition_ii = k0.dim() == 0;
  verdict.unique = verdict.condition_i && verdict.condition_ii;
  verdict.strictly_contractive = sol.mu1_multiplicity == 0;
  verdict.isolated = verdict.condition_i;
  if (verdict.unique !=
      (verdict.strictly_contractive && verdict.condition_i)) {
    std::ostringstream msg;
    msg << "uniqueness clauses disagree: dim K0 = " << k0.dim()
        << " but mu1 multiplicity = " << sol.mu1_multiplicity;
    throw InconsistentVerdict(msg.str());
  }
  return verdict;
}

GraphSolution family_member(const BlockOperator& op, const GraphSolution& sol,
                            const Matrix& t, const Tolerances& tol) {
  KernelPair pair = kernel_decomposition(op, tol);
  if (pair.n0.dim() == 0 || pair.n1.dim() == 0)
    throw NoKernelCoupling(
        "family_member: both kernel intersections must be nontrivial");
  if (t.rows() != pair.n1.dim() || t.cols() != pair.n0.dim())
    throw ShapeMismatch("family_member: T must be dim(N1) x dim(N0)");
  require_finite(t, "family_member: T");

  Matrix xt = sol.x + pair.n1.basis() * t * pair.n0.basis().adjoint();
  GraphSolution member = solution_from_matrix(
      op, std::move(xt), GraphSolution::Provenance::family);
  double tnorm = spectral_norm(t);
  std::ostringstream id;
  id << "T(" << t.rows() << "x" << t.cols() << ", norm=" << tnorm << ")";
  member.family_id = id.str();
  member.noncontractive_family = tnorm > 1.0 + mu1_window;
  return member;
}

}  // namespace riccert

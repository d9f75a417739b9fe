#include "riccert/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace riccert {

SpectralShift spectral_shift(const BlockOperator& op, const Tolerances& tol) {
  require_hypothesis(op, tol);
  EigResult ea = eig_hermitian(assemble_diagonal(op), tol);
  EigResult eb = eig_hermitian(assemble(op), tol);
  Index n = ea.values.size();
  SpectralShift shift;
  shift.delta_minus = ea.values(0) - eb.values(0);
  shift.delta_plus = eb.values(n - 1) - ea.values(n - 1);
  double scale = std::max(std::abs(eb.values(0)), std::abs(eb.values(n - 1)));
  double w = tol.eig_window(scale);
  if (shift.delta_minus < -w || shift.delta_plus < -w) {
    std::ostringstream msg;
    msg << "spectral_shift: negative edge shift (delta- = " << shift.delta_minus
        << ", delta+ = " << shift.delta_plus
        << "); shifts are nonnegative for off-diagonal perturbations";
    throw AssertionFailure(msg.str());
  }
  if (shift.delta_minus < 0.0 || shift.delta_plus < 0.0) shift.clamped = true;
  shift.delta_minus = std::max(0.0, shift.delta_minus);
  shift.delta_plus = std::max(0.0, shift.delta_plus);
  shift.delta = std::max(shift.delta_minus, shift.delta_plus);
  double vnorm = spectral_norm(op.v);
  if (shift.delta > vnorm + w)
    throw AssertionFailure("spectral_shift: delta exceeds ||V||");
  return shift;
}

UpperBounds upper_bounds(double d, double vnorm) {
  if (d < 0.0 || vnorm < 0.0)
    throw NegativeInput("upper_bounds: d and vnorm must be >= 0");
  if (vnorm == 0.0) return {0.0, 0.0};
  if (d == 0.0) return {1.0, std::numbers::sqrt2 / 2.0};
  double half = 0.5 * std::atan(2.0 * vnorm / d);
  return {std::tan(half), std::sin(half)};
}

LowerBounds lower_bounds(double delta, double vnorm) {
  if (vnorm <= 0.0 || delta <= 0.0) return {0.0, 0.0};
  return {delta / vnorm, delta / std::hypot(delta, vnorm)};
}

std::vector<std::string> CertificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.ok) out.push_back(c.name);
  return out;
}

namespace {

void push(std::vector<CheckResult>& checks, std::string name, bool ok,
          double defect = 0.0) {
  checks.push_back({std::move(name), ok, defect});
}

}  // namespace

CertificationReport certify(const BlockOperator& op, const Tolerances& tol) {
  if (op.n0 < 1 || op.n1 < 1)
    throw ShapeMismatch("certify: both block factors must be nontrivial");
  ValidationReport valid = validate(op, tol);
  if (!valid.hermitian_ok || !valid.ordering_ok) require_hypothesis(op, tol);

  CertificationReport report;
  report.n0 = op.n0;
  report.n1 = op.n1;
  report.lambda = op.lambda;
  report.d = valid.d;
  report.vnorm = spectral_norm(op.v);

  Matrix b = assemble(op);
  EigResult eig_b = eig_hermitian(b, tol);
  Index n = eig_b.values.size();
  report.norm_b =
      std::max(std::abs(eig_b.values(0)), std::abs(eig_b.values(n - 1)));
  double w = tol.eig_window(report.norm_b);

  // d read from the ordered edges must agree with the distance between the
  // spectral sets; their equality is itself part of the hypothesis check.
  double d_pairwise = spectra_distance(op, tol);
  push(report.checks, "spectra_distance_consistency",
       std::abs(d_pairwise - report.d) <= w,
       std::abs(d_pairwise - report.d));

  SolveOutput solved = solve_with_subspace(op, tol);
  GraphSolution& sol = solved.sol;
  report.norm_x = sol.norm;
  report.residual = sol.residual;
  report.mu1_multiplicity = sol.mu1_multiplicity;

  push(report.checks, "contraction", sol.norm <= 1.0 + universal_slack,
       std::max(0.0, sol.norm - 1.0));
  push(report.checks, "riccati_residual",
       sol.residual <= residual_tolerance * std::max(report.norm_b, 1e-300),
       sol.residual);

  KernelPair pair = kernel_decomposition(op, tol);
  report.dim_n0 = pair.n0.dim();
  report.dim_n1 = pair.n1.dim();
  Matrix shifted0 = op.a0 - op.lambda * Matrix::Identity(op.n0, op.n0);
  Matrix shifted1 = op.a1 - op.lambda * Matrix::Identity(op.n1, op.n1);
  report.dim_ker_a0 =
      kernel(shifted0, tol, max_abs(op.a0) + std::abs(op.lambda)).dim();
  report.dim_ker_a1 =
      kernel(shifted1, tol, max_abs(op.a1) + std::abs(op.lambda)).dim();

  double leak0 = pair.n0.dim() > 0 ? spectral_norm(sol.x * pair.n0.basis()) : 0.0;
  double leak1 =
      pair.n1.dim() > 0 ? spectral_norm(sol.x.adjoint() * pair.n1.basis()) : 0.0;
  push(report.checks, "n0_inside_ker_x", leak0 <= tol.sub, leak0);
  push(report.checks, "n1_inside_ker_xh", leak1 <= tol.sub, leak1);

  // A0 + V X is similar to B restricted to Q, so its spectrum is real and
  // stays at or below lambda.
  {
    Matrix a0vx = op.a0 + op.v * sol.x;
    Eigen::ComplexEigenSolver<Matrix> solver(a0vx);
    double max_re = -std::numeric_limits<double>::infinity();
    double max_im = 0.0;
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
      max_re = std::max(max_re, solver.eigenvalues()(i).real());
      max_im = std::max(max_im, std::abs(solver.eigenvalues()(i).imag()));
    }
    push(report.checks, "spec_a0_vx_below_lambda",
         max_re <= op.lambda + w && max_im <= w,
         std::max(max_re - op.lambda, max_im));
  }

  CanonCheck canon = canon_cross_check(op, pair, tol);
  push(report.checks, "kernel_split_matches_eigenspace", canon.ok,
       canon.max_angle);

  const Subspace& q = solved.q;
  Subspace h0 = h0_subspace(op.n0, op.n1);
  TwoProjectionGeometry geo = two_projection_geometry(h0, q, tol);
  report.norm_pq = geo.norm_p_minus_q;
  push(report.checks, "graph_criterion_m01_m10_trivial",
       geo.dim_m01 == 0 && geo.dim_m10 == 0,
       static_cast<double>(geo.dim_m01 + geo.dim_m10));
  push(report.checks, "pq_upper_universal",
       report.norm_pq <= std::numbers::sqrt2 / 2.0 + universal_slack,
       std::max(0.0, report.norm_pq - std::numbers::sqrt2 / 2.0));

  // Two routes to ||P-Q||: directly from the projectors and through the
  // norm identity on X.
  NormRelations relations = norm_relations(sol.x);
  push(report.checks, "pq_norm_identity",
       std::abs(relations.norm_p_minus_q - report.norm_pq) <= 1e-12 +
           1e-12 * report.norm_pq,
       std::abs(relations.norm_p_minus_q - report.norm_pq));

  SpectralShift shift = spectral_shift(op, tol);
  report.delta_minus = shift.delta_minus;
  report.delta_plus = shift.delta_plus;
  report.delta = shift.delta;
  push(report.checks, "shift_vs_vx_product",
       report.delta <= report.vnorm * report.norm_x + chain_slack,
       std::max(0.0, report.delta - report.vnorm * report.norm_x));

  UpperBounds ub = upper_bounds(report.d, report.vnorm);
  LowerBounds lb = lower_bounds(report.delta, report.vnorm);
  report.upper_x = ub.x;
  report.upper_pq = ub.pq;
  report.lower_x = lb.x;
  report.lower_pq = lb.pq;
  push(report.checks, "chain_x",
       lb.x - chain_slack <= report.norm_x &&
           report.norm_x <= ub.x + chain_slack,
       std::max(lb.x - report.norm_x, report.norm_x - ub.x));
  push(report.checks, "chain_pq",
       lb.pq - chain_slack <= report.norm_pq &&
           report.norm_pq <= ub.pq + chain_slack,
       std::max(lb.pq - report.norm_pq, report.norm_pq - ub.pq));

  // No spectrum of B strictly between the diagonal edges.
  {
    double margin = chain_slack * std::max(1.0, report.norm_b);
    bool empty = true;
    double worst = 0.0;
    for (Index i = 0; i < n; ++i) {
      double e = eig_b.values(i);
      if (e > valid.sup_spec_a0 + margin && e < valid.inf_spec_a1 - margin) {
        empty = false;
        worst = std::max(worst, std::min(e - valid.sup_spec_a0,
                                         valid.inf_spec_a1 - e));
      }
    }
    report.gap_empty = empty;
    push(report.checks, "gap_empty", report.d <= 0.0 || empty, worst);
  }

  push(report.checks, "mu1_multiplicity_bound",
       report.mu1_multiplicity <=
           std::min(report.dim_ker_a0, report.dim_ker_a1),
       static_cast<double>(report.mu1_multiplicity));

  KPair kk = compute_k0_k1(op, tol);
  report.dim_k0 = kk.k0.dim();
  report.dim_k1 = kk.k1.dim();
  for (auto& c : k0_k1_relations(op, kk, tol)) report.checks.push_back(c);

  KarkarReport karkar = verify_karkar(op, sol, kk.k0, kk.k1, tol);
  for (auto& c : karkar.clauses()) report.checks.push_back(c);

  for (auto& c : lemma_side_checks(op, sol, tol)) report.checks.push_back(c);

  report.verdict = classify_uniqueness(pair, sol, kk.k0);

  report.all_pass = true;
  for (const auto& c : report.checks)
    if (!c.ok) report.all_pass = false;
  return report;
}

}  // namespace riccert

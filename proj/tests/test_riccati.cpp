#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riccert/ensemble.hpp"
#include "riccert/riccati.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace riccert;
using namespace riccert::testing;

namespace {
const double sqrt2 = std::sqrt(2.0);
}  // namespace

TEST_CASE("residual vanishes exactly on known solutions") {
  CHECK(residual(scalar_op(-1.0, 1.0, 1.0), mat({{1.0 - sqrt2}})) <= 1e-12);
  CHECK(residual(scalar_op(-1.0, 1.0, 0.0), Matrix::Zero(1, 1)) == 0.0);
  CHECK(residual(scalar_op(0.0, 0.0, 1.0), mat({{-1.0}})) <= 1e-15);
  CHECK_THROWS_AS(residual(scalar_op(0.0, 0.0, 1.0), Matrix::Zero(2, 1)),
                  ShapeMismatch);
}

TEST_CASE("solve on the sharp scalar instance") {
  GraphSolution sol = solve(scalar_op(-1.0, 1.0, 1.0));
  CHECK(std::abs(sol.x(0, 0) - Complex(1.0 - sqrt2)) < 1e-12);
  CHECK(sol.norm == doctest::Approx(sqrt2 - 1.0).epsilon(1e-12));
  CHECK(sol.norm ==
        doctest::Approx(std::tan(std::numbers::pi / 8)).epsilon(1e-12));
  CHECK(sol.mu1_multiplicity == 0);
  CHECK(sol.residual <= 1e-14);
  CHECK(sol.provenance == GraphSolution::Provenance::from_q);
}

TEST_CASE("solve on the touching scalar instance attains norm 1") {
  GraphSolution sol = solve(scalar_op(0.0, 0.0, 1.0));
  CHECK(std::abs(sol.x(0, 0) - Complex(-1.0)) < 1e-12);
  CHECK(sol.norm == doctest::Approx(1.0));
  CHECK(sol.mu1_multiplicity == 1);

  sol = solve(scalar_op(-1.0, 1.0, 0.0));
  CHECK(max_abs(sol.x) == 0.0);
}

TEST_CASE("solve matches the scalar quadratic oracle") {
  Rng rng(57);
  for (int trial = 0; trial < 50; ++trial) {
    double a0 = -rng.uniform(0.0, 2.0);
    double a1 = rng.uniform(0.0, 2.0);
    Complex v = rng.gaussian_complex();
    if (std::abs(v) < 1e-3) v = 1.0;
    BlockOperator op = scalar_op(a0, a1, v);
    GraphSolution sol = solve(op);
    Complex expected = scalar_contractive_root(a0, a1, v);
    CHECK(std::abs(sol.x(0, 0) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
    CHECK(residual(op, sol.x) <= 1e-12);
  }
}

TEST_CASE("touching scalar instance has K0 = K1 = everything") {
  KPair kk = compute_k0_k1(scalar_op(0.0, 0.0, 1.0));
  CHECK(kk.k0.dim() == 1);
  CHECK(kk.k1.dim() == 1);

  kk = compute_k0_k1(scalar_op(-1.0, 1.0, 1.0));
  CHECK(kk.k0.dim() == 0);
  CHECK(kk.k1.dim() == 0);
}

TEST_CASE("fixed-point K0 matches the eigenspace enumeration oracle") {
  Tolerances tol;
  auto specs = ensemble_specs(60, 6, 101);
  int nontrivial = 0;
  for (const auto& spec : specs) {
    BlockOperator op = generate(spec);
    KPair kk = compute_k0_k1(op, tol);
    Subspace oracle = k0_oracle(op, tol);
    REQUIRE(kk.k0.dim() == oracle.dim());
    CHECK(subspace_equal(kk.k0, oracle, tol.sub));
    if (kk.k0.dim() > 0) ++nontrivial;
  }
  CHECK(nontrivial > 0);  // the ensemble must exercise the degenerate branch
}

TEST_CASE("K0/K1 relations hold on generated instances") {
  Tolerances tol;
  auto specs = ensemble_specs(40, 6, 19);
  for (const auto& spec : specs) {
    BlockOperator op = generate(spec);
    KPair kk = compute_k0_k1(op, tol);
    for (const auto& clause : k0_k1_relations(op, kk, tol)) CHECK(clause.ok);
  }
}

TEST_CASE("verify_karkar on scalar instances") {
  BlockOperator touching = scalar_op(0.0, 0.0, 1.0);
  GraphSolution sol = solve(touching);
  KPair kk = compute_k0_k1(touching);
  KarkarReport report = verify_karkar(touching, sol, kk.k0, kk.k1);
  CHECK(report.all());
  CHECK(report.isometry_defect <= 1e-12);

  BlockOperator imaginary = scalar_op(0.0, 0.0, Complex(0.0, 2.0));
  sol = solve(imaginary);
  CHECK(std::abs(sol.x(0, 0) - Complex(0.0, 1.0)) < 1e-12);
  kk = compute_k0_k1(imaginary);
  report = verify_karkar(imaginary, sol, kk.k0, kk.k1);
  CHECK(report.all());

  BlockOperator separated = scalar_op(-1.0, 1.0, 1.0);
  sol = solve(separated);
  kk = compute_k0_k1(separated);
  report = verify_karkar(separated, sol, kk.k0, kk.k1);
  CHECK(report.all());  // vacuous: K0 trivial, no singular value 1
  CHECK(kk.k0.dim() == 0);
}

TEST_CASE("lemma side checks across instance classes") {
  for (auto op : {scalar_op(-1.0, 1.0, 1.0), scalar_op(0.0, 0.0, 1.0)}) {
    GraphSolution sol = solve(op);
    for (const auto& clause : lemma_side_checks(op, sol)) CHECK(clause.ok);
  }

  GeneratorSpec spec;
  spec.n0 = 2;
  spec.n1 = 2;
  spec.ker0_dim = 2;
  spec.ker1_dim = 2;
  spec.gap = 0.0;
  spec.vnorm = 1.0;
  spec.seed = 77;
  BlockOperator degenerate = generate(spec);
  GraphSolution sol = solve(degenerate);
  CHECK(sol.mu1_multiplicity == 2);
  auto clauses = lemma_side_checks(degenerate, sol);
  CHECK(clauses.size() == 10);
  for (const auto& clause : clauses) CHECK(clause.ok);
}

TEST_CASE("classify_uniqueness across regimes") {
  BlockOperator separated = scalar_op(-1.0, 1.0, 1.0);
  GraphSolution sol = solve(separated);
  KPair kk = compute_k0_k1(separated);
  UniquenessVerdict verdict = classify_uniqueness(separated, sol, kk.k0);
  CHECK(verdict.unique);
  CHECK(verdict.strictly_contractive);
  CHECK(verdict.isolated);

  BlockOperator touching = scalar_op(0.0, 0.0, 1.0);
  sol = solve(touching);
  kk = compute_k0_k1(touching);
  verdict = classify_uniqueness(touching, sol, kk.k0);
  CHECK(verdict.condition_i);
  CHECK_FALSE(verdict.condition_ii);
  CHECK_FALSE(verdict.unique);
  CHECK_FALSE(verdict.strictly_contractive);
  CHECK(verdict.isolated);

  GeneratorSpec spec;
  spec.n0 = 2;
  spec.n1 = 2;
  spec.ker0_dim = 1;
  spec.ker1_dim = 1;
  spec.couple_kernels = true;
  spec.seed = 1;
  BlockOperator coupled = generate(spec);
  sol = solve(coupled);
  kk = compute_k0_k1(coupled);
  verdict = classify_uniqueness(coupled, sol, kk.k0);
  CHECK_FALSE(verdict.condition_i);
  CHECK_FALSE(verdict.unique);
  CHECK_FALSE(verdict.isolated);
  CHECK(verdict.strictly_contractive);
}

TEST_CASE("verdict invariants hold on the ensemble") {
  Tolerances tol;
  auto specs = ensemble_specs(40, 6, 23);
  for (const auto& spec : specs) {
    BlockOperator op = generate(spec);
    GraphSolution sol = solve(op, tol);
    KPair kk = compute_k0_k1(op, tol);
    UniquenessVerdict verdict = classify_uniqueness(op, sol, kk.k0, tol);
    if (verdict.unique) {
      CHECK(verdict.strictly_contractive);
      CHECK(verdict.isolated);
    }
    Matrix shifted0 = op.a0 - op.lambda * Matrix::Identity(op.n0, op.n0);
    Matrix shifted1 = op.a1 - op.lambda * Matrix::Identity(op.n1, op.n1);
    Index k0dim = kernel(shifted0, tol, max_abs(op.a0) + 1.0).dim();
    Index k1dim = kernel(shifted1, tol, max_abs(op.a1) + 1.0).dim();
    CHECK(sol.mu1_multiplicity <= std::min(k0dim, k1dim));
  }
}

TEST_CASE("family_member produces genuinely different solutions") {
  GeneratorSpec spec;
  spec.n0 = 2;
  spec.n1 = 2;
  spec.ker0_dim = 1;
  spec.ker1_dim = 1;
  spec.couple_kernels = true;
  spec.seed = 1;
  BlockOperator op = generate(spec);
  GraphSolution sol = solve(op);
  double norm_b = spectral_norm(assemble(op));

  GraphSolution same = family_member(op, sol, Matrix::Zero(1, 1));
  CHECK(max_abs(same.x - sol.x) == 0.0);

  GraphSolution other = family_member(op, sol, mat({{1.0}}));
  CHECK(other.provenance == GraphSolution::Provenance::family);
  CHECK(other.norm <= 1.0 + 1e-12);
  CHECK(other.residual <= 1e-10 * norm_b);
  CHECK(spectral_norm(other.x - sol.x) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(other.noncontractive_family);

  GraphSolution half = family_member(op, sol, mat({{0.5}}));
  CHECK(half.residual <= 1e-10 * norm_b);
  CHECK(half.norm <= 1.0 + 1e-12);
  CHECK(half.mu1_multiplicity == sol.mu1_multiplicity);

  GraphSolution big = family_member(op, sol, mat({{2.0}}));
  CHECK(big.noncontractive_family);
  CHECK(big.residual <= 1e-10 * norm_b);

  CHECK_THROWS_AS(family_member(op, sol, Matrix::Zero(2, 2)), ShapeMismatch);
  BlockOperator separated = scalar_op(-1.0, 1.0, 1.0);
  GraphSolution ssol = solve(separated);
  CHECK_THROWS_AS(family_member(separated, ssol, Matrix::Zero(1, 1)),
                  NoKernelCoupling);
}

TEST_CASE("family members keep the kernel-block structure") {
  Tolerances tol;
  GeneratorSpec spec;
  spec.n0 = 3;
  spec.n1 = 3;
  spec.ker0_dim = 2;
  spec.ker1_dim = 1;
  spec.couple_kernels = true;
  spec.gap = 0.5;
  spec.seed = 6;
  BlockOperator op = generate(spec);
  GraphSolution sol = solve(op, tol);
  KernelPair pair = kernel_decomposition(op, tol);
  Rng rng(8);
  Matrix t = random_complex(pair.n1.dim(), pair.n0.dim(), rng);
  t /= 2.0 * std::max(1.0, spectral_norm(t));
  GraphSolution member = family_member(op, sol, t, tol);
  CHECK(member.residual <= 1e-10 * spectral_norm(assemble(op)));
  // X~ maps N0 into N1
  Matrix image = member.x * pair.n0.basis();
  Matrix leak = image - pair.n1.basis() * (pair.n1.basis().adjoint() * image);
  CHECK(spectral_norm(leak) <= 1e-10);
}

TEST_CASE("solve is equivariant under block-diagonal unitaries") {
  Tolerances tol;
  Rng rng(91);
  for (int trial = 0; trial < 8; ++trial) {
    GeneratorSpec spec;
    spec.n0 = 3;
    spec.n1 = 4;
    spec.ker0_dim = trial % 2;
    spec.ker1_dim = trial % 3 == 0 ? 1 : 0;
    spec.gap = 0.3;
    spec.seed = 300 + trial;
    BlockOperator op = generate(spec);
    GraphSolution sol = solve(op, tol);

    Matrix u0 = haar_unitary(op.n0, rng);
    Matrix u1 = haar_unitary(op.n1, rng);
    BlockOperator rotated;
    rotated.n0 = op.n0;
    rotated.n1 = op.n1;
    rotated.a0 = u0 * op.a0 * u0.adjoint();
    rotated.a1 = u1 * op.a1 * u1.adjoint();
    rotated.v = u0 * op.v * u1.adjoint();
    rotated.lambda = op.lambda;
    GraphSolution rotated_sol = solve(rotated, tol);
    Matrix expected = u1 * sol.x * u0.adjoint();
    CHECK(spectral_norm(rotated_sol.x - expected) <= 1e-10);
    CHECK(subspace_equal(build_q(rotated, tol),
                         graph_subspace(expected, tol), tol.sub));
  }
}

#include "riccert/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace riccert {

Matrix assemble(const BlockOperator& op) {
  require_finite(op.a0, "assemble: A0");
  require_finite(op.a1, "assemble: A1");
  require_finite(op.v, "assemble: V");
  if (op.a0.rows() != op.n0 || op.a0.cols() != op.n0 ||
      op.a1.rows() != op.n1 || op.a1.cols() != op.n1 ||
      op.v.rows() != op.n0 || op.v.cols() != op.n1)
    throw ShapeMismatch("assemble: block shapes do not match n0/n1");
  Index n = op.n0 + op.n1;
  Matrix b(n, n);
  b.topLeftCorner(op.n0, op.n0) = 0.5 * (op.a0 + op.a0.adjoint());
  b.topRightCorner(op.n0, op.n1) = op.v;
  b.bottomLeftCorner(op.n1, op.n0) = op.v.adjoint();
  b.bottomRightCorner(op.n1, op.n1) = 0.5 * (op.a1 + op.a1.adjoint());
  return b;
}

Matrix assemble_diagonal(const BlockOperator& op) {
  Index n = op.n0 + op.n1;
  Matrix a = Matrix::Zero(n, n);
  a.topLeftCorner(op.n0, op.n0) = 0.5 * (op.a0 + op.a0.adjoint());
  a.bottomRightCorner(op.n1, op.n1) = 0.5 * (op.a1 + op.a1.adjoint());
  return a;
}

namespace {

bool hermitian_within(const Matrix& m, double slack) {
  return max_abs(m - m.adjoint()) <= slack * std::max(1.0, max_abs(m));
}

}  // namespace

ValidationReport validate(const BlockOperator& op, const Tolerances& tol) {
  require_finite(op.a0, "validate: A0");
  require_finite(op.a1, "validate: A1");
  require_finite(op.v, "validate: V");
  ValidationReport report;
  report.hermitian_ok =
      hermitian_within(op.a0, tol.orth) && hermitian_within(op.a1, tol.orth);
  if (!report.hermitian_ok) return report;

  EigResult e0 = eig_hermitian(op.a0, tol);
  EigResult e1 = eig_hermitian(op.a1, tol);
  report.sup_spec_a0 = op.n0 > 0 ? e0.values(op.n0 - 1)
                                 : -std::numeric_limits<double>::infinity();
  report.inf_spec_a1 = op.n1 > 0 ? e1.values(0)
                                 : std::numeric_limits<double>::infinity();
  double scale = std::abs(op.lambda);
  if (std::isfinite(report.sup_spec_a0))
    scale = std::max(scale, std::abs(report.sup_spec_a0));
  if (std::isfinite(report.inf_spec_a1))
    scale = std::max(scale, std::abs(report.inf_spec_a1));
  double w = tol.eig_window(scale);
  report.ordering_ok = report.sup_spec_a0 <= op.lambda + w &&
                       op.lambda <= report.inf_spec_a1 + w;
  report.d = std::max(0.0, report.inf_spec_a1 - report.sup_spec_a0);
  return report;
}

void require_hypothesis(const BlockOperator& op, const Tolerances& tol) {
  ValidationReport report = validate(op, tol);
  if (!report.hermitian_ok)
    throw HypothesisViolated("diagonal blocks A0/A1 are not Hermitian");
  if (!report.ordering_ok) {
    std::ostringstream msg;
    msg << "spectral ordering sup spec(A0) <= lambda <= inf spec(A1) fails: "
        << "sup spec(A0) = " << report.sup_spec_a0 << ", lambda = "
        << op.lambda << ", inf spec(A1) = " << report.inf_spec_a1;
    throw HypothesisViolated(msg.str());
  }
}

double spectra_distance(const BlockOperator& op, const Tolerances& tol) {
  EigResult e0 = eig_hermitian(op.a0, tol);
  EigResult e1 = eig_hermitian(op.a1, tol);
  if (e0.values.size() == 0 || e1.values.size() == 0)
    return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < e0.values.size(); ++i)
    for (Index j = 0; j < e1.values.size(); ++j)
      best = std::min(best, std::abs(e0.values(i) - e1.values(j)));
  return best;
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::gaussian() {
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::gaussian_complex() {
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-std::log(u1));  // E r^2 = 1 after the complex split
  return {r * std::cos(2.0 * std::numbers::pi * u2),
          r * std::sin(2.0 * std::numbers::pi * u2)};
}

std::uint64_t Rng::integer() { return engine_(); }

Matrix haar_unitary(Index n, Rng& rng) {
  if (n == 0) return Matrix(0, 0);
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = rng.gaussian_complex();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= a > 0 ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

namespace {

Matrix hermitian_from_eigs(const RealVector& evals, const Matrix& u) {
  Matrix m = u * evals.asDiagonal() * u.adjoint();
  return 0.5 * (m + m.adjoint());
}

}  // namespace

BlockOperator generate(const GeneratorSpec& spec) {
  if (spec.n0 < 1 || spec.n1 < 1)
    throw InconsistentSpec("generate: n0 and n1 must be >= 1");
  if (spec.ker0_dim < 0 || spec.ker0_dim > spec.n0 || spec.ker1_dim < 0 ||
      spec.ker1_dim > spec.n1)
    throw InconsistentSpec("generate: kernel dims must lie in [0, n]");
  if (spec.gap < 0.0 || spec.vnorm < 0.0)
    throw InconsistentSpec("generate: gap and vnorm must be >= 0");
  if (spec.gap > 2.0 && spec.ker0_dim < spec.n0 && spec.ker1_dim < spec.n1)
    throw InconsistentSpec("generate: gap > 2 leaves no room for non-kernel spectrum");
  if (spec.couple_kernels && (spec.ker0_dim == 0 || spec.ker1_dim == 0))
    throw InconsistentSpec("generate: couple_kernels needs both kernel dims >= 1");
  if (spec.couple_kernels && spec.vnorm > 0.0 &&
      (spec.ker0_dim == spec.n0 || spec.ker1_dim == spec.n1))
    throw InconsistentSpec(
        "generate: couple_kernels with a full kernel forces V = 0");

  Rng rng(spec.seed);

  // Draw order is fixed: eigenvalues, unitaries, V. Kernel eigenvalues go
  // first so the matching columns of the unitaries are known.
  RealVector evals0(spec.n0);
  for (Index i = 0; i < spec.ker0_dim; ++i) evals0(i) = spec.lambda;
  for (Index i = spec.ker0_dim; i < spec.n0; ++i)
    evals0(i) = spec.lambda - rng.uniform(spec.gap, 2.0);
  RealVector evals1(spec.n1);
  for (Index i = 0; i < spec.ker1_dim; ++i) evals1(i) = spec.lambda;
  for (Index i = spec.ker1_dim; i < spec.n1; ++i)
    evals1(i) = spec.lambda + rng.uniform(spec.gap, 2.0);

  Matrix u0 = haar_unitary(spec.n0, rng);
  Matrix u1 = haar_unitary(spec.n1, rng);

  Matrix v(spec.n0, spec.n1);
  for (Index j = 0; j < spec.n1; ++j)
    for (Index i = 0; i < spec.n0; ++i) v(i, j) = rng.gaussian_complex();

  if (spec.couple_kernels) {
    Matrix k0 = u0.leftCols(spec.ker0_dim);
    Matrix k1 = u1.leftCols(spec.ker1_dim);
    v = v - k0 * (k0.adjoint() * v);
    v = v - (v * k1) * k1.adjoint();
  }

  if (spec.vnorm == 0.0) {
    v.setZero();
  } else {
    double s = spectral_norm(v);
    if (s < 1e-300)
      throw InconsistentSpec("generate: V collapsed to zero, cannot scale to vnorm");
    v *= spec.vnorm / s;
  }

  BlockOperator op;
  op.n0 = spec.n0;
  op.n1 = spec.n1;
  op.a0 = hermitian_from_eigs(evals0, u0);
  op.a1 = hermitian_from_eigs(evals1, u1);
  op.v = std::move(v);
  op.lambda = spec.lambda;
  return op;
}

}  // namespace riccert

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riccert/bounds.hpp"
#include "riccert/ensemble.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace riccert;
using namespace riccert::testing;

namespace {
const double sqrt2 = std::sqrt(2.0);
const double pi = std::numbers::pi;
}  // namespace

TEST_CASE("spectral_shift on scalar instances") {
  SpectralShift s = spectral_shift(scalar_op(-1.0, 1.0, 1.0));
  CHECK(s.delta_minus == doctest::Approx(sqrt2 - 1.0).epsilon(1e-12));
  CHECK(s.delta_plus == doctest::Approx(sqrt2 - 1.0).epsilon(1e-12));
  CHECK(s.delta == doctest::Approx(sqrt2 - 1.0).epsilon(1e-12));

  s = spectral_shift(scalar_op(-1.0, 1.0, 0.0));
  CHECK(s.delta == doctest::Approx(0.0));

  s = spectral_shift(scalar_op(0.0, 0.0, 1.0));
  CHECK(s.delta_minus == doctest::Approx(1.0));
  CHECK(s.delta_plus == doctest::Approx(1.0));
}

TEST_CASE("upper_bounds formula and edge cases") {
  UpperBounds ub = upper_bounds(2.0, 1.0);
  CHECK(ub.x == doctest::Approx(std::tan(pi / 8)).epsilon(1e-14));
  CHECK(ub.pq == doctest::Approx(std::sin(pi / 8)).epsilon(1e-14));
  CHECK(ub.x == doctest::Approx(0.41421356237309503).epsilon(1e-14));
  CHECK(ub.pq == doctest::Approx(0.38268343236508978).epsilon(1e-14));

  ub = upper_bounds(1.0, 0.0);
  CHECK(ub.x == 0.0);
  CHECK(ub.pq == 0.0);

  ub = upper_bounds(0.0, 1.0);
  CHECK(ub.x == 1.0);
  CHECK(ub.pq == doctest::Approx(sqrt2 / 2.0));

  CHECK_THROWS_AS(upper_bounds(-1.0, 1.0), NegativeInput);
  CHECK_THROWS_AS(upper_bounds(1.0, -1.0), NegativeInput);
}

TEST_CASE("lower_bounds formula and clamping") {
  LowerBounds lb = lower_bounds(sqrt2 - 1.0, 1.0);
  CHECK(lb.x == doctest::Approx(sqrt2 - 1.0));

  lb = lower_bounds(0.0, 1.0);
  CHECK(lb.x == 0.0);
  CHECK(lb.pq == 0.0);

  lb = lower_bounds(1.0, 1.0);
  CHECK(lb.x == doctest::Approx(1.0));
  CHECK(lb.pq == doctest::Approx(1.0 / sqrt2));

  lb = lower_bounds(-1e-12, 1.0);
  CHECK(lb.x == 0.0);
  CHECK(lower_bounds(0.5, 0.0).x == 0.0);
}

TEST_CASE("upper bound is monotone in v and d") {
  double prev = 0.0;
  for (double v = 0.1; v <= 3.0; v += 0.1) {
    double cur = upper_bounds(1.0, v).x;
    CHECK(cur > prev);
    prev = cur;
  }
  prev = 2.0;
  for (double d = 0.1; d <= 3.0; d += 0.1) {
    double cur = upper_bounds(d, 1.0).x;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("certify on the sharp scalar instance attains both chains") {
  CertificationReport r = certify(scalar_op(-1.0, 1.0, 1.0));
  CHECK(r.all_pass);
  CHECK(r.norm_x == doctest::Approx(sqrt2 - 1.0).epsilon(1e-10));
  CHECK(std::abs(r.norm_x - r.upper_x) <= 1e-10);
  CHECK(std::abs(r.norm_x - r.lower_x) <= 1e-10);
  CHECK(std::abs(r.norm_pq - r.upper_pq) <= 1e-10);
  CHECK(std::abs(r.norm_pq - r.lower_pq) <= 1e-10);
  CHECK(r.verdict.unique);
  CHECK(r.gap_empty);
}

TEST_CASE("certify on a mid-size separated instance") {
  GeneratorSpec spec;
  spec.n0 = 16;
  spec.n1 = 16;
  spec.gap = 0.5;
  spec.vnorm = 1.0;
  spec.seed = 42;
  CertificationReport r = certify(generate(spec));
  CHECK(r.all_pass);
  CHECK(r.norm_pq > r.lower_pq);
  CHECK(r.norm_pq < r.upper_pq);
  CHECK(r.verdict.unique);
}

TEST_CASE("certify on a coupled instance flags non-uniqueness") {
  GeneratorSpec spec;
  spec.n0 = 2;
  spec.n1 = 2;
  spec.ker0_dim = 1;
  spec.ker1_dim = 1;
  spec.couple_kernels = true;
  spec.seed = 1;
  CertificationReport r = certify(generate(spec));
  CHECK(r.all_pass);
  CHECK_FALSE(r.verdict.unique);
  CHECK_FALSE(r.verdict.isolated);
  CHECK(r.dim_n0 == 1);
  CHECK(r.dim_n1 == 1);
}

TEST_CASE("certify rejects ordering violations") {
  CHECK_THROWS_AS(certify(scalar_op(1.0, 0.0, 1.0)), HypothesisViolated);
}

TEST_CASE("scalar sharpness: bounds are attained for all 1+1 instances") {
  Rng rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    double a0 = -rng.uniform(0.05, 2.0);
    double a1 = rng.uniform(0.05, 2.0);
    Complex v = rng.gaussian_complex();
    if (std::abs(v) < 1e-2) v = Complex(0.3, -0.4);
    BlockOperator op = scalar_op(a0, a1, v);
    CertificationReport r = certify(op);
    REQUIRE(r.all_pass);
    double vnorm = std::abs(v);
    double expected_shift =
        vnorm * std::tan(0.5 * std::atan(2.0 * vnorm / (a1 - a0)));
    CHECK(std::abs(r.norm_x - r.upper_x) <= 1e-10);
    CHECK(std::abs(r.delta_minus - expected_shift) <= 1e-10);
    CHECK(std::abs(r.delta_plus - expected_shift) <= 1e-10);
  }
}

TEST_CASE("two-sided chain holds across a small ensemble") {
  auto specs = ensemble_specs(50, 8, 5);
  for (const auto& spec : specs) {
    CertificationReport r = certify(generate(spec));
    REQUIRE(r.all_pass);
    CHECK(r.lower_x <= r.norm_x + 1e-9);
    CHECK(r.norm_x <= r.upper_x + 1e-9);
    CHECK(r.lower_pq <= r.norm_pq + 1e-9);
    CHECK(r.norm_pq <= r.upper_pq + 1e-9);
    CHECK(r.delta <= r.vnorm + 1e-9);
    CHECK(r.delta >= -1e-12);
  }
}

TEST_CASE("report serialization carries the verdict and tolerances") {
  Tolerances tol;
  tol.rank = 1e-9;
  CertificationReport r = certify(scalar_op(-1.0, 1.0, 1.0), tol);
  // touch the JSON path through bounds' public surface
  CHECK(r.failures().empty());
  CHECK(r.checks.size() > 20);
}

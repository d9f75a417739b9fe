#pragma once

#include "riccert/riccati.hpp"

namespace riccert {

/// Slack added to inequality chains that are exact theorems.
inline constexpr double chain_slack = 1e-9;

/// Slack on the universal bound ||P - Q|| <= sqrt(2)/2.
inline constexpr double universal_slack = 1e-10;

struct SpectralShift {
  double delta_minus = 0.0;  // inf spec(A) - inf spec(B)
  double delta_plus = 0.0;   // sup spec(B) - sup spec(A)
  double delta = 0.0;        // max of the two, clamped at 0
  bool clamped = false;      // a shift in (-window, 0) was reported as 0
};

/// Outward movement of the spectral edges of A under the off-diagonal
/// perturbation. Shifts below -window throw AssertionFailure (they are
/// nonnegative by theorem); shifts in (-window, 0) clamp to 0.
SpectralShift spectral_shift(const BlockOperator& op,
                             const Tolerances& tol = {});

struct UpperBounds {
  double x = 0.0;   // bound on ||X||
  double pq = 0.0;  // bound on ||P-Q||
};

/// d > 0: (tan(arctan(2v/d)/2), sin(arctan(2v/d)/2)); d = 0: (1, sqrt2/2);
/// v = 0: (0, 0).
UpperBounds upper_bounds(double d, double vnorm);

struct LowerBounds {
  double x = 0.0;
  double pq = 0.0;
};

/// (delta/v, delta/sqrt(delta^2+v^2)), clamped at 0 for delta <= 0; zero
/// when vnorm = 0.
LowerBounds lower_bounds(double delta, double vnorm);

/// Everything certify computes for one instance, plus the pass/fail ledger.
struct CertificationReport {
  Index n0 = 0, n1 = 0;
  double lambda = 0.0;
  double d = 0.0;
  double delta_minus = 0.0, delta_plus = 0.0, delta = 0.0;
  double vnorm = 0.0;
  double norm_b = 0.0;
  double norm_x = 0.0;
  double norm_pq = 0.0;
  double upper_x = 0.0, upper_pq = 0.0;
  double lower_x = 0.0, lower_pq = 0.0;
  double residual = 0.0;
  Index mu1_multiplicity = 0;
  Index dim_ker_a0 = 0, dim_ker_a1 = 0;
  Index dim_n0 = 0, dim_n1 = 0;
  Index dim_k0 = 0, dim_k1 = 0;
  UniquenessVerdict verdict;
  bool gap_empty = false;
  std::vector<CheckResult> checks;
  bool all_pass = false;

  std::vector<std::string> failures() const;
};

/// Runs the full pipeline (solve, degenerate subspaces, uniqueness, shifts,
/// both bound evaluators, gap check) and records every assertion with its
/// stated tolerance. Sub-operation errors propagate.
CertificationReport certify(const BlockOperator& op,
                            const Tolerances& tol = {});

}  // namespace riccert

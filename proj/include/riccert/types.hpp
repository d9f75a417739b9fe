#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace riccert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input/shape problems.
class NonFinite : public Error { public: using Error::Error; };
class NonHermitian : public Error { public: using Error::Error; };
class AmbientMismatch : public Error { public: using Error::Error; };
class ShapeMismatch : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class NegativeInput : public Error { public: using Error::Error; };
class InconsistentSpec : public Error { public: using Error::Error; };
class NoKernelCoupling : public Error { public: using Error::Error; };

// The spectral ordering assumption on the block operator fails.
class HypothesisViolated : public Error { public: using Error::Error; };

// A subspace that should be a graph over H0 is not.
class NotAGraph : public Error { public: using Error::Error; };

// A quantity that is exact by theorem failed its numerical tolerance.
class AssertionFailure : public Error { public: using Error::Error; };
class InconsistentVerdict : public Error { public: using Error::Error; };

/// Numerical knobs shared by every operation. `eig` is an absolute width
/// that gets scaled by max(1, norm) at the point of use.
struct Tolerances {
  double rank = 1e-10;  // relative singular-value cutoff
  double eig = 1e-8;    // eigenvalue clustering width
  double orth = 1e-12;  // orthonormality slack
  double sub = 1e-7;    // max principal angle (radians) for subspace equality

  void check() const {
    if (!(rank > 0.0 && eig > 0.0 && orth > 0.0 && sub > 0.0))
      throw NegativeInput("tolerances must be strictly positive");
    if (!(rank < 1.0)) throw NegativeInput("tol_rank must be < 1");
  }

  double eig_window(double scale) const { return eig * std::max(1.0, scale); }
};

}  // namespace riccert

#pragma once

#include "riccert/linalg.hpp"

#include <cstdint>
#include <random>

namespace riccert {

/// Self-adjoint 2x2 block operator
///   B = [ A0  V  ]
///       [ V^H A1 ]
/// on C^{n0} (+) C^{n1}, with a reference point `lambda` separating the
/// diagonal spectra: sup spec(A0) <= lambda <= inf spec(A1).
struct BlockOperator {
  Index n0 = 0;
  Index n1 = 0;
  Matrix a0;  // n0 x n0, Hermitian
  Matrix a1;  // n1 x n1, Hermitian
  Matrix v;   // n0 x n1, maps H1 -> H0
  double lambda = 0.0;
};

/// Full (n0+n1) x (n0+n1) matrix; diagonal blocks symmetrized so the result
/// is Hermitian exactly.
Matrix assemble(const BlockOperator& op);

/// Block-diagonal part [A0 0; 0 A1].
Matrix assemble_diagonal(const BlockOperator& op);

struct ValidationReport {
  bool hermitian_ok = false;
  bool ordering_ok = false;
  double sup_spec_a0 = 0.0;
  double inf_spec_a1 = 0.0;
  double d = 0.0;  // max(0, inf spec(A1) - sup spec(A0))
};

ValidationReport validate(const BlockOperator& op, const Tolerances& tol = {});

/// Throws HypothesisViolated unless validate() passes both checks.
void require_hypothesis(const BlockOperator& op, const Tolerances& tol = {});

/// Minimum distance between the computed spectra of A0 and A1. Coincides
/// with validate().d under the ordering hypothesis.
double spectra_distance(const BlockOperator& op, const Tolerances& tol = {});

/// Deterministic random stream: mt19937_64 drives 53-bit uniforms
/// ((x >> 11) * 2^-53) and Box-Muller Gaussians, so identical seeds give
/// identical instances on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                    // [0, 1)
  double uniform(double a, double b);  // [a, b)
  double gaussian();                   // standard normal
  Complex gaussian_complex();          // E|z|^2 = 1
  std::uint64_t integer();

private:
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary from QR of a Gaussian matrix with the phase fix
/// on the diagonal of R.
Matrix haar_unitary(Index n, Rng& rng);

/// Recipe for a seeded instance. Kernel eigenvalues are placed exactly at
/// lambda; the rest land in [lambda-2, lambda-gap] resp. [lambda+gap,
/// lambda+2]. With couple_kernels, V is projected so that V^H annihilates
/// Ker(A0-lambda) and V annihilates Ker(A1-lambda).
struct GeneratorSpec {
  Index n0 = 1;
  Index n1 = 1;
  Index ker0_dim = 0;
  Index ker1_dim = 0;
  double gap = 1.0;
  double vnorm = 1.0;
  bool couple_kernels = false;
  std::uint64_t seed = 0;
  double lambda = 0.0;
};

BlockOperator generate(const GeneratorSpec& spec);

}  // namespace riccert

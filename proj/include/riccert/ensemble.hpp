#pragma once

#include "riccert/model.hpp"

#include <vector>

namespace riccert {

/// Seeded mix of instance archetypes for ensemble checks: separated spectra,
/// touching spectra with exact kernels on both sides, one-sided kernels
/// (lambda an eigenvalue of a single block), coupled kernels (nontrivial
/// N0/N1), fully degenerate diagonals (nontrivial K0/K1), and V = 0 edge
/// cases. Deterministic in (count, max_dim, seed).
std::vector<GeneratorSpec> ensemble_specs(int count, Index max_dim,
                                          std::uint64_t seed);

}  // namespace riccert

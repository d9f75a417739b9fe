#include "riccert/ensemble.hpp"

#include <algorithm>

namespace riccert {

std::vector<GeneratorSpec> ensemble_specs(int count, Index max_dim,
                                          std::uint64_t seed) {
  if (count < 0 || max_dim < 1)
    throw InconsistentSpec("ensemble_specs: count >= 0 and max_dim >= 1");
  Rng rng(seed);
  std::vector<GeneratorSpec> specs;
  specs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    GeneratorSpec spec;
    spec.n0 = 1 + static_cast<Index>(rng.integer() % max_dim);
    spec.n1 = 1 + static_cast<Index>(rng.integer() % max_dim);
    spec.vnorm = rng.uniform(0.1, 2.0);
    spec.lambda = (i % 3 == 0) ? 0.0 : rng.uniform(-0.5, 0.5);
    spec.seed = rng.integer();

    switch (i % 10) {
      case 0: case 1: case 2: case 3:  // separated spectra
        spec.gap = rng.uniform(0.1, 1.5);
        break;
      case 4: {  // touching spectra with exact kernels on both sides
        spec.gap = rng.uniform(0.2, 1.0);
        spec.ker0_dim = 1 + static_cast<Index>(rng.integer() %
                                               std::min<Index>(3, spec.n0));
        spec.ker1_dim = 1 + static_cast<Index>(rng.integer() %
                                               std::min<Index>(3, spec.n1));
        break;
      }
      case 5: {  // one-sided kernel: lambda is an eigenvalue of one block only
        spec.gap = rng.uniform(0.2, 1.0);
        if (i % 2 == 0)
          spec.ker0_dim = 1 + static_cast<Index>(rng.integer() %
                                                 std::min<Index>(3, spec.n0));
        else
          spec.ker1_dim = 1 + static_cast<Index>(rng.integer() %
                                                 std::min<Index>(3, spec.n1));
        break;
      }
      case 6: case 7: {  // coupled kernels: N0, N1 forced nontrivial
        spec.n0 = std::max<Index>(2, spec.n0);
        spec.n1 = std::max<Index>(2, spec.n1);
        spec.gap = rng.uniform(0.2, 1.0);
        spec.ker0_dim = 1 + static_cast<Index>(rng.integer() %
                                               std::min<Index>(2, spec.n0 - 1));
        spec.ker1_dim = 1 + static_cast<Index>(rng.integer() %
                                               std::min<Index>(2, spec.n1 - 1));
        spec.couple_kernels = true;
        break;
      }
      case 8:  // fully degenerate diagonals: A0 = A1 = lambda I
        spec.ker0_dim = spec.n0;
        spec.ker1_dim = spec.n1;
        spec.gap = 0.0;
        break;
      case 9:  // zero and near-zero coupling
        spec.gap = rng.uniform(0.1, 1.5);
        spec.vnorm = (i % 20 == 9) ? 0.0 : rng.uniform(1e-4, 1e-2);
        break;
    }
    specs.push_back(spec);
  }
  return specs;
}

}  // namespace riccert

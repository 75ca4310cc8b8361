#ifndef SPFFF_LHS_HPP
#define SPFFF_LHS_HPP

#include <cstdint>

#include "spfff/design.hpp"

namespace spfff {

struct LhsConfig {
  int n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  // Swap-improvement proposal budget; negative selects the default 10*n*d.
  std::int64_t improve_iters = -1;
  // Place points at stratum midpoints instead of jittering uniformly.
  bool midpoint = false;
};

// Latin hypercube on [-1,1]^d: per column, a random permutation of the n
// strata with uniform jitter inside each stratum. No split-plot structure.
Design random_lhs(const LhsConfig& config);

// Starts from random_lhs (same seed, same points) and proposes within-column
// swaps of two runs, accepting a swap only when the maximin criterion
// strictly increases. Stops after improve_iters proposals; the result is
// still a valid Latin hypercube.
Design maximin_lhs(const LhsConfig& config);

}  // namespace spfff

#endif  // SPFFF_LHS_HPP

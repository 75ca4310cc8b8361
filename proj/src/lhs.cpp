#include "spfff/lhs.hpp"

#include <numeric>
#include <utility>
#include <vector>

#include "spfff/criteria.hpp"
#include "spfff/rng.hpp"

namespace spfff {

namespace {

Design lhs_impl(const LhsConfig& config, bool improve) {
  if (config.n < 2) throw SpecError("Latin hypercube needs at least 2 runs");
  if (config.d < 1) throw SpecError("dimension must be at least 1");
  if (config.improve_iters < -1) throw SpecError("improve_iters must be non-negative");
  const int n = config.n;
  const int d = config.d;
  Rng rng(config.seed, kLhsStream);

  Eigen::MatrixXd points(n, d);
  std::vector<int> strata(static_cast<std::size_t>(n));
  for (int j = 0; j < d; ++j) {
    std::iota(strata.begin(), strata.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(strata[static_cast<std::size_t>(i)], strata[static_cast<std::size_t>(k)]);
    }
    for (int i = 0; i < n; ++i) {
      const double offset = config.midpoint ? 0.5 : rng.uniform01();
      points(i, j) = -1.0 + 2.0 * (strata[static_cast<std::size_t>(i)] + offset) / n;
    }
  }

  if (improve) {
    const std::int64_t budget =
        config.improve_iters < 0 ? static_cast<std::int64_t>(10) * n * d
                                 : config.improve_iters;
    double current = maximin(points);
    for (std::int64_t it = 0; it < budget; ++it) {
      const int col = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
      const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      std::swap(points(a, col), points(b, col));
      const double proposed = maximin(points);
      if (proposed > current) {
        current = proposed;
      } else {
        std::swap(points(a, col), points(b, col));
      }
    }
  }
  return make_unstructured_design(std::move(points), config.seed);
}

}  // namespace

Design random_lhs(const LhsConfig& config) { return lhs_impl(config, false); }

Design maximin_lhs(const LhsConfig& config) { return lhs_impl(config, true); }

}  // namespace spfff

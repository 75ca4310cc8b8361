#ifndef SPFFF_CRITERIA_HPP
#define SPFFF_CRITERIA_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spfff/design.hpp"

namespace spfff {

// Full quadratic response-surface basis: intercept, main effects, two-factor
// interactions in lexicographic order (x1x2, x1x3, ..., x(d-1)xd), then pure
// quadratics. Pure quadratics can be dropped to obtain the main-effects +
// two-factor-interaction model.
struct RsmBasis {
  int d = 0;
  bool include_quadratics = true;
  std::vector<std::vector<int>> exponents;  // term -> per-variable exponents
  std::vector<std::string> names;           // "1", "x1", "x1*x2", "x1^2"

  int p() const { return static_cast<int>(exponents.size()); }
  static RsmBasis make(int d, bool include_quadratics = true);
};

// Basis vector f(x) in RsmBasis term order.
Eigen::VectorXd rsm_expand(const RsmBasis& basis, const Eigen::VectorXd& x);

// n x p model matrix with rows f(x_i).
Eigen::MatrixXd model_matrix(const RsmBasis& basis, const Eigen::MatrixXd& points);

// Moment matrix of the basis under the uniform measure on [-1,1]^d,
// normalized by the volume: entries are products of one-dimensional moments
// (odd moments vanish, E[x^2] = 1/3, E[x^4] = 1/5).
Eigen::MatrixXd moment_matrix(const RsmBasis& basis);

// Minimum pairwise Euclidean distance; larger is better. Needs n >= 2.
double maximin(const Eigen::MatrixXd& points);

// Sum over all pairs of inverse p-th powers of distances; smaller is better.
// Returns +inf when two runs coincide.
double phi_p(const Eigen::MatrixXd& points, double p = 2.0);

// Monte Carlo estimate of the coverage radius: the maximum over uniform
// sample points of the distance to the nearest design point. Underestimates
// the exact value by construction; identical seeds give identical estimates.
double minimax_mc(const Eigen::MatrixXd& points, std::int64_t mc_samples,
                  std::uint64_t seed);

// Block covariance V = I + eta * Z Z^T induced by a whole-plot assignment,
// with eta the whole-plot to subplot variance ratio.
struct SplitPlotCovariance {
  std::vector<int> wp_id;
  double variance_ratio = 1.0;

  // Dense V, for tests and small designs.
  Eigen::MatrixXd dense() const;
  // X^T V^-1 X without forming V: Woodbury reduces V^-1 to a per-plot
  // downweighting of the plot row sums.
  Eigen::MatrixXd information_matrix(const Eigen::MatrixXd& X) const;
};

// Average scaled prediction variance trace((X^T V^-1 X)^-1 B) over [-1,1]^d;
// smaller is better. Returns nullopt exactly when the information matrix is
// singular (non-positive or relatively tiny pivot, tolerance 1e-10).
std::optional<double> i_optimality(const Eigen::MatrixXd& points,
                                   const SplitPlotCovariance& covariance,
                                   const RsmBasis& basis);
std::optional<double> i_optimality(const Design& design,
                                   const SplitPlotCovariance& covariance);
std::optional<double> i_optimality(const Design& design, double variance_ratio);

struct CriteriaOptions {
  double phi_exponent = 2.0;
  std::int64_t mc_samples = 100000;
  std::uint64_t mc_seed = 17;
  double variance_ratio = 1.0;
};

// Named criterion values for one design.
struct CriteriaReport {
  double maximin = 0;
  double phi = 0;
  double phi_exponent = 2.0;
  double minimax = 0;
  std::int64_t mc_samples = 0;
  std::optional<double> i_opt_iid;  // empty iff information matrix singular
  std::optional<double> i_opt_sp;
  double variance_ratio = 1.0;
};

CriteriaReport evaluate_criteria(const Design& design,
                                 const CriteriaOptions& options = {});

std::string criteria_csv_header();
std::string criteria_csv_row(const std::string& design_id, const Design& design,
                             const CriteriaReport& report);

}  // namespace spfff

#endif  // SPFFF_CRITERIA_HPP

#ifndef SPFFF_DESIGN_HPP
#define SPFFF_DESIGN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spfff/rng.hpp"

namespace spfff {

// Invalid generator inputs (counts, dimensions, flags).
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A design (typically an ingested file) violates an invariant.
class DesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generator inputs.  Counts must satisfy n_sim > n_overall > n_wp > 0 and
// d = d_wp + d_sp.
struct DesignSpec {
  int n_sim = 0;     // random points feeding the clustering
  int n_overall = 0; // runs in the final design
  int n_wp = 0;      // whole plots
  int d = 0;         // total factors
  int d_wp = 0;      // hard-to-change factors
  int d_sp = 0;      // easy-to-change factors
  std::uint64_t seed = 0;
};

// Validates all DesignSpec invariants; throws SpecError naming the violated
// inequality, otherwise returns the spec unchanged.
DesignSpec validate_spec(const DesignSpec& spec);

enum class ColumnRole { WholePlot, Subplot };

// A run-by-factor matrix on [-1,1]^d plus a whole-plot assignment per run.
// Whole-plot factor columns always form the leading block of `points`, and
// wp_id labels are 1..n_wp in order of first appearance in run order.
struct Design {
  Eigen::MatrixXd points;
  std::vector<int> wp_id;
  std::vector<ColumnRole> column_roles;
  bool scaled = false;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(points.rows()); }
  int d() const { return static_cast<int>(points.cols()); }
  int d_wp() const;
  int n_wp() const;
};

std::vector<ColumnRole> make_column_roles(int d, int d_wp);

// Wraps a bare point matrix as a design without split-plot structure (every
// run is its own whole plot).
Design make_unstructured_design(Eigen::MatrixXd points, std::uint64_t seed);

// Checks every Design invariant; throws DesignError with row/column context
// on the first violation.
void validate_design(const Design& design);

// n x d matrix of i.i.d. uniform draws on [-1,1]; identical seeds give
// bitwise-identical matrices. Entries are drawn row by row.
Eigen::MatrixXd sample_uniform(int n, int d, std::uint64_t seed,
                               std::uint64_t stream = kPointStream);

// Affinely maps every column onto [-1, 1] (column minimum to -1, maximum to
// +1). Constant columns map to 0 and append a note to `warnings` when given.
// Whole-plot constancy is preserved because equal inputs map to equal
// outputs.
Design scale_to_boundary(const Design& design,
                         std::vector<std::string>* warnings = nullptr);

}  // namespace spfff

#endif  // SPFFF_DESIGN_HPP

#ifndef SPFFF_WARD_HPP
#define SPFFF_WARD_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "spfff/design.hpp"

namespace spfff {

// Live state of the agglomerative clustering. Active clusters are ordered by
// stable id, the smallest original point index among members.
struct ClusterState {
  Eigen::MatrixXd centroids;    // active_count x d, row r = mean of cluster r
  std::vector<int> sizes;       // member counts per active cluster
  std::vector<int> membership;  // original point -> row into centroids
  std::vector<int> stable_ids;  // row -> stable id
  int active_count = 0;
};

struct MergeRecord {
  int step = 0;          // 1-based position in merge order
  int id_a = 0;          // kept (smaller) stable id
  int id_b = 0;          // absorbed (larger) stable id
  double ward_cost = 0;  // merge cost of the executed merge
};

// Ward merge cost ||c_a - c_b||^2 / (1/n_a + 1/n_b). Symmetric in its
// arguments; throws on dimension mismatch or non-positive sizes.
double ward_distance(const Eigen::VectorXd& centroid_a, int size_a,
                     const Eigen::VectorXd& centroid_b, int size_b);

struct ClusterOptions {
  // Columns entering the merge cost; empty means all. Centroids of the other
  // columns are still carried along as size-weighted means.
  std::vector<int> columns;
  // Optional starting partition (arbitrary labels, one per point); default is
  // one singleton cluster per point.
  std::optional<std::vector<int>> initial_membership;
};

struct ClusterResult {
  ClusterState state;
  std::vector<MergeRecord> merges;
};

// Agglomerative Ward clustering down to exactly k clusters, repeatedly
// merging the pair with minimal merge cost (ties: lexicographically smallest
// stable-id pair). Runs the nearest-neighbor chain over the full hierarchy
// and replays the merges in cost order, which reproduces the greedy sequence
// while staying O(n^2) time and O(n) bookkeeping beyond the centroids.
ClusterResult cluster_until(const Eigen::MatrixXd& points, int k,
                            const ClusterOptions& options = {});

struct GeneratorResult {
  Design design;
  std::vector<MergeRecord> stage1;
  std::vector<MergeRecord> stage2;  // empty for designs without whole plots
};

// Space-filling design without split-plot structure: clusters n_sim uniform
// points down to n_overall and reports the centroids as runs. Ignores n_wp
// and d_wp; every run becomes its own whole plot.
GeneratorResult fff_design_full(const DesignSpec& spec);
Design fff_design(const DesignSpec& spec);

// Two-stage split-plot generator. Stage 1 is fff_design; stage 2 restarts
// the clustering on the stage-1 centroids using only the whole-plot columns
// (each run a fresh singleton) until n_wp clusters remain. Whole-plot
// coordinates of each run are replaced by its whole-plot cluster average, so
// hard-to-change factors are exactly constant within a plot.
GeneratorResult spfff_design_full(const DesignSpec& spec);
Design spfff_design(const DesignSpec& spec);

// Diagnostic dump, one `step,id_a,id_b,ward_cost` row per merge.
void write_merge_history(const std::vector<MergeRecord>& merges,
                         const std::string& path);

}  // namespace spfff

#endif  // SPFFF_WARD_HPP

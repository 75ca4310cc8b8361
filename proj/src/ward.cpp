#include "spfff/ward.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "spfff/design_io.hpp"

namespace spfff {

double ward_distance(const Eigen::VectorXd& centroid_a, int size_a,
                     const Eigen::VectorXd& centroid_b, int size_b) {
  if (centroid_a.size() != centroid_b.size()) {
    throw std::invalid_argument("ward_distance: centroid dimensions differ");
  }
  if (size_a < 1 || size_b < 1) {
    throw std::invalid_argument("ward_distance: cluster sizes must be positive");
  }
  const double sq = (centroid_a - centroid_b).squaredNorm();
  return sq / (1.0 / size_a + 1.0 / size_b);
}

namespace {

// Groups points into initial clusters. Clusters are ordered by their smallest
// member index, which doubles as the stable id.
std::vector<std::vector<int>> initial_clusters(
    int n, const std::optional<std::vector<int>>& membership) {
  std::vector<std::vector<int>> clusters;
  if (!membership) {
    clusters.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) clusters[static_cast<std::size_t>(i)] = {i};
    return clusters;
  }
  if (static_cast<int>(membership->size()) != n) {
    throw std::invalid_argument("initial_membership length must match point count");
  }
  std::map<int, std::vector<int>> by_label;
  for (int i = 0; i < n; ++i) by_label[(*membership)[static_cast<std::size_t>(i)]].push_back(i);
  clusters.reserve(by_label.size());
  for (auto& [label, members] : by_label) clusters.push_back(std::move(members));
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

}  // namespace

ClusterResult cluster_until(const Eigen::MatrixXd& points, int k,
                            const ClusterOptions& options) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (n < 1 || d < 1) throw std::invalid_argument("cluster_until: empty input");

  std::vector<int> cols = options.columns;
  if (cols.empty()) {
    cols.resize(static_cast<std::size_t>(d));
    std::iota(cols.begin(), cols.end(), 0);
  }
  for (int c : cols) {
    if (c < 0 || c >= d) throw std::invalid_argument("cluster_until: column index out of range");
  }

  const std::vector<std::vector<int>> init = initial_clusters(n, options.initial_membership);
  const int m = static_cast<int>(init.size());
  if (k < 1) throw std::invalid_argument("cluster_until: k must be at least 1");
  if (k > m) {
    std::ostringstream msg;
    msg << "cluster_until: k (" << k << ") exceeds initial cluster count (" << m << ")";
    throw std::invalid_argument(msg.str());
  }

  // Slot arrays; centroids transposed (d x m) so each cluster is contiguous.
  Eigen::MatrixXd cent(d, m);
  std::vector<double> size(static_cast<std::size_t>(m));
  std::vector<int> sid(static_cast<std::size_t>(m));
  std::vector<char> alive(static_cast<std::size_t>(m), 1);
  std::vector<int> point_slot(static_cast<std::size_t>(n));
  for (int s = 0; s < m; ++s) {
    const auto& members = init[static_cast<std::size_t>(s)];
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
    for (int p : members) {
      sum += points.row(p).transpose();
      point_slot[static_cast<std::size_t>(p)] = s;
    }
    cent.col(s) = sum / static_cast<double>(members.size());
    size[static_cast<std::size_t>(s)] = static_cast<double>(members.size());
    sid[static_cast<std::size_t>(s)] = members.front();
  }

  const auto cost_between = [&](int a, int b) {
    double sq = 0;
    for (int c : cols) {
      const double t = cent(c, a) - cent(c, b);
      sq += t * t;
    }
    return sq / (1.0 / size[static_cast<std::size_t>(a)] +
                 1.0 / size[static_cast<std::size_t>(b)]);
  };

  // Nearest-neighbor chain over the full hierarchy.
  std::vector<MergeRecord> dendrogram;
  dendrogram.reserve(static_cast<std::size_t>(m > 0 ? m - 1 : 0));
  if (k < m) {
    std::vector<int> chain;
    chain.reserve(static_cast<std::size_t>(m));
    int first_alive = 0;
    int merges_done = 0;
    while (merges_done < m - 1) {
      if (chain.empty()) {
        while (!alive[static_cast<std::size_t>(first_alive)]) ++first_alive;
        chain.push_back(first_alive);
      }
      const int top = chain.back();
      int best = -1;
      double best_cost = std::numeric_limits<double>::infinity();
      int best_sid = std::numeric_limits<int>::max();
      for (int j = 0; j < m; ++j) {
        if (!alive[static_cast<std::size_t>(j)] || j == top) continue;
        const double c = cost_between(top, j);
        if (c < best_cost || (c == best_cost && sid[static_cast<std::size_t>(j)] < best_sid)) {
          best = j;
          best_cost = c;
          best_sid = sid[static_cast<std::size_t>(j)];
        }
      }
      const int prev = chain.size() >= 2 ? chain[chain.size() - 2] : -1;
      if (prev >= 0 && cost_between(top, prev) <= best_cost) {
        // Reciprocal pair: merge top into prev's slot or vice versa, keeping
        // the smaller stable id.
        const double na = size[static_cast<std::size_t>(top)];
        const double nb = size[static_cast<std::size_t>(prev)];
        const double cost = cost_between(top, prev);
        const int keep = sid[static_cast<std::size_t>(top)] < sid[static_cast<std::size_t>(prev)] ? top : prev;
        const int drop = keep == top ? prev : top;
        MergeRecord rec;
        rec.id_a = std::min(sid[static_cast<std::size_t>(top)], sid[static_cast<std::size_t>(prev)]);
        rec.id_b = std::max(sid[static_cast<std::size_t>(top)], sid[static_cast<std::size_t>(prev)]);
        rec.ward_cost = cost;
        dendrogram.push_back(rec);
        cent.col(keep) = (na * cent.col(top) + nb * cent.col(prev)) / (na + nb);
        size[static_cast<std::size_t>(keep)] = na + nb;
        sid[static_cast<std::size_t>(keep)] = rec.id_a;
        alive[static_cast<std::size_t>(drop)] = 0;
        chain.pop_back();
        chain.pop_back();
        ++merges_done;
      } else {
        chain.push_back(best);
      }
    }
  }

  // Replay the merges in greedy order: ascending cost, ties by stable-id pair.
  std::vector<int> order(dendrogram.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const MergeRecord& ra = dendrogram[static_cast<std::size_t>(a)];
    const MergeRecord& rb = dendrogram[static_cast<std::size_t>(b)];
    if (ra.ward_cost != rb.ward_cost) return ra.ward_cost < rb.ward_cost;
    if (ra.id_a != rb.id_a) return ra.id_a < rb.id_a;
    return ra.id_b < rb.id_b;
  });

  // Union-find over initial clusters, representative = smallest stable id.
  std::vector<int> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  // Initial slots are ordered by stable id, so a stable id locates its slot
  // by binary search over the initial sids.
  std::vector<int> init_sid(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) init_sid[static_cast<std::size_t>(s)] = init[static_cast<std::size_t>(s)].front();
  const auto slot_of_sid = [&init_sid](int id) {
    return static_cast<int>(std::lower_bound(init_sid.begin(), init_sid.end(), id) -
                            init_sid.begin());
  };

  ClusterResult result;
  const int replay_count = m - k;
  result.merges.reserve(static_cast<std::size_t>(replay_count));
  for (int t = 0; t < replay_count; ++t) {
    const MergeRecord& rec = dendrogram[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
    const int ra = find(slot_of_sid(rec.id_a));
    const int rb = find(slot_of_sid(rec.id_b));
    const int keep = init_sid[static_cast<std::size_t>(ra)] < init_sid[static_cast<std::size_t>(rb)] ? ra : rb;
    const int drop = keep == ra ? rb : ra;
    parent[static_cast<std::size_t>(drop)] = keep;
    MergeRecord out = rec;
    out.step = t + 1;
    result.merges.push_back(out);
  }

  // Final state: compact the surviving components in stable-id order and
  // recompute centroids as exact member means.
  std::vector<int> roots;
  roots.reserve(static_cast<std::size_t>(k));
  for (int s = 0; s < m; ++s) {
    if (find(s) == s) roots.push_back(s);
  }
  std::vector<int> row_of_slot(static_cast<std::size_t>(m), -1);
  for (int r = 0; r < static_cast<int>(roots.size()); ++r) {
    row_of_slot[static_cast<std::size_t>(roots[static_cast<std::size_t>(r)])] = r;
  }
  ClusterState& state = result.state;
  state.active_count = static_cast<int>(roots.size());
  state.centroids = Eigen::MatrixXd::Zero(state.active_count, d);
  state.sizes.assign(static_cast<std::size_t>(state.active_count), 0);
  state.stable_ids.resize(static_cast<std::size_t>(state.active_count));
  state.membership.resize(static_cast<std::size_t>(n));
  for (int r = 0; r < state.active_count; ++r) {
    state.stable_ids[static_cast<std::size_t>(r)] =
        init_sid[static_cast<std::size_t>(roots[static_cast<std::size_t>(r)])];
  }
  for (int p = 0; p < n; ++p) {
    const int row = row_of_slot[static_cast<std::size_t>(find(point_slot[static_cast<std::size_t>(p)]))];
    state.membership[static_cast<std::size_t>(p)] = row;
    state.centroids.row(row) += points.row(p);
    ++state.sizes[static_cast<std::size_t>(row)];
  }
  for (int r = 0; r < state.active_count; ++r) {
    state.centroids.row(r) /= static_cast<double>(state.sizes[static_cast<std::size_t>(r)]);
  }
  return result;
}

GeneratorResult fff_design_full(const DesignSpec& raw) {
  const DesignSpec spec = validate_spec(raw);
  const Eigen::MatrixXd points = sample_uniform(spec.n_sim, spec.d, spec.seed);
  ClusterResult stage1 = cluster_until(points, spec.n_overall);
  GeneratorResult result;
  result.design = make_unstructured_design(std::move(stage1.state.centroids), spec.seed);
  result.stage1 = std::move(stage1.merges);
  return result;
}

Design fff_design(const DesignSpec& spec) { return fff_design_full(spec).design; }

GeneratorResult spfff_design_full(const DesignSpec& raw) {
  const DesignSpec spec = validate_spec(raw);
  if (spec.d_wp < 1) {
    throw SpecError("d_wp must be at least 1 for a split-plot design");
  }
  const Eigen::MatrixXd points = sample_uniform(spec.n_sim, spec.d, spec.seed);
  ClusterResult stage1 = cluster_until(points, spec.n_overall);
  const Eigen::MatrixXd& runs = stage1.state.centroids;

  ClusterOptions wp_options;
  wp_options.columns.resize(static_cast<std::size_t>(spec.d_wp));
  std::iota(wp_options.columns.begin(), wp_options.columns.end(), 0);
  ClusterResult stage2 = cluster_until(runs, spec.n_wp, wp_options);

  GeneratorResult result;
  Design& design = result.design;
  design.points.resize(spec.n_overall, spec.d);
  design.wp_id.resize(static_cast<std::size_t>(spec.n_overall));
  design.column_roles = make_column_roles(spec.d, spec.d_wp);
  design.seed = spec.seed;
  std::vector<int> label_of_row(static_cast<std::size_t>(spec.n_wp), 0);
  int next_label = 1;
  for (int r = 0; r < spec.n_overall; ++r) {
    const int wp_row = stage2.state.membership[static_cast<std::size_t>(r)];
    if (label_of_row[static_cast<std::size_t>(wp_row)] == 0) {
      label_of_row[static_cast<std::size_t>(wp_row)] = next_label++;
    }
    design.wp_id[static_cast<std::size_t>(r)] = label_of_row[static_cast<std::size_t>(wp_row)];
    for (int j = 0; j < spec.d_wp; ++j) design.points(r, j) = stage2.state.centroids(wp_row, j);
    for (int j = spec.d_wp; j < spec.d; ++j) design.points(r, j) = runs(r, j);
  }
  result.stage1 = std::move(stage1.merges);
  result.stage2 = std::move(stage2.merges);
  return result;
}

Design spfff_design(const DesignSpec& spec) { return spfff_design_full(spec).design; }

void write_merge_history(const std::vector<MergeRecord>& merges, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "step,id_a,id_b,ward_cost\n";
  for (const MergeRecord& rec : merges) {
    out << rec.step << ',' << rec.id_a << ',' << rec.id_b << ','
        << format_double(rec.ward_cost) << "\n";
  }
  if (!out.good()) throw IoError("write failed for " + path);
}

}  // namespace spfff

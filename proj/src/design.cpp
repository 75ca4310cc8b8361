#include "spfff/design.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace spfff {

DesignSpec validate_spec(const DesignSpec& spec) {
  std::ostringstream msg;
  if (spec.d <= 0) {
    msg << "d (" << spec.d << ") must be positive";
    throw SpecError(msg.str());
  }
  if (spec.d_wp < 0 || spec.d_sp < 0) {
    msg << "d_wp (" << spec.d_wp << ") and d_sp (" << spec.d_sp
        << ") must be non-negative";
    throw SpecError(msg.str());
  }
  if (spec.d != spec.d_wp + spec.d_sp) {
    msg << "d (" << spec.d << ") must equal d_wp + d_sp (" << spec.d_wp
        << " + " << spec.d_sp << ")";
    throw SpecError(msg.str());
  }
  if (spec.n_wp <= 0) {
    msg << "n_wp (" << spec.n_wp << ") must be positive";
    throw SpecError(msg.str());
  }
  if (spec.n_overall <= spec.n_wp) {
    msg << "n_overall (" << spec.n_overall << ") must exceed n_wp ("
        << spec.n_wp << ")";
    throw SpecError(msg.str());
  }
  if (spec.n_sim <= spec.n_overall) {
    msg << "n_sim (" << spec.n_sim << ") must exceed n_overall ("
        << spec.n_overall << ")";
    throw SpecError(msg.str());
  }
  return spec;
}

int Design::d_wp() const {
  int count = 0;
  for (ColumnRole role : column_roles) {
    if (role == ColumnRole::WholePlot) ++count;
  }
  return count;
}

int Design::n_wp() const {
  int max_label = 0;
  for (int label : wp_id) max_label = std::max(max_label, label);
  return max_label;
}

std::vector<ColumnRole> make_column_roles(int d, int d_wp) {
  std::vector<ColumnRole> roles(static_cast<std::size_t>(d), ColumnRole::Subplot);
  for (int j = 0; j < d_wp; ++j) roles[static_cast<std::size_t>(j)] = ColumnRole::WholePlot;
  return roles;
}

Design make_unstructured_design(Eigen::MatrixXd points, std::uint64_t seed) {
  Design design;
  design.wp_id.resize(static_cast<std::size_t>(points.rows()));
  std::iota(design.wp_id.begin(), design.wp_id.end(), 1);
  design.column_roles = make_column_roles(static_cast<int>(points.cols()), 0);
  design.points = std::move(points);
  design.seed = seed;
  return design;
}

void validate_design(const Design& design) {
  const int n = design.n();
  const int d = design.d();
  std::ostringstream msg;
  if (n < 1 || d < 1) {
    throw DesignError("design must have at least one run and one factor");
  }
  if (static_cast<int>(design.wp_id.size()) != n) {
    msg << "wp_id has " << design.wp_id.size() << " entries for " << n << " runs";
    throw DesignError(msg.str());
  }
  if (static_cast<int>(design.column_roles.size()) != d) {
    msg << "column_roles has " << design.column_roles.size() << " entries for "
        << d << " columns";
    throw DesignError(msg.str());
  }
  bool seen_subplot = false;
  for (int j = 0; j < d; ++j) {
    if (design.column_roles[static_cast<std::size_t>(j)] == ColumnRole::Subplot) {
      seen_subplot = true;
    } else if (seen_subplot) {
      msg << "whole-plot column x" << (j + 1) << " follows a subplot column";
      throw DesignError(msg.str());
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const double v = design.points(i, j);
      if (!(v >= -1.0 && v <= 1.0)) {
        msg << "row " << (i + 1) << ", column x" << (j + 1) << ": coordinate "
            << v << " outside [-1,1]";
        throw DesignError(msg.str());
      }
    }
  }
  // Labels must be 1..n_wp in order of first appearance.
  int next_label = 1;
  std::vector<int> first_row;  // label -> first run, for diagnostics
  for (int i = 0; i < n; ++i) {
    const int label = design.wp_id[static_cast<std::size_t>(i)];
    if (label == next_label) {
      first_row.push_back(i);
      ++next_label;
      continue;
    }
    if (label < 1 || label >= next_label) {
      msg << "row " << (i + 1) << ": wp_id " << label
          << " breaks the 1..n_wp first-appearance labeling";
      throw DesignError(msg.str());
    }
  }
  // Whole-plot factor columns must be exactly constant within each plot.
  const int d_wp = design.d_wp();
  for (int i = 0; i < n; ++i) {
    const int label = design.wp_id[static_cast<std::size_t>(i)];
    const int anchor = first_row[static_cast<std::size_t>(label - 1)];
    for (int j = 0; j < d_wp; ++j) {
      if (design.points(i, j) != design.points(anchor, j)) {
        msg << "rows " << (anchor + 1) << " and " << (i + 1)
            << " differ in whole-plot column x" << (j + 1) << " within wp_id "
            << label;
        throw DesignError(msg.str());
      }
    }
  }
}

Eigen::MatrixXd sample_uniform(int n, int d, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw SpecError("sample count must be at least 1");
  if (d < 1) throw SpecError("dimension must be at least 1");
  Rng rng(seed, stream);
  Eigen::MatrixXd points(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) points(i, j) = rng.uniform(-1.0, 1.0);
  }
  return points;
}

Design scale_to_boundary(const Design& design, std::vector<std::string>* warnings) {
  Design out = design;
  for (int j = 0; j < design.d(); ++j) {
    const double lo = design.points.col(j).minCoeff();
    const double hi = design.points.col(j).maxCoeff();
    if (lo == hi) {
      out.points.col(j).setZero();
      if (warnings != nullptr) {
        std::ostringstream msg;
        msg << "column x" << (j + 1) << " is constant (" << lo << "); mapped to 0";
        warnings->push_back(msg.str());
      }
      continue;
    }
    const double span = hi - lo;
    out.points.col(j) = ((design.points.col(j).array() - lo) / span) * 2.0 - 1.0;
  }
  out.scaled = true;
  return out;
}

}  // namespace spfff

#include "spfff/criteria.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spfff/design_io.hpp"
#include "spfff/rng.hpp"

namespace spfff {

RsmBasis RsmBasis::make(int d, bool include_quadratics) {
  if (d < 1) throw SpecError("basis dimension must be at least 1");
  RsmBasis basis;
  basis.d = d;
  basis.include_quadratics = include_quadratics;
  const auto add = [&basis](std::vector<int> expo, std::string name) {
    basis.exponents.push_back(std::move(expo));
    basis.names.push_back(std::move(name));
  };
  add(std::vector<int>(static_cast<std::size_t>(d), 0), "1");
  for (int i = 0; i < d; ++i) {
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = 1;
    add(std::move(e), "x" + std::to_string(i + 1));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      std::vector<int> e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(i)] = 1;
      e[static_cast<std::size_t>(j)] = 1;
      add(std::move(e), "x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1));
    }
  }
  if (include_quadratics) {
    for (int i = 0; i < d; ++i) {
      std::vector<int> e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(i)] = 2;
      add(std::move(e), "x" + std::to_string(i + 1) + "^2");
    }
  }
  return basis;
}

Eigen::VectorXd rsm_expand(const RsmBasis& basis, const Eigen::VectorXd& x) {
  if (static_cast<int>(x.size()) != basis.d) {
    throw std::invalid_argument("rsm_expand: point dimension does not match basis");
  }
  Eigen::VectorXd f(basis.p());
  for (int t = 0; t < basis.p(); ++t) {
    double v = 1.0;
    const std::vector<int>& expo = basis.exponents[static_cast<std::size_t>(t)];
    for (int j = 0; j < basis.d; ++j) {
      for (int rep = 0; rep < expo[static_cast<std::size_t>(j)]; ++rep) v *= x(j);
    }
    f(t) = v;
  }
  return f;
}

Eigen::MatrixXd model_matrix(const RsmBasis& basis, const Eigen::MatrixXd& points) {
  Eigen::MatrixXd X(points.rows(), basis.p());
  for (int i = 0; i < points.rows(); ++i) {
    X.row(i) = rsm_expand(basis, points.row(i).transpose()).transpose();
  }
  return X;
}

Eigen::MatrixXd moment_matrix(const RsmBasis& basis) {
  const int p = basis.p();
  Eigen::MatrixXd B(p, p);
  for (int a = 0; a < p; ++a) {
    for (int b = a; b < p; ++b) {
      double moment = 1.0;
      for (int j = 0; j < basis.d; ++j) {
        const int e = basis.exponents[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] +
                      basis.exponents[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
        if (e % 2 == 1) {
          moment = 0.0;
          break;
        }
        moment *= 1.0 / static_cast<double>(e + 1);  // E[x^e], x ~ U[-1,1]
      }
      B(a, b) = moment;
      B(b, a) = moment;
    }
  }
  return B;
}

double maximin(const Eigen::MatrixXd& points) {
  const int n = static_cast<int>(points.rows());
  if (n < 2) throw std::invalid_argument("maximin needs at least 2 runs");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double sq = (points.row(i) - points.row(j)).squaredNorm();
      if (sq < best) best = sq;
    }
  }
  return std::sqrt(best);
}

double phi_p(const Eigen::MatrixXd& points, double p) {
  const int n = static_cast<int>(points.rows());
  if (n < 2) throw std::invalid_argument("phi_p needs at least 2 runs");
  if (!(p > 0)) throw std::invalid_argument("phi_p exponent must be positive");
  double sum = 0;
  for (int j = 1; j < n; ++j) {
    for (int l = 0; l < j; ++l) {
      const double sq = (points.row(j) - points.row(l)).squaredNorm();
      if (sq == 0) return std::numeric_limits<double>::infinity();
      sum += p == 2.0 ? 1.0 / sq : std::pow(sq, -p / 2.0);
    }
  }
  return sum;
}

double minimax_mc(const Eigen::MatrixXd& points, std::int64_t mc_samples,
                  std::uint64_t seed) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (n < 1) throw std::invalid_argument("minimax_mc needs at least 1 run");
  if (mc_samples < 1) throw std::invalid_argument("minimax_mc needs at least 1 sample");
  Rng rng(seed, kMonteCarloStream);
  Eigen::VectorXd x(d);
  double worst_sq = 0;
  for (std::int64_t s = 0; s < mc_samples; ++s) {
    for (int j = 0; j < d; ++j) x(j) = rng.uniform(-1.0, 1.0);
    double nearest_sq = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double sq = 0;
      for (int j = 0; j < d; ++j) {
        const double t = x(j) - points(i, j);
        sq += t * t;
      }
      if (sq < nearest_sq) nearest_sq = sq;
    }
    if (nearest_sq > worst_sq) worst_sq = nearest_sq;
  }
  return std::sqrt(worst_sq);
}

Eigen::MatrixXd SplitPlotCovariance::dense() const {
  const int n = static_cast<int>(wp_id.size());
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (wp_id[static_cast<std::size_t>(i)] == wp_id[static_cast<std::size_t>(j)]) {
        V(i, j) += variance_ratio;
      }
    }
  }
  return V;
}

Eigen::MatrixXd SplitPlotCovariance::information_matrix(const Eigen::MatrixXd& X) const {
  if (static_cast<int>(wp_id.size()) != X.rows()) {
    throw std::invalid_argument("covariance wp_id length does not match model matrix");
  }
  Eigen::MatrixXd M = X.transpose() * X;
  if (variance_ratio == 0.0) return M;
  int max_label = 0;
  for (int label : wp_id) max_label = std::max(max_label, label);
  // V^-1 = I - Z diag(eta / (1 + eta * m_g)) Z^T, so the correction per plot
  // is a rank-one update with the plot's row sum.
  std::vector<Eigen::VectorXd> plot_sum(static_cast<std::size_t>(max_label),
                                        Eigen::VectorXd::Zero(X.cols()));
  std::vector<int> plot_count(static_cast<std::size_t>(max_label), 0);
  for (int i = 0; i < X.rows(); ++i) {
    const int g = wp_id[static_cast<std::size_t>(i)] - 1;
    plot_sum[static_cast<std::size_t>(g)] += X.row(i).transpose();
    ++plot_count[static_cast<std::size_t>(g)];
  }
  for (int g = 0; g < max_label; ++g) {
    if (plot_count[static_cast<std::size_t>(g)] == 0) continue;
    const double c = variance_ratio /
                     (1.0 + variance_ratio * plot_count[static_cast<std::size_t>(g)]);
    M -= c * plot_sum[static_cast<std::size_t>(g)] *
         plot_sum[static_cast<std::size_t>(g)].transpose();
  }
  return M;
}

std::optional<double> i_optimality(const Eigen::MatrixXd& points,
                                   const SplitPlotCovariance& covariance,
                                   const RsmBasis& basis) {
  const Eigen::MatrixXd X = model_matrix(basis, points);
  if (X.rows() < X.cols()) return std::nullopt;
  const Eigen::MatrixXd M = covariance.information_matrix(X);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
  if (ldlt.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd pivots = ldlt.vectorD();
  const double max_pivot = pivots.maxCoeff();
  const double min_pivot = pivots.minCoeff();
  if (!(max_pivot > 0) || min_pivot <= 0 || min_pivot / max_pivot < 1e-10) {
    return std::nullopt;
  }
  return ldlt.solve(moment_matrix(basis)).trace();
}

std::optional<double> i_optimality(const Design& design,
                                   const SplitPlotCovariance& covariance) {
  return i_optimality(design.points, covariance, RsmBasis::make(design.d()));
}

std::optional<double> i_optimality(const Design& design, double variance_ratio) {
  SplitPlotCovariance covariance;
  covariance.wp_id = design.wp_id;
  covariance.variance_ratio = variance_ratio;
  return i_optimality(design, covariance);
}

CriteriaReport evaluate_criteria(const Design& design, const CriteriaOptions& options) {
  CriteriaReport report;
  report.maximin = maximin(design.points);
  report.phi = phi_p(design.points, options.phi_exponent);
  report.phi_exponent = options.phi_exponent;
  report.minimax = minimax_mc(design.points, options.mc_samples, options.mc_seed);
  report.mc_samples = options.mc_samples;
  report.i_opt_iid = i_optimality(design, 0.0);
  report.i_opt_sp = i_optimality(design, options.variance_ratio);
  report.variance_ratio = options.variance_ratio;
  return report;
}

std::string criteria_csv_header() {
  return "design_id,n,d,n_wp,maximin,phi_2,minimax_mc,mc_samples,i_opt_iid,"
         "i_opt_sp,variance_ratio";
}

std::string criteria_csv_row(const std::string& design_id, const Design& design,
                             const CriteriaReport& report) {
  std::ostringstream row;
  row << design_id << ',' << design.n() << ',' << design.d() << ','
      << design.n_wp() << ',' << format_double(report.maximin) << ','
      << format_double(report.phi) << ',' << format_double(report.minimax) << ','
      << report.mc_samples << ',';
  if (report.i_opt_iid) row << format_double(*report.i_opt_iid);
  row << ',';
  if (report.i_opt_sp) row << format_double(*report.i_opt_sp);
  row << ',' << format_double(report.variance_ratio);
  return row.str();
}

}  // namespace spfff

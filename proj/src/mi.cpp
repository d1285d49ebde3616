#include "covermi/mi.hpp"

#include <algorithm>
#include <cmath>

namespace covermi {

JointDistribution JointDistribution::from_weights(std::size_t rows,
                                                  std::size_t cols,
                                                  std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w))
      throw std::invalid_argument("joint weights must be finite and >= 0");
    total += w;
  }
  if (total <= 0.0)
    throw std::invalid_argument("joint weights must not all be zero");
  for (double& w : weights) w /= total;
  return JointDistribution(rows, cols, std::move(weights));
}

std::vector<double> JointDistribution::row_marginals() const {
  std::vector<double> margin(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) margin[r] += at(r, c);
  return margin;
}

std::vector<double> JointDistribution::col_marginals() const {
  std::vector<double> margin(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) margin[c] += at(r, c);
  return margin;
}

namespace {

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return std::max(h, 0.0);
}

}  // namespace

std::pair<double, double> normalize(double mi, double h_x, double h_y) {
  double h_max = std::max(h_x, h_y);
  if (h_max <= 0.0) return {1.0, 1.0};  // equivalent single-module covers
  return {mi / h_max, 2.0 * mi / (h_x + h_y)};
}

MiResult mutual_information(const JointDistribution& joint) {
  auto px = joint.row_marginals();
  auto py = joint.col_marginals();
  double mi = 0.0;
  for (std::size_t r = 0; r < joint.rows(); ++r)
    for (std::size_t c = 0; c < joint.cols(); ++c) {
      double p = joint.at(r, c);
      if (p > 0.0) mi += p * std::log2(p / (px[r] * py[c]));
    }
  MiResult result;
  result.mi = std::max(mi, 0.0);
  result.h_x = entropy_bits(px);
  result.h_y = entropy_bits(py);
  std::tie(result.nmi_max, result.nmi_avg) =
      normalize(result.mi, result.h_x, result.h_y);
  return result;
}

JointDistribution joint_from_counting(const Cover& a, const Cover& b) {
  if (!a.is_partition() || !b.is_partition())
    throw ValidationError(
        "counting approach requires partitions; use the Monte Carlo "
        "estimator for covers");
  auto b_of_a = common_domain(a, b);
  std::size_t rows = a.module_count(), cols = b.module_count();
  std::vector<double> weights(rows * cols, 0.0);
  for (std::size_t n = 0; n < a.node_count(); ++n) {
    int ma = a.modules_of(static_cast<int>(n)).front();
    int mb = b.modules_of(b_of_a[n]).front();
    weights[static_cast<std::size_t>(ma) * cols + mb] += 1.0;
  }
  return JointDistribution::from_weights(rows, cols, std::move(weights));
}

MiResult exact_partition_nmi(const Cover& a, const Cover& b) {
  return mutual_information(joint_from_counting(a, b));
}

}  // namespace covermi

#ifndef COVERMI_MI_HPP
#define COVERMI_MI_HPP

#include <cstddef>
#include <vector>

#include "covermi/cover.hpp"

namespace covermi {

// Joint probabilities over (module of A, module of B) pairs, row-major.
// Entries are non-negative and sum to 1; marginals are always computed
// from the matrix, never stored independently.
class JointDistribution {
public:
  // Normalizes arbitrary non-negative weights by their total.
  static JointDistribution from_weights(std::size_t rows, std::size_t cols,
                                        std::vector<double> weights);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return p_[r * cols_ + c]; }

  std::vector<double> row_marginals() const;
  std::vector<double> col_marginals() const;

private:
  JointDistribution(std::size_t rows, std::size_t cols,
                    std::vector<double> p)
      : rows_(rows), cols_(cols), p_(std::move(p)) {}
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> p_;
};

struct MiResult {
  double mi = 0.0;       // I(X;Y) in bits
  double h_x = 0.0;      // H(X) in bits
  double h_y = 0.0;      // H(Y) in bits
  double nmi_max = 0.0;  // I / max(H_X, H_Y)
  double nmi_avg = 0.0;  // 2I / (H_X + H_Y)
};

// Max- and average-normalized MI. When both entropies are zero the covers
// are equivalent single-module covers and both values are 1.
std::pair<double, double> normalize(double mi, double h_x, double h_y);

// Base-2 mutual information and marginal entropies; zero joint entries
// contribute exactly 0.
MiResult mutual_information(const JointDistribution& joint);

// Counting approach for partitions: p(x,y) = |x cap y| / |E|.
// Throws ValidationError when either cover is not a partition.
JointDistribution joint_from_counting(const Cover& a, const Cover& b);

MiResult exact_partition_nmi(const Cover& a, const Cover& b);

}  // namespace covermi

#endif

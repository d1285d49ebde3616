#include "covermi/bruteforce.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "covermi/interleaving.hpp"

namespace covermi {

ExactCoverResult bruteforce_nmi(const Cover& a, const Cover& b,
                                std::size_t node_limit) {
  std::size_t n = a.node_count();
  if (n > node_limit)
    throw std::invalid_argument(
        "brute-force enumeration limited to " + std::to_string(node_limit) +
        " nodes (" + std::to_string(n) +
        " given); use the Monte Carlo estimator");
  a.validate_unique_modules();
  b.validate_unique_modules();
  auto b_of_a = common_domain(a, b);

  ExactCoverResult result;
  result.pair_counts.assign(a.module_count(),
                            std::vector<std::uint64_t>(b.module_count(), 0));

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const std::uint64_t bit_vectors = n == 1 ? 1 : (1ULL << (n - 1));
  do {
    for (std::uint64_t mask = 0; mask < bit_vectors; ++mask) {
      DisambiguationState sa(a, perm[0]);
      DisambiguationState sb(b, b_of_a[perm[0]]);
      for (std::size_t k = 1; k < n && !(sa.resolved() && sb.resolved());
           ++k) {
        bool intersect = (mask >> (k - 1)) & 1;
        if (!sa.resolved()) sa.step(perm[k], intersect);
        if (!sb.resolved()) sb.step(b_of_a[perm[k]], intersect);
      }
      ++result.pair_counts[sa.module()][sb.module()];
      ++result.total;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<double> weights;
  weights.reserve(a.module_count() * b.module_count());
  for (const auto& row : result.pair_counts)
    for (std::uint64_t count : row) weights.push_back(static_cast<double>(count));
  result.mi = mutual_information(JointDistribution::from_weights(
      a.module_count(), b.module_count(), std::move(weights)));
  return result;
}

}  // namespace covermi

#ifndef COVERMI_BRUTEFORCE_HPP
#define COVERMI_BRUTEFORCE_HPP

#include <cstdint>
#include <vector>

#include "covermi/cover.hpp"
#include "covermi/mi.hpp"

namespace covermi {

// Exact result from enumerating every interleaving: n! permutations
// times 2^(n-1) bit vectors, tallied as exact integers.
struct ExactCoverResult {
  std::vector<std::vector<std::uint64_t>> pair_counts;  // [module a][module b]
  std::uint64_t total = 0;                              // n! * 2^(n-1)
  MiResult mi;
};

// Ground-truth oracle for tiny instances. Throws when the node count
// exceeds node_limit (use the Monte Carlo estimator instead).
ExactCoverResult bruteforce_nmi(const Cover& a, const Cover& b,
                                std::size_t node_limit = 8);

}  // namespace covermi

#endif

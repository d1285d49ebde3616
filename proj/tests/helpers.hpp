#ifndef COVERMI_TEST_HELPERS_HPP
#define COVERMI_TEST_HELPERS_HPP

#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covermi/cover.hpp"
#include "covermi/interleaving.hpp"

namespace covermi::test {

inline Cover cover_from(const std::string& tsv) {
  std::istringstream in(tsv);
  return Cover::parse(in);
}

inline std::set<std::pair<std::string, std::string>> membership_pairs(
    const Cover& cover) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t n = 0; n < cover.node_count(); ++n)
    for (int m : cover.modules_of(static_cast<int>(n)))
      pairs.emplace(cover.node_name(n), cover.module_name(m));
  return pairs;
}

// Partition with up to max_modules blocks; blocks are disjoint, so the
// result never has duplicate modules.
inline Cover random_partition(RngStream& rng, std::size_t n_nodes,
                              std::size_t max_modules) {
  std::ostringstream tsv;
  std::size_t k = 1 + rng.bounded(max_modules);
  for (std::size_t n = 0; n < n_nodes; ++n) {
    // Pin the first k nodes to distinct modules so none is empty.
    std::size_t m = n < k ? n : rng.bounded(k);
    tsv << "n" << n << "\tm" << m << "\n";
  }
  return cover_from(tsv.str());
}

// Cover where each node has one module and, with the given per-mille
// overlap rate, a second one. Retries until no two modules share a node
// set.
inline Cover random_cover(RngStream& rng, std::size_t n_nodes,
                          std::size_t max_modules,
                          std::size_t overlap_per_mille) {
  for (;;) {
    std::ostringstream tsv;
    std::size_t k = 2 + rng.bounded(max_modules > 1 ? max_modules - 1 : 1);
    for (std::size_t n = 0; n < n_nodes; ++n) {
      std::size_t m = n < k ? n % k : rng.bounded(k);
      tsv << "n" << n << "\tm" << m << "\n";
      if (rng.bounded(1000) < overlap_per_mille) {
        std::size_t m2 = rng.bounded(k);
        if (m2 != m) tsv << "n" << n << "\tm" << m2 << "\n";
      }
    }
    Cover cover = cover_from(tsv.str());
    if (cover.duplicate_module_groups().empty()) return cover;
  }
}

inline Cover rename_modules(const Cover& cover, const std::string& prefix) {
  std::ostringstream tsv;
  for (std::size_t n = 0; n < cover.node_count(); ++n)
    for (int m : cover.modules_of(static_cast<int>(n)))
      tsv << cover.node_name(n) << '\t' << prefix << cover.module_name(m)
          << '\n';
  return cover_from(tsv.str());
}

// The reference partition: two four-node blocks.
inline Cover fig_partition_a() {
  return cover_from(
      "a\t1\nb\t1\nc\t1\nd\t1\n"
      "e\t2\nf\t2\ng\t2\nh\t2\n");
}

// Block 2 of the reference split in two.
inline Cover fig_split_b() {
  return cover_from(
      "a\t1\nb\t1\nc\t1\nd\t1\n"
      "e\t2\nf\t2\ng\t3\nh\t3\n");
}

// A submodule nested inside block 2.
inline Cover fig_hierarchy_c() {
  return cover_from(
      "a\t1\nb\t1\nc\t1\nd\t1\n"
      "e\t2\nf\t2\ng\t2\nh\t2\n"
      "e\t3\nf\t3\n");
}

// Blocks 1 and 2 overlapping on the fringe nodes d and e.
inline Cover fig_overlap_d() {
  return cover_from(
      "a\t1\nb\t1\nc\t1\nd\t1\n"
      "e\t2\nf\t2\ng\t2\nh\t2\n"
      "d\t2\ne\t1\n");
}

// Six-node pair with a two-node overlap, small enough to enumerate.
inline Cover overlap6_a() {
  return cover_from("a\t1\nb\t1\nc\t1\nd\t2\ne\t2\nf\t2\n");
}
inline Cover overlap6_b() {
  return cover_from(
      "a\t1\nb\t1\nc\t1\nd\t1\n"
      "c\t2\nd\t2\ne\t2\nf\t2\n");
}

}  // namespace covermi::test

#endif

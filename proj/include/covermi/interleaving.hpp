#ifndef COVERMI_INTERLEAVING_HPP
#define COVERMI_INTERLEAVING_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "covermi/cover.hpp"

namespace covermi {

// Seedable deterministic generator. Bounded draws use rejection sampling
// so the sequence is identical on every platform for a fixed seed.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  // Independent stream derived from (seed, stream id).
  static RngStream substream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  // Uniform draw in [0, n), n >= 1.
  std::uint64_t bounded(std::uint64_t n);
  // Fair coin.
  bool coin() { return next() >> 63; }

private:
  std::uint64_t s_[4];
};

// A permutation of the node indices alternated with operation bits:
// [e_0, b_1, e_1, ..., b_{n-1}, e_{n-1}], bit 1 = intersection,
// bit 0 = difference.
struct Interleaving {
  std::vector<int> order;        // permutation, size n
  std::vector<std::uint8_t> bits;  // size n - 1
};

// Uniform permutation (Fisher-Yates) plus independent fair bits.
Interleaving sample_interleaving(RngStream& rng, std::size_t n);

// The evolving candidate module set during one event. The set is
// non-increasing under inclusion and never empty.
class DisambiguationState {
public:
  DisambiguationState(const Cover& cover, int first_node);
  // Applies one interleaving step: intersect or subtract the node's
  // module set, keeping the previous set when the result is empty.
  void step(int node, bool intersect);
  bool resolved() const { return candidates_.size() == 1; }
  const std::vector<int>& candidates() const { return candidates_; }
  // The single surviving module. Throws when more than one remains
  // (impossible for covers without duplicate modules).
  int module() const;

private:
  const Cover* cover_;
  std::vector<int> candidates_;  // sorted
  std::vector<int> scratch_;
};

// Folds the interleaving's set operations over the candidate sets,
// yielding the single module J_M assigns to this interleaving. Exits
// early once one candidate remains.
int disambiguate(const Cover& cover, const Interleaving& interleaving);

// Samples one interleaving and disambiguates both covers against it.
// `b_of_a` maps a's node indices to b's (see common_domain). The
// interleaving prefix is generated lazily and stops once both sides are
// resolved; the unused suffix cannot change either outcome.
class EventSampler {
public:
  EventSampler(const Cover& a, const Cover& b, std::vector<int> b_of_a);
  std::pair<int, int> sample(RngStream& rng);

private:
  const Cover* a_;
  const Cover* b_;
  std::vector<int> b_of_a_;
  std::vector<int> perm_;
};

// One event: a sampled interleaving fed to both covers.
std::pair<int, int> run_event(const Cover& a, const Cover& b,
                              RngStream& rng);

}  // namespace covermi

#endif

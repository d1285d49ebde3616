#include "covermi/interleaving.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace covermi {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

// xoshiro256** seeded through splitmix64, per the generator authors'
// recommendation.
RngStream::RngStream(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

RngStream RngStream::substream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = stream;
  return RngStream(seed ^ splitmix64(state));
}

std::uint64_t RngStream::next() {
  std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t RngStream::bounded(std::uint64_t n) {
  // Rejection sampling, no modulo bias.
  std::uint64_t threshold = (-n) % n;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

Interleaving sample_interleaving(RngStream& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("interleaving needs >= 1 node");
  Interleaving result;
  result.order.resize(n);
  std::iota(result.order.begin(), result.order.end(), 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t j = k + rng.bounded(n - k);
    std::swap(result.order[k], result.order[j]);
  }
  result.bits.resize(n - 1);
  for (auto& bit : result.bits) bit = rng.coin() ? 1 : 0;
  return result;
}

DisambiguationState::DisambiguationState(const Cover& cover, int first_node)
    : cover_(&cover), candidates_(cover.modules_of(first_node)) {}

void DisambiguationState::step(int node, bool intersect) {
  const auto& mods = cover_->modules_of(node);
  scratch_.clear();
  if (intersect) {
    std::set_intersection(candidates_.begin(), candidates_.end(),
                          mods.begin(), mods.end(),
                          std::back_inserter(scratch_));
  } else {
    std::set_difference(candidates_.begin(), candidates_.end(), mods.begin(),
                        mods.end(), std::back_inserter(scratch_));
  }
  if (!scratch_.empty()) candidates_.swap(scratch_);
}

int DisambiguationState::module() const {
  if (candidates_.size() != 1)
    throw std::logic_error(
        "cover not well-defined: disambiguation left multiple modules");
  return candidates_.front();
}

int disambiguate(const Cover& cover, const Interleaving& interleaving) {
  DisambiguationState state(cover, interleaving.order.front());
  for (std::size_t k = 1; k < interleaving.order.size() && !state.resolved();
       ++k)
    state.step(interleaving.order[k], interleaving.bits[k - 1] != 0);
  return state.module();
}

EventSampler::EventSampler(const Cover& a, const Cover& b,
                           std::vector<int> b_of_a)
    : a_(&a), b_(&b), b_of_a_(std::move(b_of_a)) {
  perm_.resize(a.node_count());
}

std::pair<int, int> EventSampler::sample(RngStream& rng) {
  std::size_t n = perm_.size();
  std::iota(perm_.begin(), perm_.end(), 0);
  std::size_t j = rng.bounded(n);
  std::swap(perm_[0], perm_[j]);
  DisambiguationState sa(*a_, perm_[0]);
  DisambiguationState sb(*b_, b_of_a_[perm_[0]]);
  for (std::size_t k = 1; k < n && !(sa.resolved() && sb.resolved()); ++k) {
    bool intersect = rng.coin();
    j = k + rng.bounded(n - k);
    std::swap(perm_[k], perm_[j]);
    if (!sa.resolved()) sa.step(perm_[k], intersect);
    if (!sb.resolved()) sb.step(b_of_a_[perm_[k]], intersect);
  }
  return {sa.module(), sb.module()};
}

std::pair<int, int> run_event(const Cover& a, const Cover& b,
                              RngStream& rng) {
  EventSampler sampler(a, b, common_domain(a, b));
  return sampler.sample(rng);
}

}  // namespace covermi

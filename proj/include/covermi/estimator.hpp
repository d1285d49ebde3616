#ifndef COVERMI_ESTIMATOR_HPP
#define COVERMI_ESTIMATOR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <utility>

#include "covermi/cover.hpp"
#include "covermi/mi.hpp"

namespace covermi {

// Accumulated event counts per observed (module of A, module of B) pair.
struct JointCounts {
  std::map<std::pair<int, int>, std::uint64_t> counts;
  std::uint64_t total = 0;

  void accumulate(int module_a, int module_b, std::uint64_t n = 1);
  void merge(const JointCounts& other);
  // Number of distinct observed pairs (m).
  std::size_t pair_count() const { return counts.size(); }
};

// Plug-in estimate: joint frequencies zeta/N fed to the MI formula.
MiResult nmi_from_counts(const JointCounts& counts);

// Worst-case probabilities for an observed count at component risk xi:
// theta_high solves Prob(X <= zeta) = xi/2 and theta_low solves
// Prob(X >= zeta) = xi/2 under Binomial(N, theta). Boundary cases:
// zeta = 0 gives theta_low = 0, zeta = N gives theta_high = 1.
std::pair<double, double> theta_far(std::uint64_t zeta, std::uint64_t total,
                                    double xi);

// First-order worst-case bound on |estimate - true NMI| at overall risk
// epsilon: the component risk is epsilon/m, and each observed pair
// contributes the larger finite difference of the NMI when its frequency
// is replaced by theta_low or theta_high (other coordinates untouched,
// no renormalization of the perturbed vector).
double error_bound(const JointCounts& counts, double risk);

struct EstimateOptions {
  double risk = 0.05;        // epsilon
  double tolerance = 0.01;   // e, in NMI units
  std::uint64_t seed = 0;
  std::uint64_t max_events = 100'000'000;
  std::uint64_t batch_size = 10'000;  // events between bound checks
  int threads = 1;
  // Called after every batch with (events so far, current bound).
  std::function<void(std::uint64_t, double)> progress;
};

struct NmiEstimate {
  MiResult mi;
  double estimate = 0.0;     // nmi_max of the plug-in frequencies
  double bound = 0.0;        // upper bound on |estimate - true NMI|
  std::uint64_t n_events = 0;
  std::size_t n_pairs = 0;
  bool converged = false;
  JointCounts counts;
};

// Adaptive sampling loop: accumulates events in batches until the error
// bound falls below the tolerance or max_events is reached. Fixed-size
// microbatches each use an RNG substream derived from (seed, batch
// index), so merged counts do not depend on the thread count.
NmiEstimate estimate_nmi(const Cover& a, const Cover& b,
                         const EstimateOptions& options = {});

}  // namespace covermi

#endif

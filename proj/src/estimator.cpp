#include "covermi/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "covermi/interleaving.hpp"

namespace covermi {

void JointCounts::accumulate(int module_a, int module_b, std::uint64_t n) {
  counts[{module_a, module_b}] += n;
  total += n;
}

void JointCounts::merge(const JointCounts& other) {
  for (const auto& [pair, n] : other.counts) counts[pair] += n;
  total += other.total;
}

namespace {

// Regularized incomplete beta I_x(a, b) via the continued fraction
// (modified Lentz), as in the usual numerical recipes formulation.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double betai(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                 a * std::log(x) + b * std::log1p(-x);
  double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

// P(X <= k) for X ~ Binomial(n, theta).
double binom_cdf(std::uint64_t k, std::uint64_t n, double theta) {
  if (k >= n) return 1.0;
  if (theta <= 0.0) return 1.0;
  if (theta >= 1.0) return 0.0;
  return betai(static_cast<double>(n - k), static_cast<double>(k) + 1.0,
               1.0 - theta);
}

double bisect(double lo, double hi, double target,
              const std::function<double(double)>& decreasing) {
  // Finds theta with decreasing(theta) = target; 60 halvings reach well
  // below the 1e-10 tolerance.
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (decreasing(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> theta_far(std::uint64_t zeta, std::uint64_t total,
                                    double xi) {
  if (total == 0) throw std::invalid_argument("theta_far: total must be >= 1");
  if (zeta > total)
    throw std::invalid_argument("theta_far: count exceeds total");
  if (!(xi > 0.0 && xi < 1.0))
    throw std::invalid_argument("theta_far: component risk must be in (0,1)");
  double half = xi / 2.0;
  double high = zeta == total
                    ? 1.0
                    : bisect(0.0, 1.0, half, [&](double theta) {
                        return binom_cdf(zeta, total, theta);
                      });
  // P(X >= zeta) = xi/2 is P(X <= zeta-1) = 1 - xi/2, still a decreasing
  // function of theta.
  double low = zeta == 0
                   ? 0.0
                   : bisect(0.0, 1.0, 1.0 - half, [&](double theta) {
                       return binom_cdf(zeta - 1, total, theta);
                     });
  return {low, high};
}

namespace {

// Compact joint layout over the observed pairs: row/col labels plus the
// flat weight index of each observed pair.
struct CompactLayout {
  std::vector<int> rows, cols;
  std::vector<std::size_t> slots;
  std::size_t n_rows = 0, n_cols = 0;
};

CompactLayout layout_from_counts(const JointCounts& counts) {
  CompactLayout layout;
  for (const auto& [pair, n] : counts.counts) {
    layout.rows.push_back(pair.first);
    layout.cols.push_back(pair.second);
  }
  auto dedup = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(layout.rows);
  dedup(layout.cols);
  layout.n_rows = layout.rows.size();
  layout.n_cols = layout.cols.size();
  for (const auto& [pair, n] : counts.counts) {
    std::size_t r = std::lower_bound(layout.rows.begin(), layout.rows.end(),
                                     pair.first) -
                    layout.rows.begin();
    std::size_t c = std::lower_bound(layout.cols.begin(), layout.cols.end(),
                                     pair.second) -
                    layout.cols.begin();
    layout.slots.push_back(r * layout.n_cols + c);
  }
  return layout;
}

MiResult mi_from_weights(const CompactLayout& layout,
                         const std::vector<double>& pair_weights) {
  std::vector<double> weights(layout.n_rows * layout.n_cols, 0.0);
  for (std::size_t i = 0; i < pair_weights.size(); ++i)
    weights[layout.slots[i]] = pair_weights[i];
  return mutual_information(JointDistribution::from_weights(
      layout.n_rows, layout.n_cols, std::move(weights)));
}

// The f used inside the finite differences. The perturbed coordinate
// makes the vector sum to != 1 and it is used as-is; only the marginals
// are normalized. For an unperturbed frequency vector this coincides
// with the plug-in NMI.
double nmi_raw_weights(const CompactLayout& layout,
                       const std::vector<double>& pair_weights) {
  std::vector<double> px(layout.n_rows, 0.0), py(layout.n_cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < pair_weights.size(); ++i) {
    std::size_t r = layout.slots[i] / layout.n_cols;
    std::size_t c = layout.slots[i] % layout.n_cols;
    px[r] += pair_weights[i];
    py[c] += pair_weights[i];
    total += pair_weights[i];
  }
  if (total <= 0.0) return 1.0;  // degenerate, all mass removed
  double h_x = 0.0, h_y = 0.0;
  for (double& p : px) {
    p /= total;
    if (p > 0.0) h_x -= p * std::log2(p);
  }
  for (double& p : py) {
    p /= total;
    if (p > 0.0) h_y -= p * std::log2(p);
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < pair_weights.size(); ++i) {
    double w = pair_weights[i];
    if (w <= 0.0) continue;
    std::size_t r = layout.slots[i] / layout.n_cols;
    std::size_t c = layout.slots[i] % layout.n_cols;
    mi += w * std::log2(w / (px[r] * py[c]));
  }
  double h_max = std::max(h_x, h_y);
  if (h_max <= 0.0) return 1.0;
  return mi / h_max;
}

}  // namespace

MiResult nmi_from_counts(const JointCounts& counts) {
  if (counts.total == 0)
    throw std::invalid_argument("nmi_from_counts: no events accumulated");
  auto layout = layout_from_counts(counts);
  std::vector<double> freqs;
  for (const auto& [pair, n] : counts.counts)
    freqs.push_back(static_cast<double>(n) /
                    static_cast<double>(counts.total));
  return mi_from_weights(layout, freqs);
}

double error_bound(const JointCounts& counts, double risk) {
  if (counts.total == 0 || counts.counts.empty())
    throw std::invalid_argument("error_bound: no events accumulated");
  if (!(risk > 0.0 && risk < 1.0))
    throw std::invalid_argument("error_bound: risk must be in (0,1)");
  auto layout = layout_from_counts(counts);
  std::size_t m = counts.pair_count();
  double xi = risk / static_cast<double>(m);

  std::vector<double> freqs;
  std::vector<std::uint64_t> zetas;
  for (const auto& [pair, n] : counts.counts) {
    zetas.push_back(n);
    freqs.push_back(static_cast<double>(n) /
                    static_cast<double>(counts.total));
  }
  double base = nmi_raw_weights(layout, freqs);

  double bound = 0.0;
  std::vector<double> perturbed = freqs;
  for (std::size_t i = 0; i < m; ++i) {
    auto [lo, hi] = theta_far(zetas[i], counts.total, xi);
    double delta = 0.0;
    for (double theta : {lo, hi}) {
      perturbed[i] = theta;
      delta = std::max(delta,
                       std::fabs(base - nmi_raw_weights(layout, perturbed)));
    }
    perturbed[i] = freqs[i];
    bound += delta;
  }
  return bound;
}

NmiEstimate estimate_nmi(const Cover& a, const Cover& b,
                         const EstimateOptions& options) {
  if (!(options.risk > 0.0 && options.risk < 1.0))
    throw std::invalid_argument("risk must be in (0,1)");
  if (!(options.tolerance > 0.0))
    throw std::invalid_argument("tolerance must be > 0");
  a.validate_unique_modules();
  b.validate_unique_modules();
  auto b_of_a = common_domain(a, b);

  // Fixed-size microbatches keyed by a global index: the RNG stream of
  // microbatch i depends only on (seed, i), so the merged counts for any
  // prefix of microbatches are identical for every thread count.
  const std::uint64_t micro =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.batch_size,
                                                          4096));
  const std::uint64_t micro_per_batch =
      (options.batch_size + micro - 1) / micro;
  int threads = std::max(1, options.threads);

  NmiEstimate result;
  std::uint64_t next_micro = 0;
  while (result.counts.total < options.max_events) {
    std::uint64_t first = next_micro;
    std::uint64_t remaining = options.max_events - result.counts.total;
    std::uint64_t allowed = (remaining + micro - 1) / micro;
    std::uint64_t last = first + std::min(micro_per_batch, allowed);
    if (threads == 1) {
      EventSampler sampler(a, b, b_of_a);
      for (std::uint64_t mb = first; mb < last; ++mb) {
        RngStream rng = RngStream::substream(options.seed, mb);
        for (std::uint64_t i = 0; i < micro; ++i) {
          auto [ma, mb_] = sampler.sample(rng);
          result.counts.accumulate(ma, mb_);
        }
      }
    } else {
      std::atomic<std::uint64_t> cursor{first};
      std::vector<JointCounts> partial(threads);
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          EventSampler sampler(a, b, b_of_a);
          for (;;) {
            std::uint64_t mb = cursor.fetch_add(1);
            if (mb >= last) break;
            RngStream rng = RngStream::substream(options.seed, mb);
            for (std::uint64_t i = 0; i < micro; ++i) {
              auto [ma, mb_] = sampler.sample(rng);
              partial[t].accumulate(ma, mb_);
            }
          }
        });
      }
      for (auto& th : pool) th.join();
      for (const auto& p : partial) result.counts.merge(p);
    }
    next_micro = last;

    result.mi = nmi_from_counts(result.counts);
    result.bound = error_bound(result.counts, options.risk);
    result.n_events = result.counts.total;
    result.n_pairs = result.counts.pair_count();
    if (options.progress) options.progress(result.n_events, result.bound);
    if (result.bound < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.estimate = result.mi.nmi_max;
  return result;
}

}  // namespace covermi

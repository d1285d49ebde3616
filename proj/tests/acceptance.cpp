// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "covermi/bruteforce.hpp"
#include "covermi/estimator.hpp"
#include "covermi/interleaving.hpp"
#include "covermi/mi.hpp"
#include "helpers.hpp"

using covermi::Cover;
using covermi::RngStream;
namespace fixtures = covermi::test;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str());
  if (!pass) ++g_failures;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// 1. Normalization worked example: I=2 against entropy pairs
// (10,15), (10,10), (10,2).
void criterion1() {
  auto [n_y, a_y] = covermi::normalize(2, 10, 15);
  auto [n_z, a_z] = covermi::normalize(2, 10, 10);
  auto [n_w, a_w] = covermi::normalize(2, 10, 2);
  bool pass = near(n_y, 2.0 / 15, 1e-12) && near(n_z, 0.2, 1e-12) &&
              near(n_w, 0.2, 1e-12) && near(a_y, 4.0 / 25, 1e-12) &&
              near(a_z, 0.2, 1e-12) && near(a_w, 1.0 / 3, 1e-12);
  report(1, pass, "normalization worked example, max and average variants");
}

// 2. Partition limit: oracle joint equals counting joint exactly and the
// Monte Carlo estimate lands within its reported bound of the exact NMI.
// Oracle-checked pairs use 4-8 nodes (enumeration feasibility); larger
// pairs up to 64 nodes are checked on the Monte Carlo side only.
void criterion2() {
  RngStream rng(2001);
  bool pass = true;
  std::string detail;
  for (int trial = 0; trial < 50 && pass; ++trial) {
    bool with_oracle = trial < 35;
    std::size_t n = with_oracle ? 4 + rng.bounded(5) : 9 + rng.bounded(56);
    Cover a = fixtures::random_partition(rng, n, 8);
    std::ostringstream tsv;
    std::size_t k = 1 + rng.bounded(8);
    for (std::size_t i = 0; i < n; ++i)
      tsv << a.node_name(i) << "\tq" << (i < k ? i : rng.bounded(k)) << "\n";
    Cover b = fixtures::cover_from(tsv.str());

    auto exact = covermi::exact_partition_nmi(a, b);
    if (with_oracle) {
      auto oracle = covermi::bruteforce_nmi(a, b);
      auto joint = covermi::joint_from_counting(a, b);
      for (std::size_t r = 0; r < a.module_count() && pass; ++r)
        for (std::size_t c = 0; c < b.module_count() && pass; ++c) {
          auto common = static_cast<std::uint64_t>(
              std::llround(joint.at(r, c) * static_cast<double>(n)));
          if (oracle.pair_counts[r][c] * n != common * oracle.total) {
            pass = false;
            detail = " (oracle joint != counting joint, trial " +
                     std::to_string(trial) + ")";
          }
        }
    }

    covermi::EstimateOptions opt;
    opt.tolerance = 0.02;
    opt.seed = 2000 + trial;
    auto estimate = covermi::estimate_nmi(a, b, opt);
    if (!estimate.converged ||
        std::fabs(estimate.estimate - exact.nmi_max) > estimate.bound) {
      pass = false;
      detail = " (Monte Carlo outside its bound, trial " +
               std::to_string(trial) + ")";
    }
  }
  report(2, pass,
         "partition limit on 50 random partition pairs" + detail);
}

// 3. Self-similarity: covers vs themselves and vs renamed copies.
void criterion3() {
  RngStream rng(3003);
  bool pass = true;
  for (int trial = 0; trial < 20 && pass; ++trial) {
    bool oracle = trial < 10;
    std::size_t n = oracle ? 4 + rng.bounded(5) : 1000 + rng.bounded(9001);
    Cover c = fixtures::random_cover(rng, n, oracle ? 3 : 12,
                                     oracle ? 300 : 50);
    Cover renamed = fixtures::rename_modules(c, "r_");
    if (oracle) {
      pass = near(covermi::bruteforce_nmi(c, c).mi.nmi_max, 1.0, 1e-12) &&
             near(covermi::bruteforce_nmi(c, renamed).mi.nmi_max, 1.0, 1e-12);
    } else {
      covermi::EstimateOptions opt;
      opt.tolerance = 0.01;
      opt.seed = 300 + trial;
      auto self = covermi::estimate_nmi(c, c, opt);
      auto rn = covermi::estimate_nmi(c, renamed, opt);
      pass = self.converged && rn.converged &&
             near(self.estimate, 1.0, 1e-12) && near(rn.estimate, 1.0, 1e-12);
    }
  }
  report(3, pass,
         "self-similarity of 20 random covers (oracle and Monte Carlo)");
}

// 4. Split sensitivity: I = H(A) = 1 bit, NMI = 2/3 via both paths.
void criterion4() {
  Cover a = fixtures::fig_partition_a();
  Cover b = fixtures::fig_split_b();
  auto counting = covermi::exact_partition_nmi(a, b);
  auto oracle = covermi::bruteforce_nmi(a, b);
  bool pass = near(counting.mi, 1.0, 1e-12) &&
              near(counting.h_x, 1.0, 1e-12) &&
              near(counting.nmi_max, 2.0 / 3, 1e-12) &&
              near(oracle.mi.mi, 1.0, 1e-12) &&
              near(oracle.mi.nmi_max, 2.0 / 3, 1e-12);
  report(4, pass, "split fixture: I = H(A) = 1 bit, NMI = 2/3, both paths");
}

// 5. Hierarchy sensitivity: same MI, strictly larger entropy, NMI < 1.
void criterion5() {
  auto oracle = covermi::bruteforce_nmi(fixtures::fig_partition_a(),
                                        fixtures::fig_hierarchy_c());
  bool pass = near(oracle.mi.mi, oracle.mi.h_x, 1e-12) &&
              oracle.mi.h_y > oracle.mi.h_x + 1e-9 &&
              oracle.mi.nmi_max < 1.0 - 1e-9;
  report(5, pass, "hierarchy fixture: I = H(A), H(A') > H(A), NMI < 1");
}

// 6. Overlap sensitivity: the MI itself drops below H(A).
void criterion6() {
  auto oracle = covermi::bruteforce_nmi(fixtures::fig_partition_a(),
                                        fixtures::fig_overlap_d());
  bool pass = oracle.mi.mi < oracle.mi.h_x - 1e-9 &&
              oracle.mi.nmi_max < 1.0 - 1e-9;
  report(6, pass, "overlap fixture: I < H(A), NMI < 1");
}

// 7. Error-bound coverage: over 200 independently seeded runs the miss
// fraction stays within risk plus a 3-sigma binomial allowance.
void criterion7() {
  Cover a = fixtures::overlap6_a();
  Cover b = fixtures::overlap6_b();
  double truth = covermi::bruteforce_nmi(a, b).mi.nmi_max;
  const int runs = 200;
  int misses = 0;
  for (int run = 0; run < runs; ++run) {
    covermi::EstimateOptions opt;
    opt.risk = 0.05;
    opt.tolerance = 0.02;
    opt.seed = 70000 + run;
    opt.batch_size = 5000;
    auto estimate = covermi::estimate_nmi(a, b, opt);
    if (!estimate.converged ||
        std::fabs(estimate.estimate - truth) > estimate.bound)
      ++misses;
  }
  double fraction = misses / static_cast<double>(runs);
  double allowance = 0.05 + 3 * std::sqrt(0.05 * 0.95 / runs);
  report(7, fraction <= allowance,
         "error-bound coverage: miss fraction " + std::to_string(fraction) +
             " <= " + std::to_string(allowance));
}

// 8. Worst-case probability closed forms at the count boundaries.
void criterion8() {
  auto [lo0, hi0] = covermi::theta_far(0, 100, 0.05);
  auto [loN, hiN] = covermi::theta_far(100, 100, 0.05);
  double edge = std::pow(0.025, 0.01);
  bool pass = near(hi0, 1.0 - edge, 1e-8) && lo0 == 0.0 &&
              near(loN, edge, 1e-8) && hiN == 1.0;
  report(8, pass, "theta_far closed forms at zeta = 0 and zeta = N");
}

// 9. Sampler sanity: permutation uniformity (chi-squared, n = 4, 1e5
// draws, p > 0.001) and per-position bit fairness within 4 sigma.
void criterion9() {
  RngStream rng(9009);
  const int draws = 100000;
  std::map<std::vector<int>, int> perm_counts;
  std::vector<double> bit_sums(3, 0.0);
  for (int d = 0; d < draws; ++d) {
    auto i = covermi::sample_interleaving(rng, 4);
    ++perm_counts[i.order];
    for (int k = 0; k < 3; ++k) bit_sums[k] += i.bits[k];
  }
  double expected = draws / 24.0;
  double chi2 = 0.0;
  for (const auto& [perm, count] : perm_counts)
    chi2 += (count - expected) * (count - expected) / expected;
  // 0.999 quantile of chi-squared with 23 degrees of freedom.
  bool uniform = perm_counts.size() == 24 && chi2 < 49.7282;
  bool fair = true;
  double sigma4 = 4 * std::sqrt(0.25 / draws);
  for (double sum : bit_sums)
    fair = fair && std::fabs(sum / draws - 0.5) < sigma4;
  report(9, uniform && fair,
         "sampler uniformity: chi-squared " + std::to_string(chi2) +
             " < 49.7282, bits fair");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}

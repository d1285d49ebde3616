#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define COVERMI_ISATTY _isatty
#define COVERMI_FILENO _fileno
#else
#include <unistd.h>
#define COVERMI_ISATTY isatty
#define COVERMI_FILENO fileno
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "covermi/bruteforce.hpp"
#include "covermi/cover.hpp"
#include "covermi/estimator.hpp"
#include "covermi/mi.hpp"

namespace {

using covermi::Cover;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitDomainMismatch = 3;

struct Options {
  std::string file_a, file_b;
  double risk = 0.05;
  double tolerance = 0.01;
  std::uint64_t seed = 0;
  std::uint64_t max_events = 100'000'000;
  std::uint64_t batch_size = 10'000;
  bool exact = false;
  std::size_t exact_limit = 8;
  bool merge_duplicates = false;
  std::string norm = "both";
  int threads = 1;
};

Cover load_cover(const std::string& path, bool merge_duplicates,
                 std::vector<std::string>& warnings) {
  Cover cover = Cover::parse_file(path);
  auto groups = cover.duplicate_module_groups();
  if (groups.empty()) return cover;
  if (!merge_duplicates) {
    try {
      cover.validate_unique_modules();
    } catch (const covermi::ValidationError& e) {
      throw covermi::ValidationError(path + ": " + e.what());
    }
  }
  warnings.push_back(path + ": merged " + std::to_string(groups.size()) +
                     " duplicate module group(s)");
  return cover.merged_duplicates();
}

json base_report(const Options& opt, const covermi::MiResult& mi,
                 const std::vector<std::string>& warnings) {
  return json{{"method", nullptr},
              {"mi_bits", mi.mi},
              {"h_x_bits", mi.h_x},
              {"h_y_bits", mi.h_y},
              {"nmi_max", mi.nmi_max},
              {"nmi_avg", mi.nmi_avg},
              {"n_events", nullptr},
              {"n_pairs", nullptr},
              {"error_bound", nullptr},
              {"risk", opt.risk},
              {"tolerance", opt.tolerance},
              {"seed", opt.seed},
              {"converged", true},
              {"warnings", warnings}};
}

void print_summary(const json& report, const std::string& norm) {
  std::cerr << "method: " << report["method"].get<std::string>() << "\n";
  if (norm != "avg")
    std::cerr << "nmi_max: " << report["nmi_max"].get<double>() << "\n";
  if (norm != "max")
    std::cerr << "nmi_avg: " << report["nmi_avg"].get<double>() << "\n";
  if (!report["error_bound"].is_null())
    std::cerr << "error_bound: " << report["error_bound"].get<double>()
              << " after " << report["n_events"].get<std::uint64_t>()
              << " events\n";
}

int run(const Options& opt) {
  std::vector<std::string> warnings;
  Cover a = load_cover(opt.file_a, opt.merge_duplicates, warnings);
  Cover b = load_cover(opt.file_b, opt.merge_duplicates, warnings);
  covermi::common_domain(a, b);

  json report;
  int exit_code = kExitOk;
  if (a.is_partition() && b.is_partition()) {
    auto mi = covermi::exact_partition_nmi(a, b);
    report = base_report(opt, mi, warnings);
    report["method"] = "counting";
  } else if (opt.exact && a.node_count() <= opt.exact_limit) {
    auto exact = covermi::bruteforce_nmi(a, b, opt.exact_limit);
    report = base_report(opt, exact.mi, warnings);
    report["method"] = "bruteforce";
    report["n_events"] = exact.total;
  } else {
    covermi::EstimateOptions estimate_opt;
    estimate_opt.risk = opt.risk;
    estimate_opt.tolerance = opt.tolerance;
    estimate_opt.seed = opt.seed;
    estimate_opt.max_events = opt.max_events;
    estimate_opt.batch_size = opt.batch_size;
    estimate_opt.threads = opt.threads;
    if (COVERMI_ISATTY(COVERMI_FILENO(stderr)))
      estimate_opt.progress = [](std::uint64_t n, double bound) {
        std::cerr << "events: " << n << "  bound: " << bound << "\n";
      };
    auto estimate = covermi::estimate_nmi(a, b, estimate_opt);
    report = base_report(opt, estimate.mi, warnings);
    report["method"] = "montecarlo";
    report["n_events"] = estimate.n_events;
    report["n_pairs"] = estimate.n_pairs;
    report["error_bound"] = estimate.bound;
    report["converged"] = estimate.converged;
    if (!estimate.converged) exit_code = kExitNotConverged;
  }

  std::cout << report.dump() << "\n";
  print_summary(report, opt.norm);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cover-mi: mutual-information similarity between two covers "
      "(overlapping or hierarchical module assignments)"};
  Options opt;
  app.add_option("cover_a", opt.file_a, "first cover file (TSV)")->required();
  app.add_option("cover_b", opt.file_b, "second cover file (TSV)")->required();
  app.add_option("--risk", opt.risk, "risk epsilon for the error bound");
  app.add_option("--tolerance", opt.tolerance,
                 "target error tolerance in NMI units");
  app.add_option("--seed", opt.seed, "RNG seed");
  app.add_option("--max-events", opt.max_events,
                 "Monte Carlo event budget");
  app.add_option("--batch-size", opt.batch_size,
                 "events between error-bound checks");
  app.add_flag("--exact", opt.exact,
               "enumerate all interleavings (tiny covers only)");
  app.add_option("--exact-limit", opt.exact_limit,
                 "node limit for --exact enumeration");
  app.add_flag("--merge-duplicates", opt.merge_duplicates,
               "merge modules with identical node sets instead of failing");
  app.add_option("--norm", opt.norm, "normalization shown in the summary")
      ->check(CLI::IsMember({"max", "avg", "both"}));
  app.add_option("--threads", opt.threads, "sampling worker threads");
  CLI11_PARSE(app, argc, argv);

  try {
    return run(opt);
  } catch (const covermi::DomainMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainMismatch;
  } catch (const covermi::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const covermi::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

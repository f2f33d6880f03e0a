// tdasweep: command-line front end.
//
//   tdasweep extract          --input F [--labels F] --thresholds 100 --interval-width 2 --output out.csv
//   tdasweep bench            [--input F | --synthetic N] --workers 4
//   tdasweep knn              --input F --labels F [--test-input F --test-labels F] [--train-size N --test-size N]
//   tdasweep check-invariants [--input F | --random N --seed S]
//
// Every subcommand prints one machine-readable summary line of key=value tokens.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tdasweep/tdasweep.hpp"
#include "tdasweep/testing/invariants.hpp"

namespace fs = std::filesystem;
using namespace tdasweep;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string format = "idx";
  std::string input;
  std::string labels;
  bool has_label = false;
  std::size_t rows = 28;
  std::size_t cols = 28;
  std::size_t channels = 1;
};

struct CliConfig {
  InputOptions in;
  InputOptions test_in;
  std::string thresholds = "100";
  std::size_t interval_width = 1;
  std::optional<std::size_t> workers;
  std::string output;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  std::size_t synthetic = 0;
  std::size_t random = 100;
  std::size_t train_size = 0;
  std::size_t test_size = 0;

  SweepConfig sweep() const {
    SweepConfig sc;
    try {
      sc.thresholds = parse_thresholds(thresholds);
      sc.interval_width = interval_width;
      sc.workers = workers;
      sc.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return sc;
  }
};

Dataset load(const InputOptions& in) {
  if (in.input.empty()) throw UsageError("--input is required");
  if (in.format == "idx") {
    std::optional<fs::path> labels;
    if (!in.labels.empty()) labels = in.labels;
    return load_idx(in.input, labels);
  }
  return load_csv(in.input, in.has_label, in.rows, in.cols, in.channels);
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", s);
  return buf;
}

int cmd_extract(const CliConfig& cfg) {
  const SweepConfig sc = cfg.sweep();
  if (cfg.output.empty()) throw UsageError("--output is required");
  const Dataset ds = load(cfg.in);
  const auto [features, report] = batch_extract(ds, sc);
  write_features(features, fs::path(cfg.output));
  std::cout << "images=" << report.n_images << " features=" << report.n_features
            << " wall_s=" << seconds(report.wall_time) << " workers=" << report.workers_used << '\n';
  return 0;
}

int cmd_bench(const CliConfig& cfg) {
  SweepConfig sc = cfg.sweep();
  Dataset ds;
  if (!cfg.in.input.empty()) {
    ds = load(cfg.in);
  } else if (cfg.synthetic > 0) {
    ds = random_dataset(cfg.synthetic, cfg.in.rows, cfg.in.cols, cfg.in.channels, cfg.seed);
  } else {
    throw UsageError("bench needs --input or --synthetic N");
  }

  const std::size_t workers = sc.workers.value_or(1);
  sc.workers = 1;
  const BatchResult single = batch_extract(ds, sc);
  BatchResult multi = single;
  if (workers > 1) {
    sc.workers = workers;
    multi = batch_extract(ds, sc);
  }
  const bool identical = single.features.same_values(multi.features);
  const double speedup = workers > 1 ? single.report.wall_time / multi.report.wall_time : 1.0;

  std::cout << "images=" << single.report.n_images << " features=" << single.report.n_features
            << " wall_s_1=" << seconds(single.report.wall_time) << " wall_s_n=" << seconds(multi.report.wall_time)
            << " workers=" << multi.report.workers_used << " speedup=" << seconds(speedup)
            << " outputs_identical=" << (identical ? "true" : "false") << '\n';
  return identical ? 0 : kExitFailure;
}

std::pair<Dataset, Dataset> knn_split(const CliConfig& cfg) {
  Dataset train = load(cfg.in);
  if (!train.labeled()) throw UsageError("knn needs labeled training data");

  if (!cfg.test_in.input.empty()) {
    Dataset test = load(cfg.test_in);
    if (!test.labeled()) throw UsageError("knn needs labeled test data");
    auto take = [&](const Dataset& ds, std::size_t n, std::uint64_t seed) {
      if (n == 0 || n >= ds.size()) return ds;
      auto perm = seeded_permutation(ds.size(), seed);
      perm.resize(n);
      return ds.select(perm);
    };
    return {take(train, cfg.train_size, cfg.seed), take(test, cfg.test_size, cfg.seed + 1)};
  }

  const std::size_t n_train = cfg.train_size;
  const std::size_t n_test = cfg.test_size;
  if (n_train == 0 || n_test == 0) throw UsageError("without --test-input, --train-size and --test-size are required");
  if (n_train + n_test > train.size()) {
    throw UsageError("split of " + std::to_string(n_train + n_test) + " exceeds dataset size " +
                     std::to_string(train.size()));
  }
  const auto perm = seeded_permutation(train.size(), cfg.seed);
  const std::span<const std::size_t> all(perm);
  return {train.select(all.first(n_train)), train.select(all.subspan(n_train, n_test))};
}

int cmd_knn(const CliConfig& cfg) {
  const SweepConfig sc = cfg.sweep();
  const auto [train, test] = knn_split(cfg);
  if (!train.images.front().same_shape(test.images.front())) {
    throw UsageError("train and test images differ in geometry");
  }
  const std::size_t workers = sc.workers.value_or(1);

  using clock = std::chrono::steady_clock;
  auto timed_eval = [&](const FeatureMatrix& tr, const FeatureMatrix& te) {
    const auto t0 = clock::now();
    const double acc = evaluate(fit(tr, cfg.k), te, workers);
    return std::pair{acc, std::chrono::duration<double>(clock::now() - t0).count()};
  };

  const FeatureMatrix raw_train = pixel_matrix(train);
  const FeatureMatrix raw_test = pixel_matrix(test);
  const auto [raw_acc, raw_s] = timed_eval(raw_train, raw_test);

  const BatchResult sweep_train = batch_extract(train, sc);
  const BatchResult sweep_test = batch_extract(test, sc);
  const auto [sweep_acc, sweep_s] = timed_eval(sweep_train.features, sweep_test.features);

  std::cout << "train=" << train.size() << " test=" << test.size() << " k=" << cfg.k
            << " raw_dims=" << raw_train.n_cols() << " sweep_dims=" << sweep_train.features.n_cols()
            << " raw_acc=" << seconds(raw_acc) << " sweep_acc=" << seconds(sweep_acc)
            << " extract_s=" << seconds(sweep_train.report.wall_time + sweep_test.report.wall_time)
            << " raw_eval_s=" << seconds(raw_s) << " sweep_eval_s=" << seconds(sweep_s) << '\n';
  return 0;
}

int cmd_check_invariants(const CliConfig& cfg) {
  const SweepConfig sc = cfg.sweep();
  const Dataset ds = cfg.in.input.empty()
                         ? random_dataset(cfg.random, cfg.in.rows, cfg.in.cols, cfg.in.channels, cfg.seed)
                         : load(cfg.in);
  const auto results = testing::check_flip_invariants(ds, sc.thresholds);

  bool all = true;
  for (const auto& r : results) {
    std::cout << r.name << ": " << (r.passed() ? "PASS" : "FAIL");
    if (!r.passed()) {
      all = false;
      std::cout << " images=";
      for (std::size_t i = 0; i < r.failing_images.size(); ++i) std::cout << (i ? "," : "") << r.failing_images[i];
    }
    std::cout << '\n';
  }
  std::cout << "images=" << ds.size() << " properties=" << results.size() << " passed=" << (all ? "true" : "false")
            << '\n';
  return all ? 0 : kExitFailure;
}

void add_input_options(CLI::App* app, InputOptions& in, const std::string& prefix = "") {
  app->add_option("--" + prefix + "format", in.format, "Input format")->check(CLI::IsMember({"idx", "csv"}));
  app->add_option("--" + prefix + "input", in.input, "Image file (IDX images or CSV)");
  app->add_option("--" + prefix + "labels", in.labels, "IDX label file");
  app->add_flag("--" + prefix + "has-label", in.has_label, "CSV lines start with a label");
  app->add_option("--" + prefix + "rows", in.rows, "CSV image rows")->check(CLI::PositiveNumber);
  app->add_option("--" + prefix + "cols", in.cols, "CSV image columns")->check(CLI::PositiveNumber);
  app->add_option("--" + prefix + "channels", in.channels, "CSV image channels")->check(CLI::PositiveNumber);
}

void add_sweep_options(CLI::App* app, CliConfig& cfg) {
  app->add_option("--thresholds", cfg.thresholds, "Comma-separated increasing thresholds in [1,255]");
  app->add_option("--interval-width", cfg.interval_width, "Coalescing width (>= 1)");
  app->add_option("--workers,--cls", cfg.workers, "Worker threads (default: sequential)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold sweep run-count feature extraction"};
  app.set_version_flag("--version", TDASWEEP_VERSION);
  app.require_subcommand(1);

  CliConfig cfg;

  auto* extract = app.add_subcommand("extract", "Extract features to CSV");
  add_input_options(extract, cfg.in);
  add_sweep_options(extract, cfg);
  extract->add_option("--output,-o", cfg.output, "Feature CSV path");

  auto* bench = app.add_subcommand("bench", "Compare single-worker and multi-worker extraction");
  add_input_options(bench, cfg.in);
  add_sweep_options(bench, cfg);
  bench->add_option("--synthetic", cfg.synthetic, "Generate N random images instead of reading input");
  bench->add_option("--seed", cfg.seed, "Seed for synthetic images");

  auto* knn = app.add_subcommand("knn", "Compare kNN accuracy on raw pixels and sweep features");
  add_input_options(knn, cfg.in);
  add_input_options(knn, cfg.test_in, "test-");
  add_sweep_options(knn, cfg);
  knn->add_option("-k,--k", cfg.k, "Neighbors")->check(CLI::PositiveNumber);
  knn->add_option("--train-size", cfg.train_size, "Training subset size");
  knn->add_option("--test-size", cfg.test_size, "Test subset size");
  knn->add_option("--seed", cfg.seed, "Seed for subset sampling");

  auto* check = app.add_subcommand("check-invariants", "Verify flip invariances of the sweep");
  add_input_options(check, cfg.in);
  add_sweep_options(check, cfg);
  check->add_option("--random", cfg.random, "Random images to generate when no input is given");
  check->add_option("--seed", cfg.seed, "Seed for random images");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) return cmd_extract(cfg);
    if (*bench) return cmd_bench(cfg);
    if (*knn) return cmd_knn(cfg);
    if (*check) return cmd_check_invariants(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tc/harness/episode.hpp"
#include "tc/taskgen/suite.hpp"

namespace tc {

struct EpisodeInput {
  std::string task_id;
  std::string house_id;
  World world;
  TaskSpec spec;
};

struct SuiteRunOptions {
  std::string agent = "frontier";
  Config config;
  std::uint64_t seed = 0;
  int parallelism = 1;
  std::optional<std::filesystem::path> trace_dir;  // one <task_id>.tctrace per episode
  std::optional<std::filesystem::path> map_dir;    // final agent maps per episode
  int bootstrap_samples = 2000;
};

struct HouseSummary {
  std::string house_id;
  int episodes = 0;
  double mean_transport_rate = 0.0;
};

struct SuiteSummary {
  std::string agent;
  std::uint64_t seed = 0;
  int budget = 0;
  std::vector<EpisodeResult> episodes;  // input order
  std::vector<HouseSummary> houses;     // first-appearance order
  double overall_mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<int> histogram;  // 10 bins over [0, 1]; 1.0 lands in the last
  int errors = 0;
};

// 95% percentile bootstrap interval of the mean.
std::pair<double, double> bootstrap_ci(const std::vector<double>& values, int samples, std::uint64_t seed);
std::vector<int> rate_histogram(const std::vector<double>& rates, int bins = 10);

// Runs every input in a worker pool. Results are collected by input index,
// so the summary does not depend on scheduling.
SuiteSummary run_suite(std::size_t count, const std::function<EpisodeInput(std::size_t)>& load,
                       const SuiteRunOptions& options);
SuiteSummary run_suite(const std::vector<EpisodeInput>& inputs, const SuiteRunOptions& options);
SuiteSummary run_suite(const Suite& suite, const SuiteRunOptions& options);

std::vector<EpisodeInput> episode_inputs(const std::vector<BuiltTask>& tasks);

nlohmann::json summary_to_json(const SuiteSummary& s);
std::string summary_to_string(const SuiteSummary& s);  // pretty JSON plus newline
// Flat whitespace-separated table, one row per episode plus per-house and
// overall means.
std::string summary_table(const SuiteSummary& s);

}  // namespace tc

#include "tc/harness/suite_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "tc/core/rng.hpp"

namespace tc {

std::pair<double, double> bootstrap_ci(const std::vector<double>& values, int samples, std::uint64_t seed) {
  if (values.empty()) return {0.0, 0.0};
  Rng rng(seed);
  const int n = static_cast<int>(values.size());
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += values[static_cast<std::size_t>(rng.uniform_int(0, n - 1))];
    means.push_back(sum / n);
  }
  std::sort(means.begin(), means.end());
  auto quantile = [&](double q) {
    const double pos = q * (means.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, means.size() - 1);
    return means[lo] + (pos - lo) * (means[hi] - means[lo]);
  };
  return {quantile(0.025), quantile(0.975)};
}

std::vector<int> rate_histogram(const std::vector<double>& rates, int bins) {
  std::vector<int> h(static_cast<std::size_t>(bins), 0);
  for (double r : rates) {
    int b = static_cast<int>(std::floor(r * bins + 1e-9));
    b = std::clamp(b, 0, bins - 1);
    ++h[static_cast<std::size_t>(b)];
  }
  return h;
}

SuiteSummary run_suite(std::size_t count, const std::function<EpisodeInput(std::size_t)>& load,
                       const SuiteRunOptions& options) {
  options.config.validate();
  make_agent(options.agent);  // fail fast on a bad name
  if (options.trace_dir) std::filesystem::create_directories(*options.trace_dir);
  if (options.map_dir) std::filesystem::create_directories(*options.map_dir);

  std::vector<EpisodeResult> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    const auto agent = make_agent(options.agent);
    for (std::size_t i = next++; i < count; i = next++) {
      EpisodeResult r;
      try {
        EpisodeInput in = load(i);
        r.task_id = in.task_id;
        r.house_id = in.house_id;
        EpisodeOptions eo;
        eo.task_id = in.task_id;
        eo.house_id = in.house_id;
        const std::uint64_t seed = episode_seed(options.seed, in.task_id);
        if (options.map_dir) eo.map_dump_prefix = *options.map_dir / in.task_id;
        if (options.trace_dir) {
          eo.trace_file = in.task_id + ".tctrace";
          std::ostringstream buf;
          eo.trace = &buf;
          r = run_episode(std::move(in.world), std::move(in.spec), *agent, options.config, seed, eo);
          std::ofstream out(*options.trace_dir / eo.trace_file, std::ios::binary);
          out << buf.str();
          if (!out) throw std::runtime_error("cannot write trace " + eo.trace_file);
        } else {
          r = run_episode(std::move(in.world), std::move(in.spec), *agent, options.config, seed, eo);
        }
      } catch (const std::exception& e) {
        r.error = e.what();
        r.terminal = "error";
      }
      results[i] = std::move(r);
    }
  };

  const int threads = std::max(1, std::min<int>(options.parallelism, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SuiteSummary s;
  s.agent = options.agent;
  s.seed = options.seed;
  s.budget = options.config.budget;
  s.episodes = std::move(results);

  std::vector<double> rates;
  std::map<std::string, std::size_t> house_index;
  std::vector<double> house_sums;
  for (const auto& r : s.episodes) {
    if (!r.error.empty()) ++s.errors;
    rates.push_back(r.transport_rate);
    auto [it, inserted] = house_index.emplace(r.house_id, s.houses.size());
    if (inserted) {
      s.houses.push_back({r.house_id, 0, 0.0});
      house_sums.push_back(0.0);
    }
    ++s.houses[it->second].episodes;
    house_sums[it->second] += r.transport_rate;
  }
  for (std::size_t h = 0; h < s.houses.size(); ++h) s.houses[h].mean_transport_rate = house_sums[h] / s.houses[h].episodes;
  if (!rates.empty()) {
    double sum = 0.0;
    for (double r : rates) sum += r;
    s.overall_mean = sum / static_cast<double>(rates.size());
  }
  std::tie(s.ci_low, s.ci_high) =
      bootstrap_ci(rates, options.bootstrap_samples, mix_seed(options.seed, hash_string("bootstrap")));
  s.histogram = rate_histogram(rates);
  return s;
}

SuiteSummary run_suite(const std::vector<EpisodeInput>& inputs, const SuiteRunOptions& options) {
  return run_suite(inputs.size(), [&](std::size_t i) { return inputs[i]; }, options);
}

SuiteSummary run_suite(const Suite& suite, const SuiteRunOptions& options) {
  return run_suite(
      suite.tasks.size(),
      [&](std::size_t i) {
        const auto& e = suite.tasks[i];
        return EpisodeInput{e.task_id, e.house_id, load_task_world(suite, e), e.spec};
      },
      options);
}

std::vector<EpisodeInput> episode_inputs(const std::vector<BuiltTask>& tasks) {
  std::vector<EpisodeInput> out;
  out.reserve(tasks.size());
  for (const auto& t : tasks) out.push_back({t.entry.task_id, t.entry.house_id, t.world, t.entry.spec});
  return out;
}

nlohmann::json summary_to_json(const SuiteSummary& s) {
  auto episodes = nlohmann::json::array();
  for (const auto& r : s.episodes) {
    nlohmann::json e{{"task_id", r.task_id},
                     {"house", r.house_id},
                     {"transported", r.transported},
                     {"required", r.required},
                     {"transport_rate", r.transport_rate},
                     {"steps", r.steps},
                     {"actions", r.actions},
                     {"terminal", r.terminal}};
    if (!r.trace_file.empty()) e["trace"] = r.trace_file;
    if (!r.error.empty()) e["error"] = r.error;
    episodes.push_back(std::move(e));
  }
  auto houses = nlohmann::json::array();
  for (const auto& h : s.houses)
    houses.push_back({{"house", h.house_id}, {"episodes", h.episodes}, {"mean_transport_rate", h.mean_transport_rate}});
  return {{"format", "tcsummary/1"},
          {"agent", s.agent},
          {"seed", s.seed},
          {"budget", s.budget},
          {"overall",
           {{"episodes", s.episodes.size()},
            {"mean_transport_rate", s.overall_mean},
            {"ci95", {s.ci_low, s.ci_high}}}},
          {"houses", std::move(houses)},
          {"histogram", {{"bin_width", 0.1}, {"counts", s.histogram}}},
          {"errors", s.errors},
          {"episodes", std::move(episodes)}};
}

std::string summary_to_string(const SuiteSummary& s) { return summary_to_json(s).dump(2) + "\n"; }

std::string summary_table(const SuiteSummary& s) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %-8s %6s %6s %9s %8s\n", "task_id", "house", "rate", "steps", "moved", "terminal");
  out << buf;
  for (const auto& r : s.episodes) {
    const std::string moved = std::to_string(r.transported) + "/" + std::to_string(r.required);
    std::snprintf(buf, sizeof buf, "%-16s %-8s %6.3f %6d %9s %8s\n", r.task_id.c_str(), r.house_id.c_str(),
                  r.transport_rate, r.steps, moved.c_str(), r.terminal.c_str());
    out << buf;
  }
  for (const auto& h : s.houses) {
    std::snprintf(buf, sizeof buf, "house %-10s mean %.4f over %d\n", h.house_id.c_str(), h.mean_transport_rate,
                  h.episodes);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "overall mean %.4f ci95 [%.4f, %.4f] episodes %zu errors %d\n", s.overall_mean,
                s.ci_low, s.ci_high, s.episodes.size(), s.errors);
  out << buf;
  return out.str();
}

}  // namespace tc

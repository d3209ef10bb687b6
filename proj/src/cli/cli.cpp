#include "tc/cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "tc/core/config.hpp"
#include "tc/harness/suite_runner.hpp"
#include "tc/render/replay.hpp"
#include "tc/taskgen/suite.hpp"
#include "tc/world/scene_io.hpp"

namespace tc {
namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string config_file;
  std::string format = "table";
  std::vector<std::string> params;
};

// defaults < config file < --param key=value < dedicated flags
Config resolve_config(const GlobalOptions& g) {
  Config c;
  if (!g.config_file.empty()) c = load_config_file(g.config_file, c);
  for (const auto& kv : g.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    nlohmann::json v;
    try {
      v = nlohmann::json::parse(kv.substr(eq + 1));
    } catch (const nlohmann::json::parse_error&) {
      throw std::invalid_argument("--param value for '" + kv.substr(0, eq) + "' is not a number");
    }
    c = apply_config_json(c, nlohmann::json{{kv.substr(0, eq), v}});
  }
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transport-challenge benchmark: generate suites, run agents, replay traces"};
  app.name("tcbench");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--config", g.config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "structured"}));
  app.add_option("--param", g.params, "Override one config key, e.g. --param k=3");

  auto* gen = app.add_subcommand("gen", "Generate a task suite");
  int houses = 5;
  int tasks_per_house = 20;
  std::string split = "test";
  std::string gen_out;
  gen->add_option("--houses", houses, "Number of houses")->check(CLI::PositiveNumber);
  gen->add_option("--tasks-per-house", tasks_per_house, "Tasks per house")->check(CLI::PositiveNumber);
  gen->add_option("--split", split, "train or test")->check(CLI::IsMember({"train", "test"}));
  gen->add_option("--out", gen_out, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Run an agent over a suite");
  std::string suite_path;
  std::string agent = "frontier";
  std::optional<int> budget;
  int parallelism = 1;
  std::string trace_dir;
  std::string summary_out;
  std::string map_dir;
  run->add_option("--suite", suite_path, "Suite directory or index file")->required();
  run->add_option("--agent", agent, "Agent")->check(CLI::IsMember(agent_names()));
  run->add_option("--budget", budget, "Interaction budget")->check(CLI::PositiveNumber);
  run->add_option("-j,--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--traces", trace_dir, "Write one trace per episode into this directory");
  run->add_option("--out", summary_out, "Also write the summary to this file");
  run->add_option("--maps", map_dir, "Dump final agent maps (PGM + JSON) into this directory");

  auto* replay = app.add_subcommand("replay", "Render traces over their scene");
  std::string scene_path;
  std::vector<std::string> trace_paths;
  std::string image_out;
  int scale = 4;
  replay->add_option("--scene", scene_path, "Scene file")->required()->check(CLI::ExistingFile);
  replay->add_option("--trace", trace_paths, "Trace file (repeatable)")->check(CLI::ExistingFile);
  replay->add_option("--out", image_out, "Output PPM image")->required();
  replay->add_option("--scale", scale, "Pixels per cell")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check a suite against its schema");
  std::string validate_path;
  validate->add_option("--suite", validate_path, "Suite directory or index file")->required();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "tcbench: " << e.what() << "\n" << app.help();
    return 2;
  }

  const bool structured = g.format == "structured";
  try {
    Config config = resolve_config(g);

    if (*gen) {
      SuiteParams p = split == "train" ? SuiteParams::standard_train(g.seed) : SuiteParams::standard_test(g.seed);
      p.houses = houses;
      p.tasks_per_house = tasks_per_house;
      p.house.map_size = config.map_size;
      p.task.goal_radius_m = config.goal_radius_m;
      p.task.budget = config.budget;
      const auto built = build_suite(p);
      const Suite suite = write_suite(built, p, gen_out);
      if (structured) {
        out << nlohmann::json{{"suite", gen_out}, {"houses", houses}, {"tasks", suite.tasks.size()}}.dump(2) << "\n";
      } else {
        out << "wrote " << suite.tasks.size() << " tasks in " << houses << " houses to " << gen_out << "\n";
      }
      return 0;
    }

    if (*run) {
      if (budget) config.budget = *budget;
      const Suite suite = load_suite(suite_path);
      SuiteRunOptions o;
      o.agent = agent;
      o.config = config;
      o.seed = g.seed;
      o.parallelism = parallelism;
      if (!trace_dir.empty()) o.trace_dir = trace_dir;
      if (!map_dir.empty()) o.map_dir = map_dir;
      const SuiteSummary s = run_suite(suite, o);
      const std::string text = structured ? summary_to_string(s) : summary_table(s);
      out << text;
      if (!summary_out.empty()) write_text(summary_out, text);
      for (const auto& r : s.episodes)
        if (!r.error.empty()) err << "tcbench: episode " << r.task_id << " failed: " << r.error << "\n";
      return s.errors > 0 ? 1 : 0;
    }

    if (*replay) {
      const World scene = load_scene(scene_path);
      std::vector<Trace> traces;
      for (const auto& t : trace_paths) traces.push_back(read_trace(t));
      RenderStyle style;
      style.scale = scale;
      const Image img = render_trajectory(scene, traces, style);
      img.write_ppm(image_out);
      if (structured) {
        out << nlohmann::json{{"image", image_out}, {"width", img.width()}, {"height", img.height()},
                              {"traces", traces.size()}}.dump(2)
            << "\n";
      } else {
        out << "wrote " << img.width() << "x" << img.height() << " image to " << image_out << "\n";
      }
      return 0;
    }

    if (*validate) {
      const auto problems = validate_suite(validate_path);
      if (structured) {
        auto arr = nlohmann::json::array();
        for (const auto& p : problems) arr.push_back({{"record", p.record}, {"message", p.message}});
        out << nlohmann::json{{"valid", problems.empty()}, {"problems", arr}}.dump(2) << "\n";
      } else if (problems.empty()) {
        out << "suite ok\n";
      } else {
        for (const auto& p : problems) out << p.record << ": " << p.message << "\n";
      }
      return problems.empty() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "tcbench: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace tc

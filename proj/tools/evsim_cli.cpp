#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>

#include "CLI11.hpp"

#include "evsim/harness/batch_runner.hpp"
#include "evsim/harness/config.hpp"
#include "evsim/harness/logs.hpp"
#include "evsim/harness/training.hpp"
#include "evsim/kernel/sim_time.hpp"

namespace fs = std::filesystem;
using namespace evsim;
using namespace evsim::harness;

namespace {

void print_seed_summary(const std::vector<EpisodeLog>& logs) {
  std::uint64_t seed = logs.empty() ? 0 : logs.front().seed;
  std::vector<double> returns;
  auto flush = [&] {
    if (returns.empty()) return;
    const auto s = summarize(returns);
    std::printf("seed %llu: %zu episodes, mean return %.4f (se %.4f)\n", static_cast<unsigned long long>(seed), s.n,
                s.mean, s.se);
    returns.clear();
  };
  for (const auto& l : logs) {
    if (l.seed != seed) {
      flush();
      seed = l.seed;
    }
    returns.push_back(l.total_return);
  }
  flush();
}

int cmd_run(const fs::path& config_path, std::optional<std::uint64_t> seed, std::optional<int> episodes,
            std::optional<std::string> out, bool overwrite, bool serial) {
  RunConfig config = load_run_config(config_path);
  if (seed) config.seeds = {*seed};
  if (episodes) {
    if (*episodes < 1) throw ConfigError("--episodes must be at least 1");
    config.episodes = *episodes;
  }
  if (out) config.output_dir = *out;

  const auto logs = serial ? run_batch_serial(config) : run_batch_parallel(config);
  const auto written = write_logs(logs, config, config.output_dir, overwrite);
  print_seed_summary(logs);
  std::printf("wrote %zu episode files and %s\n", written.episode_files.size(), written.manifest.string().c_str());
  return 0;
}

int cmd_train(const fs::path& config_path, const std::string& out, bool overwrite) {
  RunConfig config = load_run_config(config_path);
  if (config.policy.kind != PolicyKind::QLearning)
    throw ConfigError(config_path.string() + ": field 'policy.type': train needs \"q-learning\"");
  config.output_dir = out;

  auto results = train(config);
  std::vector<EpisodeLog> logs;
  nlohmann::json curves = nlohmann::json::array();
  for (auto& r : results) {
    const std::size_t tail = std::min<std::size_t>(50, r.returns.size());
    const auto s = summarize(std::span<const double>(r.returns).last(tail));
    std::printf("seed %llu: final %zu episodes mean return %.4f (se %.4f)\n", static_cast<unsigned long long>(r.seed),
                s.n, s.mean, s.se);
    curves.push_back({{"seed", r.seed}, {"returns", r.returns}, {"epsilon", r.epsilons}});
    for (auto& l : r.logs) logs.push_back(std::move(l));
  }
  const auto written = write_logs(logs, config, out, overwrite, {{"learning_curves", "learning_curves.json"}});
  {
    std::ofstream f(fs::path(out) / "learning_curves.json");
    f << curves.dump(2) << "\n";
    if (!f) throw std::runtime_error("cannot write learning_curves.json");
  }
  for (const auto& r : results) {
    const auto path = fs::path(out) / ("greedy_policy_seed" + std::to_string(r.seed) + ".json");
    std::ofstream f(path);
    f << greedy_table(*r.learner).dump() << "\n";
    if (!f) throw std::runtime_error("cannot write " + path.string());
  }
  std::printf("wrote %zu episode summaries, learning curves and greedy tables to %s\n", written.episode_files.size(),
              out.c_str());
  return 0;
}

int cmd_replay(const fs::path& log_path) {
  const auto ep = read_episode_log(log_path);
  std::printf("%6s  %-18s  %6s  %14s  %16s  %s\n", "step", "time", "action", "reward", "cumulative", "done");
  double total = 0.0;
  for (std::size_t i = 0; i < ep.rows.size(); ++i) {
    const auto& r = ep.rows[i];
    total += r.reward;
    std::printf("%6zu  %-18s  %6d  %14.4f  %16.4f  %s\n", i, to_string(SimTime{r.time_ns}).c_str(), r.action, r.reward,
                total, r.done ? "yes" : "no");
  }
  const double reported = ep.summary.value("return", 0.0);
  std::printf("steps %zu, return %.4f, reported %.4f%s\n", ep.rows.size(), total, reported,
              ep.rows.empty() || total == reported ? "" : "  (MISMATCH)");
  return ep.rows.empty() || total == reported ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event market simulator: run, train and replay environment episodes"};
  app.require_subcommand(1);

  std::string config_path, out, log_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<std::string> run_out;
  bool overwrite = false, serial = false;

  auto* run = app.add_subcommand("run", "Run episodes with a fixed or random policy and write logs");
  run->add_option("--config", config_path, "JSON run config")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Run only this seed");
  run->add_option("--episodes", episodes, "Episodes per seed");
  run->add_option("--out", run_out, "Output directory");
  run->add_flag("--overwrite", overwrite, "Replace an existing run in the output directory");
  run->add_flag("--serial", serial, "Use the serial reference runner");

  auto* tr = app.add_subcommand("train", "Train the tabular Q-learning baseline");
  tr->add_option("--config", config_path, "JSON run config")->required()->check(CLI::ExistingFile);
  tr->add_option("--out", out, "Output directory")->required();
  tr->add_flag("--overwrite", overwrite, "Replace an existing run in the output directory");

  auto* rp = app.add_subcommand("replay", "Print the step table of an episode log");
  rp->add_option("--log", log_path, "Episode .jsonl file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, seed, episodes, run_out, overwrite, serial);
    if (*tr) return cmd_train(config_path, out, overwrite);
    if (*rp) return cmd_replay(log_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

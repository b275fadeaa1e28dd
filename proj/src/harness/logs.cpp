#include "evsim/harness/logs.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "evsim/kernel/sim_time.hpp"

namespace evsim::harness {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string episode_file_name(std::uint64_t seed, std::uint64_t episode) {
  return "seed" + std::to_string(seed) + "_episode" + std::to_string(episode) + ".jsonl";
}

std::string episode_jsonl(const EpisodeLog& log) {
  std::string out;
  for (const auto& s : log.steps) {
    json row = {{"t", s.time_ns},
                {"time", to_string(SimTime{s.time_ns})},
                {"state", s.state},
                {"action", s.action},
                {"reward", s.reward},
                {"done", s.done}};
    out += row.dump();
    out += '\n';
  }
  json info = json::object();
  for (const auto& [k, v] : log.final_info) info[k] = v;
  json summary = {{"env", log.env},
                  {"seed", log.seed},
                  {"episode", log.episode},
                  {"kernel_seed", log.kernel_seed},
                  {"steps", log.step_count},
                  {"return", log.total_return},
                  {"trades", log.trade_count},
                  {"tape_digest", hex64(log.tape_digest)},
                  {"final_info", info}};
  out += json{{"summary", summary}}.dump();
  out += '\n';
  return out;
}

namespace {

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bytes;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

WrittenRun write_logs(const std::vector<EpisodeLog>& logs, const RunConfig& config, const fs::path& dir,
                      bool overwrite, const json& extra) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());

  const fs::path manifest_path = dir / "manifest.json";
  if (fs::exists(manifest_path)) {
    if (!overwrite)
      throw std::runtime_error(dir.string() + " already holds a run (manifest.json); pass --overwrite to replace it");
    for (const auto& entry : fs::directory_iterator(dir)) {
      const auto name = entry.path().filename().string();
      if (name.rfind("seed", 0) == 0 && entry.path().extension() == ".jsonl") fs::remove(entry.path());
    }
  }

  WrittenRun written;
  json files = json::array();
  for (const auto& log : logs) {
    const auto name = episode_file_name(log.seed, log.episode);
    const auto bytes = episode_jsonl(log);
    write_file(dir / name, bytes);
    written.episode_files.push_back(dir / name);
    files.push_back({{"file", name}, {"fnv1a", hex64(fnv1a(bytes))}, {"return", log.total_return}});
  }

  json manifest = {{"version", kVersion},
                   {"config", to_json(config)},
                   {"config_hash", hex64(config_hash(config))},
                   {"seeds", config.seeds},
                   {"episodes", config.episodes},
                   {"files", files}};
  for (const auto& [k, v] : extra.items()) manifest[k] = v;
  write_file(manifest_path, manifest.dump(2) + "\n");
  written.manifest = manifest_path;
  return written;
}

ReplayedEpisode read_episode_log(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  ReplayedEpisode ep;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
    }
    if (j.contains("summary")) {
      ep.summary = j["summary"];
      continue;
    }
    try {
      ep.rows.push_back(ReplayRow{j.at("t").get<std::int64_t>(), j.at("state").get<std::vector<double>>(),
                                  j.at("action").get<int>(), j.at("reward").get<double>(), j.at("done").get<bool>()});
    } catch (const json::exception& e) {
      throw std::runtime_error(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (ep.summary.is_null()) throw std::runtime_error(path.string() + ": missing summary line");
  return ep;
}

}  // namespace evsim::harness

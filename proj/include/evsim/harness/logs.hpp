#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "evsim/harness/episode_runner.hpp"

namespace evsim::harness {

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// "seed<S>_episode<E>.jsonl"
std::string episode_file_name(std::uint64_t seed, std::uint64_t episode);

/// One JSON object per step ({"t", "time", "state", "action", "reward",
/// "done"}) followed by one {"summary": {...}} line.
std::string episode_jsonl(const EpisodeLog& log);

struct WrittenRun {
  std::vector<std::filesystem::path> episode_files;
  std::filesystem::path manifest;
};

/// Writes one JSONL file per episode plus manifest.json (resolved config,
/// config hash, seeds, episode file hashes, version). Refuses a directory
/// that already holds a manifest unless `overwrite`. Throws
/// std::runtime_error on I/O failure. `extra` is merged into the manifest.
WrittenRun write_logs(const std::vector<EpisodeLog>& logs, const RunConfig& config, const std::filesystem::path& dir,
                      bool overwrite, const nlohmann::json& extra = nlohmann::json::object());

struct ReplayRow {
  std::int64_t time_ns{0};
  std::vector<double> state;
  int action{0};
  double reward{0.0};
  bool done{false};
};

struct ReplayedEpisode {
  std::vector<ReplayRow> rows;
  nlohmann::json summary;
};

/// Parses an episode file written by write_logs.
ReplayedEpisode read_episode_log(const std::filesystem::path& path);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace evsim::harness

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collage/tasks.hpp"

namespace collage {

struct CanvasSize {
  int width = 512, height = 512;
  bool operator==(const CanvasSize&) const = default;
};

struct PolisherConfig {
  std::string url;  // empty: no polishing, prompts pass through
  int timeout_ms = 10000;
  std::string credential_env = "COLLAGE_POLISHER_TOKEN";
};

struct GenConfig {
  std::string asset_root;
  std::string out_dir;
  uint64_t master_seed = 1;
  std::vector<CanvasSize> canvas_sizes = {{512, 512}};
  int shard_size = 1000;
  int jobs = 0;  // 0: all hardware threads
  int png_compression = 1;
  std::array<int64_t, kTaskCount> counts{};  // samples per task
  int object_count_min = 2, object_count_max = 4;
  double object_size_min = 0.22, object_size_max = 0.48;
  PolisherConfig polisher;

  int64_t total_count() const;
  // Field-level problems; empty means usable.
  std::vector<std::string> problems() const;

  // Canonical form: every field, sorted keys, no volatile values. Equal
  // configs give equal dumps, and the dump round-trips through from_json.
  nlohmann::json to_json() const;
  std::string canonical_dump() const;
  std::string hash() const;  // 16 hex chars over the canonical dump

  // Strict: unknown keys and wrong types are errors.
  static GenConfig from_json(const nlohmann::json& j);
};

GenConfig load_config_file(const std::string& path);

}  // namespace collage

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collage/taskgen.hpp"

namespace collage {

// Aspect-ratio bucket in [0, 30]: 0 is 1:4 (tall), 15 square, 30 is 4:1
// (wide), log-spaced; ratios beyond 4:1 clamp to the end buckets.
// bucket_of(w, h) + bucket_of(h, w) == 30 for all sizes.
int bucket_of(int width, int height);

// Per-sample seed: collision-free across indices for a fixed master seed and
// task tag (the index map is bijective before the final mix).
uint64_t derive_seed(uint64_t master_seed, std::string_view task, uint64_t index);

struct ManifestRecord {
  uint64_t sample_id = 0;
  std::string task;
  uint64_t seed = 0;
  int bucket = 0;
  std::string prompt;
  std::string raw_prompt;
  std::map<std::string, std::string> files;  // role -> relative path
  nlohmann::json meta;

  nlohmann::json to_json() const;
  static ManifestRecord from_json(const nlohmann::json& j);  // strict
};

struct ShardManifest {
  std::string shard_id;
  std::string config_hash;
  uint64_t master_seed = 0;
  std::vector<ManifestRecord> records;
};

// Serialize line-oriented: one header object, then one record per line.
std::string manifest_to_jsonl(const ShardManifest& m);
ShardManifest manifest_from_jsonl(const std::string& text);  // strict

// Writes <out_dir>/<shard_id>/ atomically (temp dir + rename): all PNGs plus
// manifest.jsonl. sample_id and file names come from `first_id + position`.
// Throws if the shard directory already exists.
ShardManifest write_shard(const std::vector<Sample>& samples, const std::string& out_dir,
                          int shard_index, uint64_t first_id, const std::string& config_hash,
                          uint64_t master_seed, int png_compression);

std::string shard_name(int shard_index);
std::string sample_file_name(uint64_t sample_id, const std::string& role);

struct ValidationReport {
  int64_t checked = 0;
  int64_t passed = 0;
  std::map<std::string, std::pair<int64_t, int64_t>> per_task;  // tag -> {checked, passed}
  std::vector<std::string> failures;                            // "sample 17: tgt pixels differ"
  bool ok() const { return checked > 0 && static_cast<int64_t>(failures.size()) == 0; }
};

// Replays every sample recorded under out_dir (config.json + shard manifests)
// and compares stored images and records against regenerated ones.
ValidationReport validate_run(const std::string& out_dir);

}  // namespace collage

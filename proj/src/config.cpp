#include "collage/config.hpp"

#include <cstdio>
#include <fstream>

#include "collage/rng.hpp"

using nlohmann::json;

namespace collage {

int64_t GenConfig::total_count() const {
  int64_t total = 0;
  for (int64_t c : counts) total += c;
  return total;
}

std::vector<std::string> GenConfig::problems() const {
  std::vector<std::string> out;
  if (canvas_sizes.empty()) out.push_back("canvas_sizes is empty");
  for (const CanvasSize& c : canvas_sizes)
    if (c.width < 64 || c.height < 64 || c.width > 4096 || c.height > 4096)
      out.push_back("canvas size outside [64, 4096]: " + std::to_string(c.width) + "x" +
                    std::to_string(c.height));
  if (shard_size < 1 || shard_size > 100000) out.push_back("shard_size outside [1, 100000]");
  if (jobs < 0 || jobs > 1024) out.push_back("jobs outside [0, 1024]");
  if (png_compression < 0 || png_compression > 9)
    out.push_back("png_compression outside [0, 9]");
  for (int i = 0; i < kTaskCount; ++i)
    if (counts[i] < 0)
      out.push_back(std::string("negative count for ") + std::string(task_tag(TaskKind(i))));
  if (object_count_min < 1 || object_count_max < object_count_min ||
      object_count_max > 16)
    out.push_back("object count range invalid");
  if (!(object_size_min >= 0.05 && object_size_max <= 0.9 &&
        object_size_min <= object_size_max))
    out.push_back("object size range invalid");
  if (polisher.timeout_ms < 1 || polisher.timeout_ms > 600000)
    out.push_back("polisher timeout outside [1, 600000] ms");
  return out;
}

json GenConfig::to_json() const {
  json sizes = json::array();
  for (const CanvasSize& c : canvas_sizes) sizes.push_back({c.width, c.height});
  json cnt = json::object();
  for (int i = 0; i < kTaskCount; ++i)
    cnt[std::string(task_tag(TaskKind(i)))] = counts[i];
  return {
      {"asset_root", asset_root},
      {"out_dir", out_dir},
      {"master_seed", master_seed},
      {"canvas_sizes", sizes},
      {"shard_size", shard_size},
      {"jobs", jobs},
      {"png_compression", png_compression},
      {"counts", cnt},
      {"object_count_min", object_count_min},
      {"object_count_max", object_count_max},
      {"object_size_min", object_size_min},
      {"object_size_max", object_size_max},
      {"polisher",
       {{"url", polisher.url},
        {"timeout_ms", polisher.timeout_ms},
        {"credential_env", polisher.credential_env}}},
  };
}

std::string GenConfig::canonical_dump() const { return to_json().dump(); }

std::string GenConfig::hash() const {
  const uint64_t h = hash_str(canonical_dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

[[noreturn]] void bad_config(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

template <class T>
T get_field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad_config(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

GenConfig GenConfig::from_json(const json& j) {
  if (!j.is_object()) bad_config("top level must be an object");
  static const char* known[] = {
      "asset_root", "out_dir", "master_seed", "canvas_sizes", "shard_size",
      "jobs", "png_compression", "counts", "object_count_min", "object_count_max",
      "object_size_min", "object_size_max", "polisher"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) bad_config("unknown key '" + it.key() + "'");
  }

  GenConfig cfg;
  cfg.asset_root = get_field<std::string>(j, "asset_root", "");
  cfg.out_dir = get_field<std::string>(j, "out_dir", "");
  cfg.master_seed = get_field<uint64_t>(j, "master_seed", 1);
  if (j.contains("canvas_sizes")) {
    cfg.canvas_sizes.clear();
    if (!j["canvas_sizes"].is_array()) bad_config("canvas_sizes must be an array");
    for (const auto& e : j["canvas_sizes"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        bad_config("canvas_sizes entries must be [width, height]");
      cfg.canvas_sizes.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  }
  cfg.shard_size = get_field<int>(j, "shard_size", cfg.shard_size);
  cfg.jobs = get_field<int>(j, "jobs", cfg.jobs);
  cfg.png_compression = get_field<int>(j, "png_compression", cfg.png_compression);
  if (j.contains("counts")) {
    if (!j["counts"].is_object()) bad_config("counts must be an object");
    for (auto it = j["counts"].begin(); it != j["counts"].end(); ++it) {
      auto task = task_from_tag(it.key());
      if (!task) bad_config("counts has unknown task '" + it.key() + "'");
      if (!it.value().is_number_integer())
        bad_config("counts." + it.key() + " must be an integer");
      cfg.counts[static_cast<int>(*task)] = it.value().get<int64_t>();
    }
  }
  cfg.object_count_min = get_field<int>(j, "object_count_min", cfg.object_count_min);
  cfg.object_count_max = get_field<int>(j, "object_count_max", cfg.object_count_max);
  cfg.object_size_min = get_field<double>(j, "object_size_min", cfg.object_size_min);
  cfg.object_size_max = get_field<double>(j, "object_size_max", cfg.object_size_max);
  if (j.contains("polisher")) {
    const json& p = j["polisher"];
    if (!p.is_object()) bad_config("polisher must be an object");
    for (auto it = p.begin(); it != p.end(); ++it)
      if (it.key() != "url" && it.key() != "timeout_ms" && it.key() != "credential_env")
        bad_config("polisher has unknown key '" + it.key() + "'");
    cfg.polisher.url = get_field<std::string>(p, "url", "");
    cfg.polisher.timeout_ms = get_field<int>(p, "timeout_ms", cfg.polisher.timeout_ms);
    cfg.polisher.credential_env =
        get_field<std::string>(p, "credential_env", cfg.polisher.credential_env);
  }

  if (auto probs = cfg.problems(); !probs.empty()) bad_config(probs.front());
  return cfg;
}

GenConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return GenConfig::from_json(j);
}

}  // namespace collage

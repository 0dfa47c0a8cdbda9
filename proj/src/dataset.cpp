#include "collage/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "collage/io.hpp"

namespace fs = std::filesystem;

namespace collage {

int bucket_of(int width, int height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("bucket_of: bad size");
  if (width < height) return 30 - bucket_of(height, width);
  const double a = std::min(4.0, static_cast<double>(width) / height);
  const int idx = static_cast<int>(std::rint(15.0 * (1.0 + 0.5 * std::log2(a))));
  return std::clamp(idx, 15, 30);
}

uint64_t derive_seed(uint64_t master_seed, std::string_view task, uint64_t index) {
  uint64_t h = mix64(master_seed ^ 0x9E3779B97F4A7C15ULL);
  h = mix64(h ^ hash_str(task));
  return mix64(h + index * 0x9E3779B97F4A7C15ULL);  // index map stays bijective
}

namespace {

void require_keys(const nlohmann::json& j, std::initializer_list<const char*> keys,
                  const char* what) {
  if (!j.is_object())
    throw std::invalid_argument(std::string(what) + ": not a JSON object");
  for (const char* k : keys)
    if (!j.contains(k))
      throw std::invalid_argument(std::string(what) + ": missing key '" + k + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known)
      throw std::invalid_argument(std::string(what) + ": unknown key '" + it.key() + "'");
  }
}

uint64_t get_u64(const nlohmann::json& j, const char* key, const char* what) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw std::invalid_argument(std::string(what) + ": '" + key + "' is not an integer");
  if (v.is_number_integer() && v.get<int64_t>() < 0 && !v.is_number_unsigned())
    throw std::invalid_argument(std::string(what) + ": '" + key + "' is negative");
  return v.get<uint64_t>();
}

std::string get_str(const nlohmann::json& j, const char* key, const char* what) {
  const auto& v = j.at(key);
  if (!v.is_string())
    throw std::invalid_argument(std::string(what) + ": '" + key + "' is not a string");
  return v.get<std::string>();
}

}  // namespace

nlohmann::json ManifestRecord::to_json() const {
  nlohmann::json files_j = nlohmann::json::object();
  for (const auto& [role, path] : files) files_j[role] = path;
  return {{"sample_id", sample_id}, {"task", task},
          {"seed", seed},           {"bucket", bucket},
          {"prompt", prompt},       {"raw_prompt", raw_prompt},
          {"files", files_j},       {"meta", meta}};
}

ManifestRecord ManifestRecord::from_json(const nlohmann::json& j) {
  require_keys(j,
               {"sample_id", "task", "seed", "bucket", "prompt", "raw_prompt", "files",
                "meta"},
               "record");
  ManifestRecord r;
  r.sample_id = get_u64(j, "sample_id", "record");
  r.task = get_str(j, "task", "record");
  r.seed = get_u64(j, "seed", "record");
  if (!j.at("bucket").is_number_integer() && !j.at("bucket").is_number_unsigned())
    throw std::invalid_argument("record: 'bucket' is not an integer");
  r.bucket = j.at("bucket").get<int>();
  r.prompt = get_str(j, "prompt", "record");
  r.raw_prompt = get_str(j, "raw_prompt", "record");
  const auto& f = j.at("files");
  if (!f.is_object()) throw std::invalid_argument("record: 'files' is not an object");
  for (auto it = f.begin(); it != f.end(); ++it) {
    if (!it.value().is_string())
      throw std::invalid_argument("record: file path for '" + it.key() +
                                  "' is not a string");
    r.files[it.key()] = it.value().get<std::string>();
  }
  r.meta = j.at("meta");
  return r;
}

std::string manifest_to_jsonl(const ShardManifest& m) {
  nlohmann::json header = {{"shard_id", m.shard_id},
                           {"config_hash", m.config_hash},
                           {"master_seed", m.master_seed}};
  std::string out = header.dump();
  out += '\n';
  for (const ManifestRecord& r : m.records) {
    out += r.to_json().dump();
    out += '\n';
  }
  return out;
}

ShardManifest manifest_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ShardManifest m;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (!have_header) {
      require_keys(j, {"shard_id", "config_hash", "master_seed"}, "manifest header");
      m.shard_id = get_str(j, "shard_id", "manifest header");
      m.config_hash = get_str(j, "config_hash", "manifest header");
      m.master_seed = get_u64(j, "master_seed", "manifest header");
      have_header = true;
    } else {
      m.records.push_back(ManifestRecord::from_json(j));
    }
  }
  if (!have_header) throw std::invalid_argument("manifest: empty file");
  return m;
}

std::string shard_name(int shard_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "shard-%05d", shard_index);
  return buf;
}

std::string sample_file_name(uint64_t sample_id, const std::string& role) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08llu", static_cast<unsigned long long>(sample_id));
  return std::string(buf) + "_" + role + ".png";
}

namespace {

std::vector<std::pair<std::string, const Image*>> sample_roles(const Sample& s) {
  std::vector<std::pair<std::string, const Image*>> out;
  if (!s.src.empty()) out.emplace_back("src", &s.src);
  if (!s.src2.empty()) out.emplace_back("src2", &s.src2);
  if (!s.mask.empty()) out.emplace_back("mask", &s.mask);
  if (!s.tgt.empty()) out.emplace_back("tgt", &s.tgt);
  return out;
}

}  // namespace

ShardManifest write_shard(const std::vector<Sample>& samples, const std::string& out_dir,
                          int shard_index, uint64_t first_id,
                          const std::string& config_hash, uint64_t master_seed,
                          int png_compression) {
  const std::string shard = shard_name(shard_index);
  const fs::path final_dir = fs::path(out_dir) / shard;
  if (fs::exists(final_dir))
    throw std::runtime_error("write_shard: " + final_dir.string() + " already exists");
  const fs::path tmp_dir = fs::path(out_dir) / (".tmp-" + shard);
  fs::remove_all(tmp_dir);
  fs::create_directories(tmp_dir);

  ShardManifest m;
  m.shard_id = shard;
  m.config_hash = config_hash;
  m.master_seed = master_seed;

  struct Job {
    std::string fname;
    const Image* img;
  };
  std::vector<Job> jobs;
  for (size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    const uint64_t id = first_id + i;
    ManifestRecord rec;
    rec.sample_id = id;
    rec.task = std::string(task_tag(s.task));
    rec.seed = s.seed;
    rec.bucket = s.bucket;
    rec.prompt = s.prompt;
    rec.raw_prompt = s.raw_prompt;
    rec.meta = s.meta;
    if (s.tgt.empty()) throw std::runtime_error("write_shard: sample without tgt");
    for (const auto& [role, img] : sample_roles(s)) {
      const std::string fname = sample_file_name(id, role);
      jobs.push_back({fname, img});
      rec.files[role] = shard + "/" + fname;
    }
    m.records.push_back(std::move(rec));
  }

  std::vector<std::vector<uint8_t>> blobs(jobs.size());
  std::string encode_error;
#pragma omp parallel for schedule(dynamic, 4)
  for (int64_t i = 0; i < static_cast<int64_t>(jobs.size()); ++i) {
    try {
      blobs[i] = encode_png(*jobs[i].img, png_compression);
    } catch (const std::exception& e) {
#pragma omp critical
      encode_error = e.what();
    }
  }
  if (!encode_error.empty())
    throw std::runtime_error("write_shard: png encode failed: " + encode_error);
  for (size_t i = 0; i < jobs.size(); ++i)
    write_file((tmp_dir / jobs[i].fname).string(), blobs[i].data(), blobs[i].size());

  const std::string jsonl = manifest_to_jsonl(m);
  write_file((tmp_dir / "manifest.jsonl").string(),
             reinterpret_cast<const uint8_t*>(jsonl.data()), jsonl.size());
  fs::rename(tmp_dir, final_dir);
  return m;
}

namespace {

const Image* role_image(const Sample& s, const std::string& role) {
  if (role == "src") return &s.src;
  if (role == "src2") return &s.src2;
  if (role == "mask") return &s.mask;
  if (role == "tgt") return &s.tgt;
  return nullptr;
}

}  // namespace

ValidationReport validate_run(const std::string& out_dir) {
  ValidationReport rep;
  GenConfig cfg;
  try {
    cfg = load_config_file((fs::path(out_dir) / "config.json").string());
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("config.json: ") + e.what());
    return rep;
  }
  const std::string want_hash = cfg.hash();
  const bool check_prompt = cfg.polisher.url.empty();  // polished text is external

  AssetCatalog catalog;
  try {
    catalog = load_catalog(cfg.asset_root);
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("asset catalog: ") + e.what());
    return rep;
  }
  BackgroundCache bg_cache;
  for (const CanvasSize& cs : cfg.canvas_sizes)
    bg_cache.prepare(catalog, cs.width, cs.height);
  SyntheticScenePool pool(catalog, cfg, &bg_cache);
  TaskgenContext ctx{catalog, cfg, &bg_cache, &pool, nullptr};

  std::vector<fs::path> shard_dirs;
  for (const auto& e : fs::directory_iterator(out_dir))
    if (e.is_directory() && e.path().filename().string().rfind("shard-", 0) == 0)
      shard_dirs.push_back(e.path());
  std::sort(shard_dirs.begin(), shard_dirs.end());
  if (shard_dirs.empty()) rep.failures.push_back("no shards under " + out_dir);

  for (const fs::path& dir : shard_dirs) {
    ShardManifest m;
    try {
      const auto bytes = read_file((dir / "manifest.jsonl").string());
      m = manifest_from_jsonl(
          std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    } catch (const std::exception& e) {
      rep.failures.push_back(dir.filename().string() + ": " + e.what());
      continue;
    }
    if (m.shard_id != dir.filename().string())
      rep.failures.push_back(dir.filename().string() + ": shard_id mismatch");
    if (m.config_hash != want_hash)
      rep.failures.push_back(dir.filename().string() + ": config hash mismatch");
    if (m.master_seed != cfg.master_seed)
      rep.failures.push_back(dir.filename().string() + ": master seed mismatch");

    for (const ManifestRecord& rec : m.records) {
      ++rep.checked;
      auto& tally = rep.per_task[rec.task];
      ++tally.first;
      const std::string label = "sample " + std::to_string(rec.sample_id);
      std::vector<std::string> errs;

      const auto task = task_from_tag(rec.task);
      if (!task) {
        errs.push_back(label + ": unknown task '" + rec.task + "'");
      } else {
        Sample s;
        bool generated = false;
        try {
          s = generate_sample(*task, rec.seed, ctx);
          generated = true;
        } catch (const std::exception& e) {
          errs.push_back(label + ": regeneration failed: " + e.what());
        }
        if (generated) {
          ManifestRecord expect;
          expect.sample_id = rec.sample_id;
          expect.task = std::string(task_tag(s.task));
          expect.seed = s.seed;
          expect.bucket = s.bucket;
          expect.prompt = s.prompt;
          expect.raw_prompt = s.raw_prompt;
          expect.meta = s.meta;
          for (const auto& [role, img] : sample_roles(s))
            expect.files[role] = m.shard_id + "/" + sample_file_name(rec.sample_id, role);

          nlohmann::json got_j = rec.to_json();
          nlohmann::json want_j = expect.to_json();
          if (!check_prompt) {
            got_j.erase("prompt");
            want_j.erase("prompt");
            got_j["meta"].erase("polish_fell_back");
            want_j["meta"].erase("polish_fell_back");
          }
          if (got_j != want_j) errs.push_back(label + ": record fields differ");

          for (const auto& [role, rel] : rec.files) {
            const Image* want = role_image(s, role);
            if (!want || want->empty()) {
              errs.push_back(label + ": unexpected file role '" + role + "'");
              continue;
            }
            try {
              const Image got = load_image((fs::path(out_dir) / rel).string());
              if (!got.same_shape(*want))
                errs.push_back(label + ": " + role + " shape differs");
              else if (!images_equal(got, *want))
                errs.push_back(label + ": " + role + " pixels differ");
            } catch (const std::exception& e) {
              errs.push_back(label + ": " + role + ": " + e.what());
            }
          }
        }
      }

      if (errs.empty()) {
        ++rep.passed;
        ++tally.second;
      } else {
        rep.failures.insert(rep.failures.end(), errs.begin(), errs.end());
      }
    }
  }
  return rep;
}

}  // namespace collage

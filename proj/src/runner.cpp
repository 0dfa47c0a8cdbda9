#include "collage/runner.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "collage/io.hpp"

namespace fs = std::filesystem;

namespace collage {

namespace {

struct PlanEntry {
  TaskKind task;
  uint64_t seed;
};

std::vector<PlanEntry> build_plan(const GenConfig& cfg) {
  std::vector<PlanEntry> plan;
  plan.reserve(static_cast<size_t>(cfg.total_count()));
  for (int t = 0; t < kTaskCount; ++t) {
    const auto task = static_cast<TaskKind>(t);
    const std::string_view tag = task_tag(task);
    for (int64_t i = 0; i < cfg.counts[t]; ++i)
      plan.push_back({task, derive_seed(cfg.master_seed, tag, static_cast<uint64_t>(i))});
  }
  return plan;
}

void throw_on_problems(const GenConfig& cfg) {
  const auto problems = cfg.problems();
  if (problems.empty()) return;
  std::string msg = "config:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw std::invalid_argument(msg);
}

}  // namespace

RunSummary run(const GenConfig& cfg) {
  throw_on_problems(cfg);
  if (cfg.total_count() == 0) throw std::invalid_argument("config: all counts are zero");

  AssetCatalog catalog = load_catalog(cfg.asset_root);
  if (catalog.ids(AssetKind::Sticker).empty())
    throw std::runtime_error("asset root has no usable stickers: " + cfg.asset_root);

  const fs::path out(cfg.out_dir);
  if (fs::exists(out / "config.json"))
    throw std::runtime_error(cfg.out_dir + " already holds a run");
  fs::create_directories(out);
  const std::string dump = cfg.canonical_dump();
  write_file((out / "config.json").string(),
             reinterpret_cast<const uint8_t*>(dump.data()), dump.size());

  BackgroundCache bg_cache;
  for (const CanvasSize& cs : cfg.canvas_sizes)
    bg_cache.prepare(catalog, cs.width, cs.height);
  SyntheticScenePool pool(catalog, cfg, &bg_cache);
  std::unique_ptr<PromptPolisher> polisher;
  if (!cfg.polisher.url.empty())
    polisher = std::make_unique<HttpPolisher>(cfg.polisher.url, cfg.polisher.credential_env,
                                              cfg.polisher.timeout_ms);
  TaskgenContext ctx{catalog, cfg, &bg_cache, &pool, polisher.get()};

  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);

  const std::vector<PlanEntry> plan = build_plan(cfg);
  RunSummary sum;
  const auto t_begin = std::chrono::steady_clock::now();

  uint64_t next_id = 0;
  int shard_index = 0;
  for (size_t begin = 0; begin < plan.size(); begin += static_cast<size_t>(cfg.shard_size)) {
    const size_t end = std::min(plan.size(), begin + static_cast<size_t>(cfg.shard_size));
    const int64_t n = static_cast<int64_t>(end - begin);
    std::vector<Sample> made(static_cast<size_t>(n));
    std::vector<uint8_t> ok(static_cast<size_t>(n), 0);
    std::vector<std::string> errs(static_cast<size_t>(n));

#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t i = 0; i < n; ++i) {
      const PlanEntry& e = plan[begin + static_cast<size_t>(i)];
      try {
        made[static_cast<size_t>(i)] = generate_sample(e.task, e.seed, ctx);
        ok[static_cast<size_t>(i)] = 1;
      } catch (const std::exception& ex) {
        errs[static_cast<size_t>(i)] =
            std::string(task_tag(e.task)) + " seed " + std::to_string(e.seed) + ": " + ex.what();
      }
    }

    std::vector<Sample> kept;
    kept.reserve(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
      if (ok[static_cast<size_t>(i)]) {
        ++sum.generated[static_cast<int>(made[static_cast<size_t>(i)].task)];
        kept.push_back(std::move(made[static_cast<size_t>(i)]));
      } else {
        ++sum.failed;
        if (sum.errors.size() < 20) sum.errors.push_back(errs[static_cast<size_t>(i)]);
      }
    }
    if (!kept.empty()) {
      write_shard(kept, cfg.out_dir, shard_index, next_id, cfg.hash(), cfg.master_seed,
                  cfg.png_compression);
      next_id += kept.size();
      ++shard_index;
      sum.written += static_cast<int64_t>(kept.size());
    }
  }

  const auto t_end = std::chrono::steady_clock::now();
  sum.shards = shard_index;
  sum.seconds = std::chrono::duration<double>(t_end - t_begin).count();
  sum.samples_per_sec = sum.seconds > 0 ? sum.written / sum.seconds : 0.0;
  return sum;
}

Image preview(const GenConfig& cfg, TaskKind task, int n, int cell_px) {
  if (n <= 0 || n > 64) throw std::invalid_argument("preview: n must be in [1, 64]");
  if (cell_px < 32 || cell_px > 1024)
    throw std::invalid_argument("preview: cell_px must be in [32, 1024]");
  throw_on_problems(cfg);

  AssetCatalog catalog = load_catalog(cfg.asset_root);
  if (catalog.ids(AssetKind::Sticker).empty())
    throw std::runtime_error("asset root has no usable stickers: " + cfg.asset_root);
  BackgroundCache bg_cache;
  for (const CanvasSize& cs : cfg.canvas_sizes)
    bg_cache.prepare(catalog, cs.width, cs.height);
  SyntheticScenePool pool(catalog, cfg, &bg_cache);
  TaskgenContext ctx{catalog, cfg, &bg_cache, &pool, nullptr};

  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int rows = (n + cols - 1) / cols;
  Image sheet = make_solid(cols * cell_px, rows * cell_px, Rgb{32, 32, 32});

  for (int i = 0; i < n; ++i) {
    const uint64_t seed =
        derive_seed(cfg.master_seed, task_tag(task), static_cast<uint64_t>(i));
    Sample s = generate_sample(task, seed, ctx);
    const double f = std::min(static_cast<double>(cell_px) / s.tgt.width,
                              static_cast<double>(cell_px) / s.tgt.height);
    Image thumb = resize_bilinear(s.tgt, std::max(1, static_cast<int>(s.tgt.width * f)),
                                  std::max(1, static_cast<int>(s.tgt.height * f)));
    const int ox = (i % cols) * cell_px + (cell_px - thumb.width) / 2;
    const int oy = (i / cols) * cell_px + (cell_px - thumb.height) / 2;
    for (int y = 0; y < thumb.height; ++y)
      for (int x = 0; x < thumb.width; ++x) {
        const uint8_t* p = thumb.px(x, y);
        uint8_t* q = sheet.px(ox + x, oy + y);
        q[0] = p[0];
        q[1] = p[1];
        q[2] = p[2];
      }
  }
  return sheet;
}

}  // namespace collage

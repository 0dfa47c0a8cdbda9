#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "collage/demo_pack.hpp"
#include "collage/io.hpp"
#include "collage/runner.hpp"

using namespace collage;

namespace {

int cmd_gen(const std::string& config_path, const std::string& out_override,
            int64_t seed_override, int jobs_override,
            const std::vector<std::string>& count_overrides) {
  GenConfig cfg = load_config_file(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (seed_override >= 0) cfg.master_seed = static_cast<uint64_t>(seed_override);
  if (jobs_override >= 0) cfg.jobs = jobs_override;
  for (const std::string& ov : count_overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--count", "expected <task>=<n>, got '" + ov + "'");
    const std::string tag = ov.substr(0, eq);
    const auto task = task_from_tag(tag);
    if (!task) throw CLI::ValidationError("--count", "unknown task '" + tag + "'");
    cfg.counts[static_cast<int>(*task)] = std::stoll(ov.substr(eq + 1));
  }

  const RunSummary sum = run(cfg);
  std::printf("wrote %lld samples in %d shards under %s\n",
              static_cast<long long>(sum.written), sum.shards, cfg.out_dir.c_str());
  std::printf("%.1f s, %.1f samples/s, %lld failed\n", sum.seconds, sum.samples_per_sec,
              static_cast<long long>(sum.failed));
  for (int t = 0; t < kTaskCount; ++t)
    if (sum.generated[t])
      std::printf("  %-14s %lld\n", std::string(task_tag(static_cast<TaskKind>(t))).c_str(),
                  static_cast<long long>(sum.generated[t]));
  for (const std::string& e : sum.errors) std::fprintf(stderr, "error: %s\n", e.c_str());
  return sum.ok() ? 0 : 1;
}

int cmd_validate(const std::string& out_dir) {
  const ValidationReport rep = validate_run(out_dir);
  std::printf("checked %lld samples, %lld passed\n", static_cast<long long>(rep.checked),
              static_cast<long long>(rep.passed));
  for (const auto& [task, counts] : rep.per_task)
    std::printf("  %-14s %lld/%lld\n", task.c_str(), static_cast<long long>(counts.second),
                static_cast<long long>(counts.first));
  const size_t show = std::min<size_t>(rep.failures.size(), 25);
  for (size_t i = 0; i < show; ++i)
    std::fprintf(stderr, "fail: %s\n", rep.failures[i].c_str());
  if (rep.failures.size() > show)
    std::fprintf(stderr, "... and %zu more\n", rep.failures.size() - show);
  return rep.ok() ? 0 : 1;
}

int cmd_preview(const std::string& config_path, const std::string& task_tag_str, int n,
                int cell, const std::string& out_file) {
  const auto task = task_from_tag(task_tag_str);
  if (!task) throw CLI::ValidationError("--task", "unknown task '" + task_tag_str + "'");
  GenConfig cfg = load_config_file(config_path);
  const Image sheet = preview(cfg, *task, n, cell);
  save_png(out_file, sheet);
  std::printf("wrote %s (%dx%d)\n", out_file.c_str(), sheet.width, sheet.height);
  return 0;
}

int cmd_assets_check(const std::string& root) {
  CatalogLoadReport report;
  const AssetCatalog catalog = load_catalog(root, &report);
  std::printf("loaded %d assets (%d skipped)\n", report.loaded, report.skipped);
  std::printf("  stickers    %zu\n", catalog.ids(AssetKind::Sticker).size());
  std::printf("  backgrounds %zu\n", catalog.ids(AssetKind::Background).size());
  std::printf("  glyphs      %zu\n", catalog.ids(AssetKind::Glyph).size());
  for (const std::string& w : report.warnings)
    std::fprintf(stderr, "warn: %s\n", w.c_str());
  if (catalog.ids(AssetKind::Sticker).empty()) {
    std::fprintf(stderr, "no usable stickers; generation would fail\n");
    return 1;
  }
  return 0;
}

int cmd_assets_make_demo(const std::string& root, uint64_t seed) {
  write_demo_pack(root, seed);
  std::printf("wrote demo asset pack to %s\n", root.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic collage dataset generator"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a dataset from a config file");
  std::string gen_config, gen_out;
  int64_t gen_seed = -1;
  int gen_jobs = -1;
  std::vector<std::string> gen_counts;
  gen->add_option("--config", gen_config, "config JSON path")->required();
  gen->add_option("--out", gen_out, "override out_dir");
  gen->add_option("--seed", gen_seed, "override master_seed");
  gen->add_option("--jobs", gen_jobs, "override worker thread count");
  gen->add_option("--count", gen_counts, "override a task count, <task>=<n>");

  // validate
  auto* val = app.add_subcommand("validate", "replay a run and verify every sample");
  std::string val_out;
  val->add_option("--out", val_out, "run directory (holds config.json)")->required();

  // preview
  auto* pre = app.add_subcommand("preview", "render a contact sheet for one task");
  std::string pre_config, pre_task = "t2i_stickers", pre_out = "preview.png";
  int pre_n = 9, pre_cell = 256;
  pre->add_option("--config", pre_config, "config JSON path")->required();
  pre->add_option("--task", pre_task, "task tag");
  pre->add_option("--n", pre_n, "sample count")->check(CLI::Range(1, 64));
  pre->add_option("--cell", pre_cell, "cell size in px")->check(CLI::Range(32, 1024));
  pre->add_option("--out-file", pre_out, "output PNG path");

  // assets
  auto* assets = app.add_subcommand("assets", "asset pack utilities");
  assets->require_subcommand(1);
  auto* chk = assets->add_subcommand("check", "load an asset root and report problems");
  std::string chk_root;
  chk->add_option("--root", chk_root, "asset root directory")->required();
  auto* demo = assets->add_subcommand("make-demo", "write the built-in demo asset pack");
  std::string demo_root;
  uint64_t demo_seed = 7;
  demo->add_option("--root", demo_root, "asset root directory")->required();
  demo->add_option("--seed", demo_seed, "demo pack seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_config, gen_out, gen_seed, gen_jobs, gen_counts);
    if (val->parsed()) return cmd_validate(val_out);
    if (pre->parsed()) return cmd_preview(pre_config, pre_task, pre_n, pre_cell, pre_out);
    if (chk->parsed()) return cmd_assets_check(chk_root);
    if (demo->parsed()) return cmd_assets_make_demo(demo_root, demo_seed);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

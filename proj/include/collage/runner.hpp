#pragma once

#include <array>
#include <string>
#include <vector>

#include "collage/dataset.hpp"

namespace collage {

struct RunSummary {
  std::array<int64_t, kTaskCount> generated{};  // written samples per task
  int64_t written = 0;
  int64_t failed = 0;
  int shards = 0;
  double seconds = 0;
  double samples_per_sec = 0;
  std::vector<std::string> errors;  // first few failure messages

  int64_t planned() const { return written + failed; }
  // Anything above 1% failed samples makes the run unusable.
  bool ok() const { return written > 0 && failed * 100 <= planned(); }
};

// Generates every configured sample, writes shards + config.json under
// cfg.out_dir. Deterministic for a fixed config regardless of thread count.
// Throws on configuration, asset or output-directory problems; per-sample
// failures only count toward the summary.
RunSummary run(const GenConfig& cfg);

// Contact sheet of the first n targets of one task, for eyeballing a config.
Image preview(const GenConfig& cfg, TaskKind task, int n, int cell_px = 256);

}  // namespace collage

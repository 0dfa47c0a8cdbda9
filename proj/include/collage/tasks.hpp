#pragma once

#include <optional>
#include <string_view>

namespace collage {

enum class TaskKind {
  T2IText,
  T2IShapes,
  T2IStickers,
  InstructEdit,
  DragEdit,
  Inpaint,
  Outpaint,
  ImageCond,
  SubjectDriven,
  SegDet,
};

constexpr int kTaskCount = 10;

constexpr std::string_view kTaskTags[kTaskCount] = {
    "t2i_text",  "t2i_shapes", "t2i_stickers", "instruct_edit", "drag_edit",
    "inpaint",   "outpaint",   "image_cond",   "subject_driven", "segdet",
};

inline std::string_view task_tag(TaskKind k) { return kTaskTags[static_cast<int>(k)]; }

inline std::optional<TaskKind> task_from_tag(std::string_view tag) {
  for (int i = 0; i < kTaskCount; ++i)
    if (kTaskTags[i] == tag) return static_cast<TaskKind>(i);
  return std::nullopt;
}

}  // namespace collage

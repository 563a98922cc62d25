/* Copyright 2026 The Occlbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "occlbench/label_transform.h"

#include "occlbench/error.h"
#include "occlbench/hashing.h"

namespace occlbench {

std::string_view BodyPartName(BodyPart part) {
  switch (part) {
    case BodyPart::kFull:
      return "full";
    case BodyPart::kUpper:
      return "upper";
    case BodyPart::kLower:
      return "lower";
  }
  return "unknown";
}

BodyPart ParseBodyPart(std::string_view name) {
  if (name == "full") return BodyPart::kFull;
  if (name == "upper") return BodyPart::kUpper;
  if (name == "lower") return BodyPart::kLower;
  throw ArgumentError("unknown body part '" + std::string(name) +
                      "' (expected full, upper or lower)");
}

BoundingBox SplitBox(const BoundingBox& bbox, BodyPart part) {
  const double mid = bbox.top + (bbox.bottom - bbox.top) / 2.0;
  switch (part) {
    case BodyPart::kUpper:
      return {bbox.left, bbox.top, bbox.right, mid};
    case BodyPart::kLower:
      return {bbox.left, mid, bbox.right, bbox.bottom};
    case BodyPart::kFull:
      break;
  }
  return bbox;
}

LabelFrame TransformFrame(const LabelFrame& frame, BodyPart part,
                          std::string_view target_class) {
  LabelFrame out = frame;
  if (part == BodyPart::kFull) return out;
  for (auto& obj : out.objects) {
    if (obj.class_name == target_class) obj.bbox = SplitBox(obj.bbox, part);
  }
  return out;
}

DeriveResult DeriveLabelDir(const std::filesystem::path& input_dir,
                            const std::filesystem::path& output_dir,
                            BodyPart part, std::string_view target_class,
                            bool force) {
  const auto provenance_in = input_dir / kProvenanceFileName;
  if (std::filesystem::exists(provenance_in)) {
    const std::string text = ReadTextFile(provenance_in);
    if (text.find("part=upper") != std::string::npos ||
        text.find("part=lower") != std::string::npos) {
      throw ArgumentError("input " + input_dir.string() +
                          " is already a derived half-body label directory");
    }
  }
  if (std::filesystem::exists(output_dir) &&
      !std::filesystem::is_empty(output_dir) && !force) {
    throw ArgumentError("output directory " + output_dir.string() +
                        " is not empty (use --force to overwrite)");
  }

  const LabelSet input = ReadLabelDir(input_dir);
  DeriveResult result;
  if (force && std::filesystem::exists(output_dir)) {
    std::filesystem::remove_all(output_dir);
  }
  std::filesystem::create_directories(output_dir);
  for (const auto& [id, frame] : input) {
    LabelFrame derived = TransformFrame(frame, part, target_class);
    for (const auto& obj : frame.objects) {
      if (obj.class_name == target_class) ++result.transformed_objects;
    }
    WriteFrame(derived, output_dir / (id + ".txt"));
    ++result.frames;
  }
  if (input.empty()) {
    result.warnings.push_back("no label files found in " + input_dir.string());
  }

  std::string provenance;
  provenance += "part=" + std::string(BodyPartName(part)) + "\n";
  provenance += "class=" + std::string(target_class) + "\n";
  provenance += "source=" + input_dir.generic_string() + "\n";
  provenance +=
      "source_sha256=" + HashDirectory(input_dir, kProvenanceFileName) + "\n";
  WriteTextFile(output_dir / kProvenanceFileName, provenance);
  return result;
}

}  // namespace occlbench

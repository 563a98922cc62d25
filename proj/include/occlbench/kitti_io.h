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
#ifndef OCCLBENCH_KITTI_IO_H_
#define OCCLBENCH_KITTI_IO_H_

// Reader and writer for KITTI 2D-object label files.
//
// A label line has 15 whitespace-separated fields:
//
//   type truncated occluded alpha left top right bottom h w l x y z rot_y
//
// A detection line appends a 16th field, the confidence score in [0, 1].
// One file holds one frame; the frame id is the file stem.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "occlbench/bounding_box.h"

namespace occlbench {

inline constexpr int kLabelFieldCount = 15;
inline constexpr int kDetectionFieldCount = 16;

// KITTI marks DontCare regions with -1 in the truncated and occluded fields.
inline constexpr double kUnknownTruncation = -1.0;
inline constexpr int kUnknownOcclusion = -1;

struct Dimensions {
  double height = 0.0;
  double width = 0.0;
  double length = 0.0;
  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

struct Location {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Location&, const Location&) = default;
};

// Ground-truth annotation record. The 3D fields are carried through
// unchanged and never interpreted.
struct ObjectLabel {
  std::string class_name;
  double truncated = 0.0;
  int occluded = 0;
  double alpha = 0.0;
  BoundingBox bbox;
  Dimensions dimensions;
  Location location;
  double rotation_y = 0.0;

  friend bool operator==(const ObjectLabel&, const ObjectLabel&) = default;
};

// Detector output: a label record plus a confidence score.
struct Detection : ObjectLabel {
  double score = 0.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

// Builds a detection carrying only class, box and score.
Detection MakeDetection(std::string class_name, const BoundingBox& bbox,
                        double score);

using LabelRecord = std::variant<ObjectLabel, Detection>;

// Parses one line. 15 fields yield an ObjectLabel, 16 a Detection.
// `line_number` (1-based, 0 = unknown) is included in error messages.
// Throws FormatError, ParseError or GeometryError.
LabelRecord ParseLabelLine(std::string_view line, int line_number = 0);

// Locale-independent number formatting used for every serialized value:
// the shortest fixed-point representation that parses back to the same
// double, padded to at least two decimal places.
std::string FormatNumber(double value);

std::string FormatLabelLine(const ObjectLabel& label);
std::string FormatLabelLine(const Detection& detection);

template <typename T>
struct Frame {
  std::string frame_id;
  // Unknown unless supplied by the caller; label files do not store it.
  std::optional<ImageSize> image_size;
  std::vector<T> objects;

  friend bool operator==(const Frame&, const Frame&) = default;
};

using LabelFrame = Frame<ObjectLabel>;
using DetectionFrame = Frame<Detection>;

// Frame sets keyed by frame id; std::map gives lexicographic iteration.
using LabelSet = std::map<std::string, LabelFrame>;
using DetectionSet = std::map<std::string, DetectionFrame>;

// Reads a 15-field label file. A 16-field line is a FormatError.
LabelFrame ReadLabelFrame(const std::filesystem::path& path);
// Reads a 16-field detection file. A 15-field line is a FormatError.
DetectionFrame ReadDetectionFrame(const std::filesystem::path& path);

LabelFrame ParseLabelFrame(std::string_view text, std::string frame_id);
DetectionFrame ParseDetectionFrame(std::string_view text,
                                   std::string frame_id);

std::string SerializeFrame(const LabelFrame& frame);
std::string SerializeFrame(const DetectionFrame& frame);

void WriteFrame(const LabelFrame& frame, const std::filesystem::path& path);
void WriteFrame(const DetectionFrame& frame,
                const std::filesystem::path& path);

// Provenance file written next to derived label directories; skipped by the
// directory readers.
inline constexpr std::string_view kProvenanceFileName = "DERIVED.txt";

// Reads every *.txt file of a directory except kProvenanceFileName. Files are
// visited in sorted order.
LabelSet ReadLabelDir(const std::filesystem::path& dir);
DetectionSet ReadDetectionDir(const std::filesystem::path& dir);

// Writes one <frame_id>.txt per frame, creating `dir` if needed.
void WriteLabelDir(const LabelSet& frames, const std::filesystem::path& dir);
void WriteDetectionDir(const DetectionSet& frames,
                       const std::filesystem::path& dir);

// Indices of objects whose box leaves the image. Such boxes are accepted on
// read; clipping is left to the consumer. Empty when image_size is unknown.
template <typename T>
std::vector<std::size_t> OutOfBoundsObjects(const Frame<T>& frame) {
  std::vector<std::size_t> out;
  if (!frame.image_size) return out;
  for (std::size_t i = 0; i < frame.objects.size(); ++i) {
    if (!frame.objects[i].bbox.WithinImage(*frame.image_size)) {
      out.push_back(i);
    }
  }
  return out;
}

// Reads the whole file into a string. Throws IoError.
std::string ReadTextFile(const std::filesystem::path& path);
// Writes `contents` verbatim, creating parent directories. Throws IoError.
void WriteTextFile(const std::filesystem::path& path,
                   std::string_view contents);

}  // namespace occlbench

#endif  // OCCLBENCH_KITTI_IO_H_

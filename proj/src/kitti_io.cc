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
#include "occlbench/kitti_io.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "occlbench/error.h"

namespace occlbench {
namespace {

std::string LineContext(int line_number) {
  if (line_number <= 0) return "";
  return "line " + std::to_string(line_number) + ": ";
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

double ParseDouble(std::string_view field, const char* name, int line_number) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  // from_chars rejects a leading '+'; KITTI files never carry one but be
  // lenient.
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(LineContext(line_number) + "field '" + name +
                     "' is not a finite number: '" + std::string(field) + "'");
  }
  return value;
}

int ParseInt(std::string_view field, const char* name, int line_number) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(LineContext(line_number) + "field '" + name +
                     "' is not an integer: '" + std::string(field) + "'");
  }
  return value;
}

ObjectLabel ParseObject(const std::vector<std::string_view>& f,
                        int line_number) {
  ObjectLabel label;
  label.class_name = std::string(f[0]);
  label.truncated = ParseDouble(f[1], "truncated", line_number);
  label.occluded = ParseInt(f[2], "occluded", line_number);
  label.alpha = ParseDouble(f[3], "alpha", line_number);
  label.bbox.left = ParseDouble(f[4], "left", line_number);
  label.bbox.top = ParseDouble(f[5], "top", line_number);
  label.bbox.right = ParseDouble(f[6], "right", line_number);
  label.bbox.bottom = ParseDouble(f[7], "bottom", line_number);
  label.dimensions.height = ParseDouble(f[8], "height", line_number);
  label.dimensions.width = ParseDouble(f[9], "width", line_number);
  label.dimensions.length = ParseDouble(f[10], "length", line_number);
  label.location.x = ParseDouble(f[11], "x", line_number);
  label.location.y = ParseDouble(f[12], "y", line_number);
  label.location.z = ParseDouble(f[13], "z", line_number);
  label.rotation_y = ParseDouble(f[14], "rotation_y", line_number);

  if (label.truncated != kUnknownTruncation &&
      (label.truncated < 0.0 || label.truncated > 1.0)) {
    throw FormatError(LineContext(line_number) +
                      "truncated must lie in [0, 1]");
  }
  if (label.occluded != kUnknownOcclusion &&
      (label.occluded < 0 || label.occluded > 3)) {
    throw FormatError(LineContext(line_number) +
                      "occluded must be one of 0, 1, 2, 3");
  }
  try {
    label.bbox.Validate();
  } catch (const GeometryError& e) {
    throw GeometryError(LineContext(line_number) + e.what());
  }
  return label;
}

template <typename T>
Frame<T> ParseFrameText(std::string_view text, std::string frame_id,
                        int expected_fields) {
  Frame<T> frame;
  frame.frame_id = std::move(frame_id);
  int line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    LabelRecord record;
    try {
      record = ParseLabelLine(line, line_number);
    } catch (const FormatError& e) {
      throw FormatError("frame " + frame.frame_id + ", " + e.what());
    } catch (const ParseError& e) {
      throw ParseError("frame " + frame.frame_id + ", " + e.what());
    } catch (const GeometryError& e) {
      throw GeometryError("frame " + frame.frame_id + ", " + e.what());
    }
    if (!std::holds_alternative<T>(record)) {
      throw FormatError("frame " + frame.frame_id + ", " +
                        LineContext(line_number) + "expected " +
                        std::to_string(expected_fields) + " fields");
    }
    frame.objects.push_back(std::get<T>(std::move(record)));
  }
  return frame;
}

template <typename Set>
Set ReadDir(const std::filesystem::path& dir, auto read_one) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt" &&
        entry.path().filename() != kProvenanceFileName) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  Set set;
  for (const auto& file : files) {
    auto frame = read_one(file);
    std::string id = frame.frame_id;
    set.emplace(std::move(id), std::move(frame));
  }
  return set;
}

template <typename Set>
void WriteDir(const Set& frames, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [id, frame] : frames) {
    WriteFrame(frame, dir / (id + ".txt"));
  }
}

void AppendCommonFields(const ObjectLabel& l, std::string& out) {
  out += l.class_name;
  out += ' ';
  out += FormatNumber(l.truncated);
  out += ' ' + std::to_string(l.occluded);
  for (double v : {l.alpha, l.bbox.left, l.bbox.top, l.bbox.right,
                   l.bbox.bottom, l.dimensions.height, l.dimensions.width,
                   l.dimensions.length, l.location.x, l.location.y,
                   l.location.z, l.rotation_y}) {
    out += ' ';
    out += FormatNumber(v);
  }
}

}  // namespace

Detection MakeDetection(std::string class_name, const BoundingBox& bbox,
                        double score) {
  Detection d;
  d.class_name = std::move(class_name);
  d.bbox = bbox;
  d.score = score;
  return d;
}

LabelRecord ParseLabelLine(std::string_view line, int line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto fields = SplitFields(line);
  const int n = static_cast<int>(fields.size());
  if (n != kLabelFieldCount && n != kDetectionFieldCount) {
    throw FormatError(LineContext(line_number) + "expected " +
                      std::to_string(kLabelFieldCount) + " or " +
                      std::to_string(kDetectionFieldCount) +
                      " fields, got " + std::to_string(n));
  }
  ObjectLabel label = ParseObject(fields, line_number);
  if (n == kLabelFieldCount) return label;

  Detection det;
  static_cast<ObjectLabel&>(det) = std::move(label);
  det.score = ParseDouble(fields[15], "score", line_number);
  if (det.score < 0.0 || det.score > 1.0) {
    throw FormatError(LineContext(line_number) + "score must lie in [0, 1]");
  }
  return det;
}

std::string FormatNumber(double value) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc()) {
    // Only reachable for magnitudes beyond 1e60; fall back to shortest form.
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
  }
  std::string s(buf.data(), ptr);
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    s += ".00";
  } else {
    const std::size_t decimals = s.size() - dot - 1;
    if (decimals < 2) s.append(2 - decimals, '0');
  }
  return s;
}

std::string FormatLabelLine(const ObjectLabel& label) {
  std::string out;
  AppendCommonFields(label, out);
  return out;
}

std::string FormatLabelLine(const Detection& detection) {
  std::string out;
  AppendCommonFields(detection, out);
  out += ' ';
  out += FormatNumber(detection.score);
  return out;
}

LabelFrame ParseLabelFrame(std::string_view text, std::string frame_id) {
  return ParseFrameText<ObjectLabel>(text, std::move(frame_id),
                                     kLabelFieldCount);
}

DetectionFrame ParseDetectionFrame(std::string_view text,
                                   std::string frame_id) {
  return ParseFrameText<Detection>(text, std::move(frame_id),
                                   kDetectionFieldCount);
}

LabelFrame ReadLabelFrame(const std::filesystem::path& path) {
  return ParseLabelFrame(ReadTextFile(path), path.stem().string());
}

DetectionFrame ReadDetectionFrame(const std::filesystem::path& path) {
  return ParseDetectionFrame(ReadTextFile(path), path.stem().string());
}

std::string SerializeFrame(const LabelFrame& frame) {
  std::string out;
  for (const auto& obj : frame.objects) {
    out += FormatLabelLine(obj);
    out += '\n';
  }
  return out;
}

std::string SerializeFrame(const DetectionFrame& frame) {
  std::string out;
  for (const auto& obj : frame.objects) {
    out += FormatLabelLine(obj);
    out += '\n';
  }
  return out;
}

void WriteFrame(const LabelFrame& frame, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeFrame(frame));
}

void WriteFrame(const DetectionFrame& frame,
                const std::filesystem::path& path) {
  WriteTextFile(path, SerializeFrame(frame));
}

LabelSet ReadLabelDir(const std::filesystem::path& dir) {
  return ReadDir<LabelSet>(
      dir, [](const std::filesystem::path& p) { return ReadLabelFrame(p); });
}

DetectionSet ReadDetectionDir(const std::filesystem::path& dir) {
  return ReadDir<DetectionSet>(dir, [](const std::filesystem::path& p) {
    return ReadDetectionFrame(p);
  });
}

void WriteLabelDir(const LabelSet& frames, const std::filesystem::path& dir) {
  WriteDir(frames, dir);
}

void WriteDetectionDir(const DetectionSet& frames,
                       const std::filesystem::path& dir) {
  WriteDir(frames, dir);
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read file: " + path.string());
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path,
                   std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("cannot write file: " + path.string());
}

}  // namespace occlbench

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
#include "occlbench/pipeline_config.h"

#include <charconv>
#include <functional>
#include <map>

#include "occlbench/error.h"
#include "occlbench/kitti_io.h"

namespace occlbench {
namespace {

double ToDouble(std::string_view key, std::string_view value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError("config key '" + std::string(key) + "': '" +
                     std::string(value) + "' is not a number");
  }
  return v;
}

template <typename Int>
Int ToInt(std::string_view key, std::string_view value) {
  Int v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError("config key '" + std::string(key) + "': '" +
                     std::string(value) + "' is not an integer");
  }
  return v;
}

std::string Join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ',';
    out += x;
  }
  return out;
}

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= value.size() && !value.empty()) {
    std::size_t comma = value.find(',', pos);
    if (comma == std::string_view::npos) comma = value.size();
    if (comma > pos) out.emplace_back(value.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

void CheckVariants(const std::vector<std::string>& variants) {
  for (const auto& v : variants) {
    if (v != "box" && v != "wall" && v != "gray" && v != "gray_box") {
      throw ParseError("unknown variant '" + v +
                       "' (expected box, wall, gray or gray_box)");
    }
  }
}

// One entry per key: how to print it and how to read it back.
struct Field {
  std::function<std::string(const PipelineConfig&)> get;
  std::function<void(PipelineConfig&, std::string_view)> set;
};

const std::vector<std::pair<std::string, Field>>& Fields() {
  using C = PipelineConfig;
  auto num = [](double C::*member) {
    return Field{[member](const C& c) { return FormatNumber(c.*member); },
                 [member](C& c, std::string_view v) {
                   c.*member = ToDouble("", v);
                 }};
  };
  auto cascade = [](double CascadeParams::*member) {
    return Field{
        [member](const C& c) { return FormatNumber(c.cascade.*member); },
        [member](C& c, std::string_view v) {
          c.cascade.*member = ToDouble("", v);
        }};
  };
  auto detector = [](double SimulatedDetectorParams::*member) {
    return Field{
        [member](const C& c) { return FormatNumber(c.detector.*member); },
        [member](C& c, std::string_view v) {
          c.detector.*member = ToDouble("", v);
        }};
  };
  auto str = [](std::string C::*member) {
    return Field{[member](const C& c) { return c.*member; },
                 [member](C& c, std::string_view v) { c.*member = v; }};
  };
  auto path = [](std::filesystem::path C::*member) {
    return Field{[member](const C& c) { return (c.*member).generic_string(); },
                 [member](C& c, std::string_view v) {
                   c.*member = std::filesystem::path(v);
                 }};
  };
  static const std::vector<std::pair<std::string, Field>> fields = {
      {"dataset_root", path(&C::dataset_root)},
      {"labels_dir", str(&C::labels_dir)},
      {"images_dir", str(&C::images_dir)},
      {"detections_dir", str(&C::detections_dir)},
      {"target_class", str(&C::target_class)},
      {"iou_threshold", num(&C::iou_threshold)},
      {"ap_mode",
       {[](const C& c) { return std::string(PrModeName(c.ap_mode)); },
        [](C& c, std::string_view v) { c.ap_mode = ParsePrMode(v); }}},
      {"variants",
       {[](const C& c) { return Join(c.variants); },
        [](C& c, std::string_view v) {
          c.variants = SplitList(v);
          CheckVariants(c.variants);
        }}},
      {"box_texture", path(&C::box_texture)},
      {"wall_texture", path(&C::wall_texture)},
      {"box_width_factor", num(&C::box_width_factor)},
      {"wall_width_factor", num(&C::wall_width_factor)},
      {"resize_filter",
       {[](const C& c) { return std::string(ResizeFilterName(c.resize_filter)); },
        [](C& c, std::string_view v) { c.resize_filter = ParseResizeFilter(v); }}},
      {"lost_threshold", num(&C::lost_threshold)},
      {"cascade.gate_threshold", cascade(&CascadeParams::gate_threshold)},
      {"cascade.pairing_min_horizontal_overlap",
       cascade(&CascadeParams::pairing_min_horizontal_overlap)},
      {"cascade.vertical_adjacency_tolerance",
       cascade(&CascadeParams::vertical_adjacency_tolerance)},
      {"cascade.w_full", cascade(&CascadeParams::w_full)},
      {"cascade.w_upper", cascade(&CascadeParams::w_upper)},
      {"cascade.w_lower", cascade(&CascadeParams::w_lower)},
      {"cascade.association_iou", cascade(&CascadeParams::association_iou)},
      {"detector.base_score_min",
       detector(&SimulatedDetectorParams::base_score_min)},
      {"detector.base_score_max",
       detector(&SimulatedDetectorParams::base_score_max)},
      {"detector.corruption_weight",
       detector(&SimulatedDetectorParams::corruption_weight)},
      {"detector.score_sigma", detector(&SimulatedDetectorParams::score_sigma)},
      {"detector.box_sigma", detector(&SimulatedDetectorParams::box_sigma)},
      {"detector.score_floor", detector(&SimulatedDetectorParams::score_floor)},
      {"detector.false_positive_rate",
       detector(&SimulatedDetectorParams::false_positive_rate)},
      {"output_dir", path(&C::output_dir)},
      {"seed",
       {[](const C& c) { return std::to_string(c.seed); },
        [](C& c, std::string_view v) { c.seed = ToInt<std::uint64_t>("seed", v); }}},
      {"jobs",
       {[](const C& c) { return std::to_string(c.jobs); },
        [](C& c, std::string_view v) { c.jobs = ToInt<int>("jobs", v); }}},
  };
  return fields;
}

}  // namespace

bool operator==(const PipelineConfig& a, const PipelineConfig& b) {
  return SerializeConfig(a) == SerializeConfig(b);
}

std::string SerializeConfig(const PipelineConfig& config) {
  std::string out;
  for (const auto& [key, field] : Fields()) {
    out += key + "=" + field.get(config) + "\n";
  }
  return out;
}

PipelineConfig ParseConfig(std::string_view text) {
  PipelineConfig config;
  std::map<std::string, const Field*, std::less<>> by_key;
  for (const auto& [key, field] : Fields()) by_key.emplace(key, &field);

  std::size_t pos = 0;
  int line_number = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("config line " + std::to_string(line_number) +
                        ": expected key=value");
    }
    const std::string_view key = line.substr(0, eq);
    const std::string_view value = line.substr(eq + 1);
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw FormatError("config line " + std::to_string(line_number) +
                        ": unknown key '" + std::string(key) + "'");
    }
    try {
      it->second->set(config, value);
    } catch (const ParseError& e) {
      throw ParseError("config line " + std::to_string(line_number) + " (" +
                       std::string(key) + "): " + e.what());
    } catch (const ArgumentError& e) {
      throw ParseError("config line " + std::to_string(line_number) + " (" +
                       std::string(key) + "): " + e.what());
    }
  }
  config.cascade.Validate();
  return config;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  PipelineConfig config = ParseConfig(ReadTextFile(path));
  const auto base = path.parent_path();
  auto resolve = [&base](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative()) p = (base / p).lexically_normal();
  };
  resolve(config.dataset_root);
  resolve(config.box_texture);
  resolve(config.wall_texture);
  resolve(config.output_dir);
  if (!config.detections_dir.empty() &&
      std::filesystem::path(config.detections_dir).is_relative()) {
    config.detections_dir =
        (base / config.detections_dir).lexically_normal().string();
  }
  return config;
}

void CheckConfigPaths(const PipelineConfig& config) {
  auto require = [](const std::filesystem::path& p, const char* what) {
    if (!std::filesystem::exists(p)) {
      throw IoError(std::string(what) + " does not exist: " + p.string());
    }
  };
  require(config.dataset_root, "dataset_root");
  require(config.dataset_root / config.labels_dir, "labels directory");
  require(config.dataset_root / config.images_dir, "images directory");
  if (!config.detections_dir.empty()) {
    require(config.detections_dir, "detections_dir");
  }
  for (const auto& v : config.variants) {
    if (v == "box" || v == "gray_box") require(config.box_texture, "box_texture");
    if (v == "wall") require(config.wall_texture, "wall_texture");
  }
}

}  // namespace occlbench

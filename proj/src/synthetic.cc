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
#include "occlbench/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "occlbench/occlusion_synth.h"
#include "occlbench/rng.h"

namespace occlbench {
namespace {

double Round2(double v) { return std::round(v * 100.0) / 100.0; }

std::uint8_t Clamp8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void FillRect(Image& image, double left, double top, double right,
              double bottom, Rgb color) {
  const PixelRect r = RoundRegion({left, top, right, bottom}, image.size());
  for (int y = r.y0; y < r.y1; ++y) {
    for (int x = r.x0; x < r.x1; ++x) image.set(x, y, color);
  }
}

Rgb RandomColor(Rng& rng, int lo, int hi) {
  auto c = [&] { return static_cast<std::uint8_t>(lo + rng.UniformIndex(hi - lo + 1)); };
  const auto r = c();
  const auto g = c();
  const auto b = c();
  return {r, g, b};
}

std::string FrameId(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06d", index);
  return buf;
}

ObjectLabel MakeLabel(std::string class_name, const BoundingBox& box,
                      double truncated, Rng& rng) {
  ObjectLabel label;
  label.class_name = std::move(class_name);
  label.truncated = truncated;
  label.occluded = 0;
  label.alpha = Round2(rng.Uniform(-3.14, 3.14));
  label.bbox = box;
  if (label.class_name == "Pedestrian") {
    label.dimensions = {Round2(rng.Uniform(1.5, 1.95)),
                        Round2(rng.Uniform(0.45, 0.7)),
                        Round2(rng.Uniform(0.5, 1.0))};
  } else {
    label.dimensions = {Round2(rng.Uniform(1.4, 1.7)),
                        Round2(rng.Uniform(1.5, 1.8)),
                        Round2(rng.Uniform(3.5, 4.5))};
  }
  label.location = {Round2(rng.Uniform(-8.0, 8.0)), Round2(rng.Uniform(1.5, 1.8)),
                    Round2(rng.Uniform(6.0, 40.0))};
  label.rotation_y = Round2(rng.Uniform(-3.14, 3.14));
  return label;
}

void DrawPedestrian(Image& image, const BoundingBox& b, Rng& rng) {
  const double h = b.Height();
  const double w = b.Width();
  const Rgb skin = RandomColor(rng, 150, 230);
  const Rgb shirt = RandomColor(rng, 30, 230);
  const Rgb pants = RandomColor(rng, 10, 90);
  // Head, torso, two legs.
  FillRect(image, b.left + w * 0.3, b.top, b.right - w * 0.3, b.top + h * 0.15,
           skin);
  FillRect(image, b.left, b.top + h * 0.15, b.right, b.top + h * 0.52, shirt);
  FillRect(image, b.left + w * 0.1, b.top + h * 0.52, b.left + w * 0.45,
           b.bottom, pants);
  FillRect(image, b.right - w * 0.45, b.top + h * 0.52, b.right - w * 0.1,
           b.bottom, pants);
}

void DrawCar(Image& image, const BoundingBox& b, Rng& rng) {
  const Rgb body = RandomColor(rng, 40, 220);
  FillRect(image, b.left, b.top + b.Height() * 0.35, b.right, b.bottom, body);
  FillRect(image, b.left + b.Width() * 0.2, b.top, b.right - b.Width() * 0.2,
           b.top + b.Height() * 0.4, {90, 110, 130});
}

}  // namespace

SyntheticFrame MakeSyntheticFrame(int index, const SyntheticOptions& options) {
  Rng rng(DeriveSeed(options.seed, "synthetic/" + std::to_string(index)));
  const int w = options.width;
  const int h = options.height;
  const double horizon = h * 0.4;

  SyntheticFrame frame;
  frame.image = Image(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double n = rng.Uniform(-6.0, 6.0);
      Rgb c;
      if (y < horizon) {
        const double t = y / horizon;
        c = {Clamp8(110 + 60 * t + n), Clamp8(150 + 50 * t + n),
             Clamp8(210 + 20 * t + n)};
      } else {
        const double t = (y - horizon) / (h - horizon);
        c = {Clamp8(95 + 30 * t + n), Clamp8(95 + 30 * t + n),
             Clamp8(100 + 30 * t + n)};
      }
      frame.image.set(x, y, c);
    }
  }
  frame.labels.frame_id = FrameId(index);
  frame.labels.image_size = ImageSize{w, h};

  // Cars first so pedestrians are drawn in front of them.
  const int cars = static_cast<int>(rng.UniformIndex(2));
  for (int i = 0; i < cars; ++i) {
    const double cw = Round2(rng.Uniform(60.0, 90.0));
    const double ch = Round2(cw * 0.5);
    const double left = Round2(rng.Uniform(0.0, w - cw));
    const double bottom = Round2(rng.Uniform(horizon + ch, h - 2.0));
    const BoundingBox box{left, Round2(bottom - ch), Round2(left + cw), bottom};
    DrawCar(frame.image, box, rng);
    frame.labels.objects.push_back(MakeLabel("Car", box, 0.0, rng));
  }

  // Every fifth frame holds no pedestrian; the others hold one to three in
  // separate horizontal slots.
  int pedestrians = 0;
  if (index % 5 != 4) pedestrians = 1 + static_cast<int>(rng.UniformIndex(3));
  const double slot = static_cast<double>(w) / std::max(pedestrians, 1);
  for (int i = 0; i < pedestrians; ++i) {
    const double ph = Round2(rng.Uniform(h * 0.3, h * 0.6));
    const double pw = Round2(ph * rng.Uniform(0.35, 0.45));
    double left = Round2(slot * i + rng.Uniform(0.0, std::max(1.0, slot - pw)));
    const double bottom = Round2(rng.Uniform(horizon + ph * 0.6, h - 1.0));
    double truncated = 0.0;
    if (index % 7 == 3 && i == 0) {
      // Walks in from the left border; the label box leaves the image.
      left = Round2(-pw * 0.3);
      truncated = 0.3;
    }
    if (index % 6 == 1 && i == 1) {
      // Partly behind the previous pedestrian.
      const auto& prev = frame.labels.objects.back().bbox;
      left = Round2(prev.left + prev.Width() * 0.5);
    }
    BoundingBox box{left, Round2(std::max(1.0, bottom - ph)),
                    Round2(left + pw), bottom};
    DrawPedestrian(frame.image, box, rng);
    frame.labels.objects.push_back(MakeLabel("Pedestrian", box, truncated, rng));
  }
  return frame;
}

void WriteSyntheticDataset(const std::filesystem::path& root,
                           const SyntheticOptions& options) {
  for (int i = 0; i < options.frames; ++i) {
    const SyntheticFrame frame = MakeSyntheticFrame(i, options);
    WritePng(frame.image, root / "images" / (frame.labels.frame_id + ".png"));
    WriteFrame(frame.labels, root / "labels" / (frame.labels.frame_id + ".txt"));
  }
}

Image MakeBoxTexture(int width, int height) {
  Image tex(width, height, {186, 143, 92});
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      // Corrugation streaks, a tape band and a dark rim.
      const int streak = (x / 3) % 2 == 0 ? 0 : -8;
      Rgb c{Clamp8(186 + streak), Clamp8(143 + streak), Clamp8(92 + streak)};
      if (std::abs(y - height / 2) < height / 10) c = {205, 180, 130};
      if (x < 2 || y < 2 || x >= width - 2 || y >= height - 2) {
        c = {110, 80, 45};
      }
      tex.set(x, y, c);
    }
  }
  return tex;
}

Image MakeWallTexture(int width, int height) {
  Image tex(width, height);
  constexpr int kBrickH = 8;
  constexpr int kBrickW = 16;
  for (int y = 0; y < height; ++y) {
    const int row = y / kBrickH;
    const int offset = (row % 2) * (kBrickW / 2);
    for (int x = 0; x < width; ++x) {
      const bool mortar =
          y % kBrickH == 0 || (x + offset) % kBrickW == 0;
      const int shade = ((x + offset) / kBrickW + row) % 3 * 12;
      tex.set(x, y,
              mortar ? Rgb{170, 165, 155}
                     : Rgb{Clamp8(150 + shade), Clamp8(62 + shade / 2),
                           Clamp8(45 + shade / 3)});
    }
  }
  return tex;
}

double RegionCorruption(const Image& clean, const Image& variant,
                        const BoundingBox& box) {
  const PixelRect r = RoundRegion(box, clean.size());
  if (r.empty() || clean.size() != variant.size()) return 0.0;
  double sum = 0.0;
  for (int y = r.y0; y < r.y1; ++y) {
    for (int x = r.x0; x < r.x1; ++x) {
      const Rgb a = clean.at(x, y);
      const Rgb b = variant.at(x, y);
      sum += std::abs(a.r - b.r) + std::abs(a.g - b.g) + std::abs(a.b - b.b);
    }
  }
  const double pixels = static_cast<double>(r.width()) * r.height();
  return sum / (pixels * 3.0 * 255.0);
}

DetectionFrame SimulateDetections(const LabelFrame& groundtruth, BodyPart part,
                                  const Image& clean, const Image& variant,
                                  std::string_view variant_tag,
                                  const SimulatedDetectorParams& params,
                                  std::string_view target_class,
                                  std::uint64_t seed) {
  DetectionFrame out;
  out.frame_id = groundtruth.frame_id;
  out.image_size = groundtruth.image_size;
  const std::string part_name(BodyPartName(part));
  const std::string variant_name(variant_tag);

  for (std::size_t i = 0; i < groundtruth.objects.size(); ++i) {
    const ObjectLabel& obj = groundtruth.objects[i];
    if (obj.class_name != target_class) continue;
    const std::string key =
        groundtruth.frame_id + "/" + part_name + "/" + std::to_string(i);
    Rng object_rng(DeriveSeed(seed, key));
    Rng noise_rng(DeriveSeed(seed, variant_name + "/" + key));

    const BoundingBox target = SplitBox(obj.bbox, part);
    const double base =
        object_rng.Uniform(params.base_score_min, params.base_score_max);
    const double dx0 = object_rng.Normal(0.0, params.box_sigma) * target.Width();
    const double dy0 = object_rng.Normal(0.0, params.box_sigma) * target.Height();
    const double dx1 = object_rng.Normal(0.0, params.box_sigma) * target.Width();
    const double dy1 = object_rng.Normal(0.0, params.box_sigma) * target.Height();

    const double corruption = RegionCorruption(clean, variant, target);
    const double score = std::clamp(
        base - params.corruption_weight * corruption +
            noise_rng.Normal(0.0, params.score_sigma),
        0.0, 1.0);
    if (score < params.score_floor) continue;

    BoundingBox box{Round2(target.left + dx0), Round2(target.top + dy0),
                    Round2(target.right + dx1), Round2(target.bottom + dy1)};
    if (!box.IsValid()) box = target;
    Detection det;
    static_cast<ObjectLabel&>(det) = obj;
    det.bbox = box;
    det.score = Round2(score);
    out.objects.push_back(std::move(det));
  }

  Rng fp_rng(DeriveSeed(seed, variant_name + "/" + groundtruth.frame_id + "/" +
                                  part_name + "/false-positive"));
  if (fp_rng.UniformDouble() < params.false_positive_rate) {
    const double w = clean.width();
    const double h = clean.height();
    const double bw = fp_rng.Uniform(w * 0.04, w * 0.1);
    const double bh = fp_rng.Uniform(h * 0.15, h * 0.3);
    const double left = fp_rng.Uniform(0.0, w - bw);
    const double top = fp_rng.Uniform(0.0, h - bh);
    const double score = fp_rng.Uniform(params.score_floor, 0.4);
    out.objects.push_back(MakeDetection(
        std::string(target_class),
        {Round2(left), Round2(top), Round2(left + bw), Round2(top + bh)},
        Round2(score)));
  }
  return out;
}

DetectionFrame ReplayAsDetections(const LabelFrame& groundtruth,
                                  double score) {
  DetectionFrame out;
  out.frame_id = groundtruth.frame_id;
  out.image_size = groundtruth.image_size;
  for (const auto& obj : groundtruth.objects) {
    Detection det;
    static_cast<ObjectLabel&>(det) = obj;
    det.score = score;
    out.objects.push_back(std::move(det));
  }
  return out;
}

}  // namespace occlbench

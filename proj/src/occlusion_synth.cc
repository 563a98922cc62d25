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
#include "occlbench/occlusion_synth.h"

#include <algorithm>
#include <cmath>

#include "occlbench/error.h"

namespace occlbench {

std::string_view OcclusionKindName(OcclusionKind kind) {
  return kind == OcclusionKind::kBox ? "box" : "wall";
}

OcclusionKind ParseOcclusionKind(std::string_view name) {
  if (name == "box") return OcclusionKind::kBox;
  if (name == "wall") return OcclusionKind::kWall;
  throw ArgumentError("unknown occlusion kind '" + std::string(name) +
                      "' (expected box or wall)");
}

std::string_view ResizeFilterName(ResizeFilter filter) {
  return filter == ResizeFilter::kNearest ? "nearest" : "bilinear";
}

ResizeFilter ParseResizeFilter(std::string_view name) {
  if (name == "nearest") return ResizeFilter::kNearest;
  if (name == "bilinear") return ResizeFilter::kBilinear;
  throw ArgumentError("unknown resize filter '" + std::string(name) +
                      "' (expected nearest or bilinear)");
}

BodyPart RegionFor(OcclusionKind kind) {
  return kind == OcclusionKind::kBox ? BodyPart::kUpper : BodyPart::kLower;
}

void OverlaySpec::Validate() const {
  if (texture.empty()) throw ArgumentError("overlay texture is empty");
  if (!(width_factor > 0.0) || !std::isfinite(width_factor)) {
    throw ArgumentError("width_factor must be > 0");
  }
}

std::optional<BoundingBox> TargetRegion(const BoundingBox& bbox,
                                        const OverlaySpec& spec,
                                        const ImageSize& image_size) {
  const BoundingBox half = SplitBox(bbox, spec.region());
  const double half_width = bbox.Width() * spec.width_factor / 2.0;
  const double center = bbox.CenterX();
  const BoundingBox region{center - half_width, half.top, center + half_width,
                           half.bottom};
  return ClipToImage(region, image_size);
}

PixelRect RoundRegion(const BoundingBox& region, const ImageSize& image_size) {
  auto clamp = [](double v, int hi) {
    if (!(v > 0.0)) return 0;
    if (v >= hi) return hi;
    return static_cast<int>(v);
  };
  PixelRect r;
  r.x0 = clamp(std::floor(region.left), image_size.width);
  r.y0 = clamp(std::floor(region.top), image_size.height);
  r.x1 = clamp(std::ceil(region.right), image_size.width);
  r.y1 = clamp(std::ceil(region.bottom), image_size.height);
  return r;
}

Image Resample(const Image& texture, int width, int height,
               ResizeFilter filter) {
  if (texture.empty()) throw ArgumentError("cannot resample an empty texture");
  Image out(width, height);
  const int sw = texture.width();
  const int sh = texture.height();
  const double sx = static_cast<double>(sw) / width;
  const double sy = static_cast<double>(sh) / height;

  if (filter == ResizeFilter::kNearest) {
    // floor((dst + 0.5) * src / dst) in exact integer arithmetic.
    auto index = [](long long dst, long long src, long long dst_size) {
      return static_cast<int>(((2 * dst + 1) * src) / (2 * dst_size));
    };
    for (int y = 0; y < height; ++y) {
      const int ty = std::min(sh - 1, index(y, sh, height));
      for (int x = 0; x < width; ++x) {
        const int tx = std::min(sw - 1, index(x, sw, width));
        out.set(x, y, texture.at(tx, ty));
      }
    }
    return out;
  }

  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, sh - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, sh - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, sw - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, sw - 1);
      const double wx = fx - x0;
      const Rgb c00 = texture.at(x0, y0);
      const Rgb c10 = texture.at(x1, y0);
      const Rgb c01 = texture.at(x0, y1);
      const Rgb c11 = texture.at(x1, y1);
      auto mix = [&](std::uint8_t a, std::uint8_t b, std::uint8_t c,
                     std::uint8_t d) {
        const double top = a + (b - a) * wx;
        const double bottom = c + (d - c) * wx;
        const double v = top + (bottom - top) * wy;
        return static_cast<std::uint8_t>(
            std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      };
      out.set(x, y,
              {mix(c00.r, c10.r, c01.r, c11.r), mix(c00.g, c10.g, c01.g, c11.g),
               mix(c00.b, c10.b, c01.b, c11.b)});
    }
  }
  return out;
}

Image Composite(const Image& image, const BoundingBox& region,
                const Image& texture, ResizeFilter filter,
                std::vector<CompositeWarning>* warnings) {
  const PixelRect rect = RoundRegion(region, image.size());
  if (rect.empty()) {
    if (warnings != nullptr) {
      warnings->push_back({"occluder region is empty after rounding; skipped"});
    }
    return image;
  }
  const Image patch = Resample(texture, rect.width(), rect.height(), filter);
  Image out = image;
  for (int y = 0; y < rect.height(); ++y) {
    for (int x = 0; x < rect.width(); ++x) {
      out.set(rect.x0 + x, rect.y0 + y, patch.at(x, y));
    }
  }
  return out;
}

Image OccludeFrame(const Image& image, const LabelFrame& labels,
                   const OverlaySpec& spec,
                   std::vector<CompositeWarning>* warnings) {
  spec.Validate();
  Image out = image;
  for (const auto& obj : labels.objects) {
    if (obj.class_name != spec.target_class) continue;
    const auto region = TargetRegion(obj.bbox, spec, image.size());
    if (!region) {
      if (warnings != nullptr) {
        warnings->push_back({"frame " + labels.frame_id +
                             ": occluder region lies outside the image"});
      }
      continue;
    }
    out = Composite(out, *region, spec.texture, spec.resize_filter, warnings);
  }
  return out;
}

std::vector<PixelRect> OccluderRects(const LabelFrame& labels,
                                     const OverlaySpec& spec,
                                     const ImageSize& image_size) {
  std::vector<PixelRect> rects;
  for (const auto& obj : labels.objects) {
    if (obj.class_name != spec.target_class) continue;
    if (auto region = TargetRegion(obj.bbox, spec, image_size)) {
      rects.push_back(RoundRegion(*region, image_size));
    }
  }
  return rects;
}

std::uint8_t Luma(Rgb c) {
  const unsigned sum = 299u * c.r + 587u * c.g + 114u * c.b + 500u;
  return static_cast<std::uint8_t>(sum / 1000u);
}

Image ToGrayscale(const Image& image) {
  Image out = image;
  auto& d = out.data();
  for (std::size_t i = 0; i + 2 < d.size(); i += 3) {
    const std::uint8_t y = Luma({d[i], d[i + 1], d[i + 2]});
    d[i] = d[i + 1] = d[i + 2] = y;
  }
  return out;
}

}  // namespace occlbench

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
#ifndef OCCLBENCH_OCCLUSION_SYNTH_H_
#define OCCLBENCH_OCCLUSION_SYNTH_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "occlbench/bounding_box.h"
#include "occlbench/image.h"
#include "occlbench/kitti_io.h"
#include "occlbench/label_transform.h"

namespace occlbench {

enum class OcclusionKind { kBox, kWall };
enum class ResizeFilter { kNearest, kBilinear };

std::string_view OcclusionKindName(OcclusionKind kind);
OcclusionKind ParseOcclusionKind(std::string_view name);
std::string_view ResizeFilterName(ResizeFilter filter);
ResizeFilter ParseResizeFilter(std::string_view name);

// Body half an occluder covers: a carried box hides the upper body, a wall
// the body from the waist down.
BodyPart RegionFor(OcclusionKind kind);

// Recipe for one occlusion experiment.
struct OverlaySpec {
  OcclusionKind kind = OcclusionKind::kBox;
  Image texture;
  // Horizontal extent relative to the pedestrian box width, centered.
  double width_factor = 1.0;
  ResizeFilter resize_filter = ResizeFilter::kBilinear;
  std::string target_class = "Pedestrian";

  BodyPart region() const { return RegionFor(kind); }
  // Throws ArgumentError on an empty texture or width_factor <= 0.
  void Validate() const;
};

// Real-valued occluder rectangle for one labelled object: the vertical
// extent of the body half, center +/- (width * width_factor) / 2
// horizontally, clipped to the image. nullopt when clipping leaves nothing.
std::optional<BoundingBox> TargetRegion(const BoundingBox& bbox,
                                        const OverlaySpec& spec,
                                        const ImageSize& image_size);

// Expands a real rectangle to whole pixels: floor(left/top), ceil(right/
// bottom), then clips to the image. The result may be empty.
PixelRect RoundRegion(const BoundingBox& region, const ImageSize& image_size);

// Resamples `texture` to width x height.
//
//   Nearest:  src = floor((dst + 0.5) * src_size / dst_size).
//   Bilinear: src = (dst + 0.5) * src_size / dst_size - 0.5, clamped to the
//             texture, interpolated and rounded half up per channel.
Image Resample(const Image& texture, int width, int height,
               ResizeFilter filter);

struct CompositeWarning {
  std::string message;
};

// Pastes `texture`, resampled to the rounded region, opaquely into a copy
// of `image`. Pixels outside the rounded region are untouched. An empty
// rounded region returns the input unchanged and appends a warning.
Image Composite(const Image& image, const BoundingBox& region,
                const Image& texture, ResizeFilter filter,
                std::vector<CompositeWarning>* warnings = nullptr);

// One Composite per target-class object, in label order; where occluders
// overlap the later label wins.
Image OccludeFrame(const Image& image, const LabelFrame& labels,
                   const OverlaySpec& spec,
                   std::vector<CompositeWarning>* warnings = nullptr);

// Rounded regions OccludeFrame paints for `labels`, in label order.
std::vector<PixelRect> OccluderRects(const LabelFrame& labels,
                                     const OverlaySpec& spec,
                                     const ImageSize& image_size);

// BT.601 luma, Y = round_half_up(0.299 R + 0.587 G + 0.114 B), written to
// all three channels. Computed in integers as (299R + 587G + 114B + 500) /
// 1000, so the result is exact and idempotent.
std::uint8_t Luma(Rgb c);
Image ToGrayscale(const Image& image);

}  // namespace occlbench

#endif  // OCCLBENCH_OCCLUSION_SYNTH_H_

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
#ifndef OCCLBENCH_BOUNDING_BOX_H_
#define OCCLBENCH_BOUNDING_BOX_H_

#include <optional>

namespace occlbench {

struct ImageSize {
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

// Axis-aligned pixel rectangle, origin at the image top-left. Coordinates are
// real valued. The struct itself is a plain aggregate; use Make() or
// Validate() wherever the left < right, top < bottom invariant must hold.
// Coordinates may be negative or exceed the image: boxes of truncated
// objects extend past the border.
struct BoundingBox {
  double left = 0.0;
  double top = 0.0;
  double right = 0.0;
  double bottom = 0.0;

  // Throws GeometryError unless all values are finite, left < right and
  // top < bottom.
  static BoundingBox Make(double left, double top, double right,
                          double bottom);

  bool IsValid() const;
  void Validate() const;

  double Width() const { return right - left; }
  double Height() const { return bottom - top; }
  // Zero for degenerate or inverted boxes.
  double Area() const;
  double CenterX() const { return left + Width() / 2.0; }

  // True when the box lies entirely within [0, width] x [0, height].
  bool WithinImage(const ImageSize& size) const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// Intersection of two boxes, or nullopt when they do not overlap with
// positive area.
std::optional<BoundingBox> Intersect(const BoundingBox& a,
                                     const BoundingBox& b);

// Clips `box` to the image rectangle; nullopt if nothing with positive area
// remains.
std::optional<BoundingBox> ClipToImage(const BoundingBox& box,
                                       const ImageSize& size);

}  // namespace occlbench

#endif  // OCCLBENCH_BOUNDING_BOX_H_

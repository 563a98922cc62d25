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
#include "occlbench/bounding_box.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "occlbench/error.h"

namespace occlbench {

BoundingBox BoundingBox::Make(double left, double top, double right,
                              double bottom) {
  BoundingBox box{left, top, right, bottom};
  box.Validate();
  return box;
}

bool BoundingBox::IsValid() const {
  return std::isfinite(left) && std::isfinite(top) && std::isfinite(right) &&
         std::isfinite(bottom) && left < right && top < bottom;
}

void BoundingBox::Validate() const {
  if (IsValid()) return;
  std::ostringstream msg;
  msg << "invalid bounding box (" << left << ", " << top << ", " << right
      << ", " << bottom << "): ";
  if (!(std::isfinite(left) && std::isfinite(top) && std::isfinite(right) &&
        std::isfinite(bottom))) {
    msg << "non-finite coordinate";
  } else if (!(left < right)) {
    msg << "left must be < right";
  } else {
    msg << "top must be < bottom";
  }
  throw GeometryError(msg.str());
}

double BoundingBox::Area() const {
  if (!(left < right) || !(top < bottom)) return 0.0;
  return (right - left) * (bottom - top);
}

bool BoundingBox::WithinImage(const ImageSize& size) const {
  return left >= 0.0 && top >= 0.0 && right <= size.width &&
         bottom <= size.height;
}

std::optional<BoundingBox> Intersect(const BoundingBox& a,
                                     const BoundingBox& b) {
  BoundingBox out{std::max(a.left, b.left), std::max(a.top, b.top),
                  std::min(a.right, b.right), std::min(a.bottom, b.bottom)};
  if (!(out.left < out.right) || !(out.top < out.bottom)) return std::nullopt;
  return out;
}

std::optional<BoundingBox> ClipToImage(const BoundingBox& box,
                                       const ImageSize& size) {
  return Intersect(box, BoundingBox{0.0, 0.0, static_cast<double>(size.width),
                                    static_cast<double>(size.height)});
}

}  // namespace occlbench

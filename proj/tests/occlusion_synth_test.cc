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

#include <gtest/gtest.h>

#include "occlbench/error.h"
#include "occlbench/rng.h"
#include "oracles.h"

namespace occlbench {
namespace {

Image Noise(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  Image img(w, h);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.UniformIndex(256));
  return img;
}

OverlaySpec Spec(OcclusionKind kind, double width_factor, Image texture,
                 ResizeFilter filter = ResizeFilter::kBilinear) {
  OverlaySpec spec;
  spec.kind = kind;
  spec.width_factor = width_factor;
  spec.texture = std::move(texture);
  spec.resize_filter = filter;
  return spec;
}

ObjectLabel Ped(BoundingBox b, const std::string& cls = "Pedestrian") {
  ObjectLabel o;
  o.class_name = cls;
  o.bbox = b;
  return o;
}

TEST(TargetRegionTest, BoxCoversUpperHalf) {
  const auto spec = Spec(OcclusionKind::kBox, 1.0, Image(1, 1));
  EXPECT_EQ(TargetRegion({100, 50, 140, 150}, spec, {1242, 375}),
            (BoundingBox{100, 50, 140, 100}));
}

TEST(TargetRegionTest, WallWidthFactorWidens) {
  // Center 120, half extent 40 * 2.0 / 2.
  const auto spec = Spec(OcclusionKind::kWall, 2.0, Image(1, 1));
  EXPECT_EQ(TargetRegion({100, 50, 140, 150}, spec, {1242, 375}),
            (BoundingBox{80, 100, 160, 150}));
}

TEST(TargetRegionTest, ClippedAtBorder) {
  const auto spec = Spec(OcclusionKind::kBox, 1.0, Image(1, 1));
  EXPECT_EQ(TargetRegion({-20, 50, 10, 150}, spec, {1242, 375}),
            (BoundingBox{0, 50, 10, 100}));
  EXPECT_FALSE(TargetRegion({-40, 50, -10, 150}, spec, {1242, 375}));
}

TEST(RoundRegionTest, ExpandsOutward) {
  EXPECT_EQ(RoundRegion({10.2, 10.7, 11.1, 12.0}, {100, 100}),
            (PixelRect{10, 10, 12, 12}));
  EXPECT_EQ(RoundRegion({95.5, 0, 120, 3}, {100, 100}),
            (PixelRect{95, 0, 100, 3}));
}

TEST(CompositeTest, ConstantTexture) {
  const Image img = Noise(20, 20, 1);
  const Image red(1, 1, {255, 0, 0});
  const Image out = Composite(img, {10, 10, 12, 12}, red, ResizeFilter::kBilinear);
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      const bool inside = x >= 10 && x < 12 && y >= 10 && y < 12;
      EXPECT_EQ(out.at(x, y), inside ? Rgb({255, 0, 0}) : img.at(x, y));
    }
  }
}

TEST(CompositeTest, EmptyRegionIsNoOpWithWarning) {
  const Image img = Noise(8, 8, 2);
  std::vector<CompositeWarning> warnings;
  EXPECT_EQ(Composite(img, {3, 3, 3, 6}, Image(1, 1, {1, 2, 3}),
                      ResizeFilter::kNearest, &warnings),
            img);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(CompositeTest, NearestCheckerboardReplicates) {
  Image checker(2, 2);
  checker.set(0, 0, {255, 255, 255});
  checker.set(1, 1, {255, 255, 255});
  const Image img(10, 10, {9, 9, 9});
  const Image out = Composite(img, {2, 3, 6, 7}, checker, ResizeFilter::kNearest);
  const Image expected = testing::ReplicateTexels(checker, 2, 2);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      EXPECT_EQ(out.at(2 + x, 3 + y), expected.at(x, y)) << x << "," << y;
    }
  }
}

TEST(ResampleTest, BilinearConstantStaysConstant) {
  const Image tex(3, 5, {12, 200, 77});
  const Image out = Resample(tex, 17, 9, ResizeFilter::kBilinear);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 17; ++x) EXPECT_EQ(out.at(x, y), (Rgb{12, 200, 77}));
  }
}

TEST(ResampleTest, BilinearIdentityAtSameSize) {
  const Image tex = Noise(7, 6, 3);
  EXPECT_EQ(Resample(tex, 7, 6, ResizeFilter::kBilinear), tex);
  EXPECT_EQ(Resample(tex, 7, 6, ResizeFilter::kNearest), tex);
}

TEST(ResampleTest, BilinearMidpoint) {
  // Upscaling 2 -> 4: destination x=1 samples source 0.25, x=2 samples 0.75.
  Image tex(2, 1);
  tex.set(0, 0, {0, 0, 0});
  tex.set(1, 0, {100, 100, 100});
  const Image out = Resample(tex, 4, 1, ResizeFilter::kBilinear);
  EXPECT_EQ(out.at(0, 0).r, 0);
  EXPECT_EQ(out.at(1, 0).r, 25);
  EXPECT_EQ(out.at(2, 0).r, 75);
  EXPECT_EQ(out.at(3, 0).r, 100);
}

TEST(OccludeFrameTest, CoversEveryPedestrianUpperHalf) {
  const Image img(200, 100, {10, 20, 30});
  LabelFrame labels;
  labels.objects = {Ped({10, 10, 30, 90}), Ped({100, 20, 120, 60}),
                    Ped({150, 10, 190, 90}, "Car")};
  const auto spec = Spec(OcclusionKind::kBox, 1.0, Image(1, 1, {200, 0, 0}));
  const Image out = OccludeFrame(img, labels, spec);
  EXPECT_EQ(out.at(20, 30), (Rgb{200, 0, 0}));
  EXPECT_EQ(out.at(20, 60), (Rgb{10, 20, 30}));
  EXPECT_EQ(out.at(110, 25), (Rgb{200, 0, 0}));
  EXPECT_EQ(out.at(110, 45), (Rgb{10, 20, 30}));
  EXPECT_EQ(out.at(170, 30), (Rgb{10, 20, 30}));
}

TEST(OccludeFrameTest, NoTargetsUnchanged) {
  const Image img = Noise(30, 30, 4);
  LabelFrame labels;
  labels.objects = {Ped({1, 1, 10, 10}, "Car")};
  EXPECT_EQ(OccludeFrame(img, labels,
                         Spec(OcclusionKind::kBox, 1.0, Image(1, 1))),
            img);
}

TEST(OccludeFrameTest, LaterLabelWinsOnOverlap) {
  // A 2x1 texture, dark left and bright right. Pixel x=25 falls in the right
  // half of the first box and in the left half of the second.
  Image tex(2, 1);
  tex.set(0, 0, {0, 0, 0});
  tex.set(1, 0, {255, 255, 255});
  const auto spec = Spec(OcclusionKind::kBox, 1.0, tex, ResizeFilter::kNearest);
  const ObjectLabel a = Ped({10, 10, 30, 40});
  const ObjectLabel b = Ped({20, 10, 40, 40});
  const Image img(50, 50, {7, 7, 7});

  LabelFrame forward;
  forward.objects = {a, b};
  EXPECT_EQ(OccludeFrame(img, forward, spec).at(25, 15), (Rgb{0, 0, 0}));

  LabelFrame backward;
  backward.objects = {b, a};
  EXPECT_EQ(OccludeFrame(img, backward, spec).at(25, 15), (Rgb{255, 255, 255}));
}

TEST(OccludeFrameTest, InvalidSpecRejected) {
  LabelFrame labels;
  EXPECT_THROW(OccludeFrame(Image(4, 4), labels,
                            Spec(OcclusionKind::kBox, 1.0, Image())),
               ArgumentError);
  EXPECT_THROW(OccludeFrame(Image(4, 4), labels,
                            Spec(OcclusionKind::kBox, 0.0, Image(1, 1))),
               ArgumentError);
}

TEST(GrayscaleTest, Bt601Values) {
  EXPECT_EQ(Luma({100, 150, 200}), 141);
  EXPECT_EQ(Luma({50, 50, 50}), 50);
  EXPECT_EQ(Luma({255, 255, 255}), 255);
  EXPECT_EQ(Luma({0, 0, 0}), 0);
  // 0.299 * 1 + 0.587 * 1 + 0.114 * 0 = 0.886 rounds up.
  EXPECT_EQ(Luma({1, 1, 0}), 1);
  EXPECT_EQ(Luma({255, 0, 0}), 76);   // 76.245
  EXPECT_EQ(Luma({0, 255, 0}), 150);  // 149.685
  EXPECT_EQ(Luma({0, 0, 255}), 29);   // 29.07
}

TEST(GrayscaleTest, ImageConversion) {
  Image img(2, 1);
  img.set(0, 0, {100, 150, 200});
  img.set(1, 0, {50, 50, 50});
  const Image g = ToGrayscale(img);
  EXPECT_EQ(g.at(0, 0), (Rgb{141, 141, 141}));
  EXPECT_EQ(g.at(1, 0), (Rgb{50, 50, 50}));
}

// Luma matches the floating-point BT.601 formula rounded half up, over the
// whole 8-bit cube sampled on a lattice.
TEST(GrayscaleProperty, MatchesFloatingFormula) {
  for (int r = 0; r < 256; r += 3) {
    for (int g = 0; g < 256; g += 5) {
      for (int b = 0; b < 256; b += 7) {
        const double y = 0.299 * r + 0.587 * g + 0.114 * b;
        const double frac = y - std::floor(y);
        if (std::abs(frac - 0.5) < 1e-9) continue;  // exact ties checked above
        ASSERT_EQ(Luma({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                        static_cast<std::uint8_t>(b)}),
                  static_cast<int>(std::floor(y + 0.5)));
      }
    }
  }
}

TEST(GrayscaleProperty, IdempotentAndChannelEqual) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Image img = Noise(13, 11, seed);
    const Image g = ToGrayscale(img);
    ASSERT_EQ(ToGrayscale(g), g);
    for (int y = 0; y < g.height(); ++y) {
      for (int x = 0; x < g.width(); ++x) {
        const Rgb c = g.at(x, y);
        ASSERT_TRUE(c.r == c.g && c.g == c.b);
      }
    }
  }
}

// Pixels outside the rounded occluder rectangles never change.
TEST(OccludeFrameProperty, PixelAudit) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int w = 40 + static_cast<int>(rng.UniformIndex(60));
    const int h = 30 + static_cast<int>(rng.UniformIndex(40));
    const Image img = Noise(w, h, trial);
    LabelFrame labels;
    const int n = static_cast<int>(rng.UniformIndex(4));
    for (int i = 0; i < n; ++i) {
      const double l = rng.Uniform(-10, w);
      const double t = rng.Uniform(-10, h);
      labels.objects.push_back(Ped({l, t, l + rng.Uniform(1, 30),
                                    t + rng.Uniform(1, 40)},
                                   rng.UniformIndex(4) ? "Pedestrian" : "Car"));
    }
    const auto kind = rng.UniformIndex(2) ? OcclusionKind::kBox : OcclusionKind::kWall;
    const auto spec = Spec(kind, rng.Uniform(0.5, 2.5), Noise(5, 4, trial + 1000));
    const Image out = OccludeFrame(img, labels, spec);
    const auto rects = OccluderRects(labels, spec, img.size());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const bool covered = std::any_of(rects.begin(), rects.end(),
                                         [&](const PixelRect& r) {
                                           return r.Contains(x, y);
                                         });
        if (!covered) {
          ASSERT_EQ(out.at(x, y), img.at(x, y));
        }
      }
    }
  }
}

}  // namespace
}  // namespace occlbench

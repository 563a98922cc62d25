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
#include "occlbench/cascade.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "occlbench/error.h"
#include "occlbench/eval_metrics.h"
#include "occlbench/rng.h"

namespace occlbench {
namespace {

Detection Det(BoundingBox b, double score) {
  return MakeDetection("Pedestrian", b, score);
}

TEST(HorizontalOverlapTest, Examples) {
  EXPECT_EQ(HorizontalOverlap({0, 0, 10, 5}, {0, 20, 10, 30}), 1.0);
  EXPECT_EQ(HorizontalOverlap({0, 0, 10, 5}, {20, 0, 30, 5}), 0.0);
  EXPECT_EQ(HorizontalOverlap({0, 0, 10, 5}, {5, 0, 20, 5}), 0.5);
}

TEST(PairHalvesTest, StackedHalvesPair) {
  const std::vector<Detection> up = {Det({0, 0, 10, 10}, 0.5)};
  const std::vector<Detection> lo = {Det({0, 10, 10, 20}, 0.5)};
  const auto pairs = PairHalves(up, lo, {});
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0], (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(PairHalvesTest, NoHorizontalOverlap) {
  const std::vector<Detection> up = {Det({0, 0, 10, 10}, 0.5)};
  const std::vector<Detection> lo = {Det({50, 10, 60, 20}, 0.5)};
  EXPECT_TRUE(PairHalves(up, lo, {}).empty());
}

TEST(PairHalvesTest, VerticalGapTooLarge) {
  const std::vector<Detection> up = {Det({0, 0, 10, 10}, 0.5)};
  const std::vector<Detection> lo = {Det({0, 16, 10, 26}, 0.5)};
  EXPECT_TRUE(PairHalves(up, lo, {}).empty());
  const std::vector<Detection> near = {Det({0, 15, 10, 25}, 0.5)};
  EXPECT_EQ(PairHalves(up, near, {}).size(), 1u);
}

TEST(PairHalvesTest, HigherCombinedScoreWins) {
  const std::vector<Detection> up = {Det({0, 0, 10, 10}, 0.3),
                                     Det({1, 0, 11, 10}, 0.8)};
  const std::vector<Detection> lo = {Det({0, 10, 10, 20}, 0.6)};
  const auto pairs = PairHalves(up, lo, {});
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].first, 1u);
}

TEST(ReconstructTest, Examples) {
  const BoundingBox b{100, 50, 140, 150};
  EXPECT_EQ(ReconstructFull(SplitBox(b, BodyPart::kUpper), SplitBox(b, BodyPart::kLower)), b);
  EXPECT_EQ(ReconstructFull({0, 0, 10, 10}, {2, 10, 12, 20}), (BoundingBox{0, 0, 12, 20}));
  EXPECT_EQ(ReconstructFromUpper({0, 0, 10, 10}), (BoundingBox{0, 0, 10, 20}));
  EXPECT_EQ(ReconstructFromLower({0, 10, 10, 20}), (BoundingBox{0, 0, 10, 20}));
}

TEST(ReconstructProperty, InverseOfSplit) {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const double l = rng.Uniform(-100, 1000);
    const double t = rng.Uniform(-100, 300);
    const BoundingBox b{l, t, l + rng.Uniform(0.01, 300), t + rng.Uniform(0.01, 300)};
    ASSERT_EQ(ReconstructFull(SplitBox(b, BodyPart::kUpper),
                              SplitBox(b, BodyPart::kLower)),
              b);
  }
}

TEST(CascadeDecideTest, ConfidentFullPassesThrough) {
  const std::vector<Detection> full = {Det({0, 0, 10, 20}, 0.9)};
  const auto hyps = CascadeDecide(full, {}, {}, {});
  ASSERT_EQ(hyps.size(), 1u);
  EXPECT_FALSE(hyps[0].gated);
  EXPECT_EQ(hyps[0].fused_score, 0.9);
  EXPECT_EQ(hyps[0].agreement, 0.0);
  EXPECT_EQ(hyps[0].bbox, (BoundingBox{0, 0, 10, 20}));
  EXPECT_EQ(SourcesToString(hyps[0]), "full:0.90");
}

TEST(CascadeDecideTest, LowFullFusedWithHalves) {
  const std::vector<Detection> full = {Det({0, 0, 10, 20}, 0.3)};
  const std::vector<Detection> up = {Det({0, 0, 10, 10}, 0.2)};
  const std::vector<Detection> lo = {Det({0, 10, 10, 20}, 0.8)};
  const auto hyps = CascadeDecide(full, up, lo, {});
  ASSERT_EQ(hyps.size(), 1u);
  EXPECT_TRUE(hyps[0].gated);
  EXPECT_NEAR(hyps[0].fused_score, 0.40, 1e-12);
  EXPECT_NEAR(hyps[0].agreement, 0.6, 1e-12);
  EXPECT_EQ(hyps[0].sources.size(), 3u);
  EXPECT_EQ(SourcesToString(hyps[0]), "full:0.30|upper:0.20|lower:0.80");
}

TEST(CascadeDecideTest, HalvesWithoutFull) {
  const std::vector<Detection> up = {Det({0, 0, 10, 10}, 0.7)};
  const std::vector<Detection> lo = {Det({0, 10, 10, 20}, 0.7)};
  const auto hyps = CascadeDecide({}, up, lo, {});
  ASSERT_EQ(hyps.size(), 1u);
  EXPECT_TRUE(hyps[0].gated);
  EXPECT_DOUBLE_EQ(hyps[0].fused_score, 0.7);
  EXPECT_EQ(hyps[0].agreement, 0.0);
  EXPECT_EQ(hyps[0].bbox, (BoundingBox{0, 0, 10, 20}));
}

TEST(CascadeDecideTest, SingleHalfFallback) {
  const std::vector<Detection> lo = {Det({0, 10, 10, 20}, 0.6)};
  const auto hyps = CascadeDecide({}, {}, lo, {});
  ASSERT_EQ(hyps.size(), 1u);
  EXPECT_EQ(hyps[0].bbox, (BoundingBox{0, 0, 10, 20}));
  EXPECT_EQ(hyps[0].fused_score, 0.6);
}

TEST(CascadeDecideTest, HalvesMergeIntoConfidentFull) {
  const std::vector<Detection> full = {Det({0, 0, 10, 20}, 0.9)};
  const std::vector<Detection> up = {Det({0, 0, 10, 10}, 0.4)};
  const std::vector<Detection> lo = {Det({0, 10, 10, 20}, 0.5)};
  const auto hyps = CascadeDecide(full, up, lo, {});
  ASSERT_EQ(hyps.size(), 1u);
  EXPECT_FALSE(hyps[0].gated);
  EXPECT_EQ(hyps[0].fused_score, 0.9);
  EXPECT_EQ(hyps[0].sources.size(), 3u);
  EXPECT_NEAR(hyps[0].agreement, 0.5, 1e-12);
}

TEST(CascadeDecideTest, EmptyInput) {
  EXPECT_TRUE(CascadeDecide({}, {}, {}, {}).empty());
}

TEST(CascadeParamsTest, Validation) {
  CascadeParams p;
  EXPECT_NO_THROW(p.Validate());
  p.w_full = 0.6;
  EXPECT_THROW(p.Validate(), ArgumentError);
  p = {};
  p.gate_threshold = 1.5;
  EXPECT_THROW(p.Validate(), ArgumentError);
}

TEST(CascadeCsvTest, RowFormat) {
  const std::vector<Detection> up = {Det({0, 0, 10, 10}, 0.7)};
  const std::vector<Detection> lo = {Det({0, 10, 10, 20}, 0.7)};
  const auto hyps = CascadeDecide({}, up, lo, {});
  EXPECT_EQ(CascadeCsvHeader(),
            "frame_id,left,top,right,bottom,fused_score,agreement,gated,sources");
  EXPECT_EQ(CascadeCsvRow("000003", hyps[0]),
            "000003,0.00,0.00,10.00,20.00,0.70,0.00,1,upper:0.70|lower:0.70");
  const auto frame = HypothesesToFrame("000003", hyps, "Pedestrian");
  ASSERT_EQ(frame.objects.size(), 1u);
  EXPECT_DOUBLE_EQ(frame.objects[0].score, 0.7);
}

struct RandomFrame {
  std::vector<Detection> full, upper, lower;
};

RandomFrame MakeRandomFrame(Rng& rng) {
  RandomFrame f;
  const int people = static_cast<int>(rng.UniformIndex(4));
  for (int p = 0; p < people; ++p) {
    const double x = rng.Uniform(0, 200);
    const double y = rng.Uniform(0, 50);
    const BoundingBox b{x, y, x + rng.Uniform(10, 30), y + rng.Uniform(40, 90)};
    const auto jitter = [&](BoundingBox c) {
      return BoundingBox{c.left + rng.Uniform(-2, 2), c.top + rng.Uniform(-2, 2),
                         c.right + rng.Uniform(-2, 2), c.bottom + rng.Uniform(-2, 2)};
    };
    if (rng.UniformIndex(3)) f.full.push_back(Det(jitter(b), rng.UniformDouble()));
    if (rng.UniformIndex(3)) {
      f.upper.push_back(Det(jitter(SplitBox(b, BodyPart::kUpper)), rng.UniformDouble()));
    }
    if (rng.UniformIndex(3)) {
      f.lower.push_back(Det(jitter(SplitBox(b, BodyPart::kLower)), rng.UniformDouble()));
    }
  }
  return f;
}

TEST(CascadeProperty, ConvexFusionAndAgreement) {
  Rng rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = MakeRandomFrame(rng);
    for (const auto& h : CascadeDecide(f.full, f.upper, f.lower, {})) {
      ASSERT_FALSE(h.sources.empty());
      double lo = 1.0, hi = 0.0;
      for (const auto& s : h.sources) {
        lo = std::min(lo, s.score);
        hi = std::max(hi, s.score);
      }
      ASSERT_GE(h.fused_score, lo - 1e-12);
      ASSERT_LE(h.fused_score, hi + 1e-12);
      ASSERT_NEAR(h.agreement, hi - lo, 1e-12);
      ASSERT_GE(h.agreement, 0.0);
      ASSERT_LE(h.agreement, 1.0);
    }
  }
}

TEST(CascadeProperty, EqualScoresAgree) {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    auto f = MakeRandomFrame(rng);
    const double s = rng.UniformDouble();
    for (auto* list : {&f.full, &f.upper, &f.lower}) {
      for (auto& d : *list) d.score = s;
    }
    for (const auto& h : CascadeDecide(f.full, f.upper, f.lower, {})) {
      ASSERT_EQ(h.agreement, 0.0);
    }
  }
}

TEST(CascadeProperty, ZeroGateIsPassThrough) {
  Rng rng(43);
  CascadeParams params;
  params.gate_threshold = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = MakeRandomFrame(rng);
    const auto hyps = CascadeDecide(f.full, f.upper, f.lower, params);
    ASSERT_EQ(hyps.size(), f.full.size());
    std::vector<double> scores;
    for (const auto& h : hyps) {
      ASSERT_FALSE(h.gated);
      scores.push_back(h.fused_score);
    }
    std::vector<double> expected;
    for (const auto& d : f.full) expected.push_back(d.score);
    std::sort(expected.rbegin(), expected.rend());
    ASSERT_EQ(scores, expected);
  }
}

TEST(CascadeProperty, RaisingGateKeepsConfidentPassThrough) {
  Rng rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = MakeRandomFrame(rng);
    CascadeParams low, high;
    low.gate_threshold = rng.Uniform(0, 0.5);
    high.gate_threshold = rng.Uniform(low.gate_threshold, 1.0);
    const auto before = CascadeDecide(f.full, f.upper, f.lower, low);
    const auto after = CascadeDecide(f.full, f.upper, f.lower, high);
    for (const auto& h : before) {
      if (h.gated || h.fused_score < high.gate_threshold) continue;
      ASSERT_TRUE(std::any_of(after.begin(), after.end(), [&](const auto& g) {
        return !g.gated && g.bbox == h.bbox && g.fused_score == h.fused_score;
      }));
    }
  }
}

// Halves cut exactly from well separated ground truth reconstruct it.
TEST(CascadeProperty, PerfectSyntheticHalves) {
  Rng rng(45);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BoundingBox> gts;
    std::vector<Detection> up, lo;
    const int people = 1 + static_cast<int>(rng.UniformIndex(5));
    for (int p = 0; p < people; ++p) {
      const double x = 60.0 * p + rng.Uniform(0, 10);
      const double y = rng.Uniform(0, 100);
      const BoundingBox b{x, y, x + rng.Uniform(10, 40), y + rng.Uniform(30, 120)};
      gts.push_back(b);
      up.push_back(Det(SplitBox(b, BodyPart::kUpper), rng.Uniform(0.1, 1)));
      lo.push_back(Det(SplitBox(b, BodyPart::kLower), rng.Uniform(0.1, 1)));
    }
    const auto hyps = CascadeDecide({}, up, lo, {});
    ASSERT_EQ(hyps.size(), gts.size());
    for (const auto& g : gts) {
      double best = 0.0;
      for (const auto& h : hyps) best = std::max(best, Iou(h.bbox, g));
      ASSERT_GE(best, 0.99);
    }
  }
}

}  // namespace
}  // namespace occlbench

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
#include "occlbench/confidence_analysis.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "occlbench/error.h"
#include "occlbench/rng.h"

namespace occlbench {
namespace {

ConfidenceSeries Series(std::map<std::string, std::vector<double>> values) {
  ConfidenceSeries s;
  const std::size_t n = values.begin()->second.size();
  for (std::size_t i = 0; i < n; ++i) s.frames.push_back("f" + std::to_string(i));
  for (const auto& [tag, v] : values) s.model_tags.push_back(tag);
  s.values = std::move(values);
  return s;
}

ConfidenceSeries RandomSeries(Rng& rng, std::size_t n) {
  std::map<std::string, std::vector<double>> v;
  for (const char* tag : {"full", "upper", "lower"}) {
    auto& col = v[tag];
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse values so ties and exact zeros occur.
      col.push_back(rng.UniformIndex(3) == 0 ? 0.0 : rng.UniformIndex(11) / 10.0);
    }
  }
  return Series(std::move(v));
}

ObjectLabel Gt(BoundingBox b, const std::string& cls = "Pedestrian") {
  ObjectLabel o;
  o.class_name = cls;
  o.bbox = b;
  return o;
}

TEST(BuildSeriesTest, ShapeAndFrameFilter) {
  LabelSet gts;
  gts["b"] = {"b", std::nullopt, {Gt({0, 0, 10, 20})}};
  gts["a"] = {"a", std::nullopt, {Gt({0, 0, 10, 20})}};
  gts["c"] = {"c", std::nullopt, {Gt({0, 0, 10, 20}, "Car")}};
  DetectionSet good;
  for (const char* id : {"a", "b", "c"}) {
    good[id] = {id, std::nullopt, {MakeDetection("Pedestrian", {0, 0, 10, 20}, 0.7)}};
  }
  DetectionSet empty;
  for (const char* id : {"a", "b", "c"}) empty[id] = {id, std::nullopt, {}};
  DetectionSet partial;
  partial["b"] = good["b"];

  std::vector<std::string> warnings;
  const auto s = BuildSeries({{"full", good}, {"upper", empty}, {"lower", partial}},
                             gts, {}, &warnings);
  EXPECT_EQ(s.frames, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(s.model_tags, (std::vector<std::string>{"full", "upper", "lower"}));
  EXPECT_EQ(s.Column("full"), (std::vector<double>{0.7, 0.7}));
  EXPECT_EQ(s.Column("upper"), (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(s.Column("lower"), (std::vector<double>{0.0, 0.7}));
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_NO_THROW(s.Validate());
}

// Detection directories written by an external detector: one file per image,
// an empty file when nothing was found.
TEST(BuildSeriesTest, ExternalDetectorDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "occlbench_adapter";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "gt");
  std::filesystem::create_directories(dir / "dets");
  const std::string ped =
      "Pedestrian 0.00 0 0.00 10.00 20.00 40.00 100.00 0.00 0.00 0.00 0.00 0.00 0.00 0.00";
  for (const char* id : {"000000", "000001", "000002"}) {
    WriteTextFile(dir / "gt" / (std::string(id) + ".txt"), ped + "\n");
  }
  WriteTextFile(dir / "dets" / "000000.txt", ped + " 0.83\n");
  WriteTextFile(dir / "dets" / "000001.txt", "");

  std::vector<std::string> warnings;
  const auto s = BuildSeries({{"full", ReadDetectionDir(dir / "dets")}},
                             ReadLabelDir(dir / "gt"), {}, &warnings);
  EXPECT_EQ(s.Column("full"), (std::vector<double>{0.83, 0.0, 0.0}));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("000002"), std::string::npos);
}

TEST(SeriesTest, UnknownTagAndValidation) {
  auto s = Series({{"full", {0.5, 0.2}}});
  EXPECT_THROW(s.Column("upper"), ArgumentError);
  s.values["full"].push_back(0.1);
  EXPECT_THROW(s.Validate(), ArgumentError);
  s.values["full"] = {0.5, 1.5};
  EXPECT_THROW(s.Validate(), ArgumentError);
}

TEST(SortByTagTest, Permutation) {
  const auto s = Series({{"full", {0.5, 0.1, 0.9}}, {"upper", {1.0, 0.2, 0.3}}});
  const auto view = SortByTag(s, "full");
  EXPECT_EQ(view.permutation, (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_EQ(view.series.Column("full"), (std::vector<double>{0.1, 0.5, 0.9}));
  EXPECT_EQ(view.series.Column("upper"), (std::vector<double>{0.2, 1.0, 0.3}));
  EXPECT_EQ(view.series.frames, (std::vector<std::string>{"f1", "f0", "f2"}));
  EXPECT_EQ(SortByTag(s, "full", false).permutation,
            (std::vector<std::size_t>{2, 0, 1}));
  EXPECT_THROW(SortByTag(s, "lower"), ArgumentError);
}

TEST(SortByTagTest, Stable) {
  const auto s = Series({{"full", {0.5, 0.5, 0.2, 0.5}}});
  EXPECT_EQ(SortByTag(s, "full").permutation,
            (std::vector<std::size_t>{2, 0, 1, 3}));
}

TEST(SortByTagProperty, SharedPermutationAndIdempotence) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = RandomSeries(rng, 1 + rng.UniformIndex(30));
    const auto view = SortByTag(s, "full");
    for (std::size_t i = 0; i < s.frames.size(); ++i) {
      const std::size_t src = view.permutation[i];
      for (const auto& tag : s.model_tags) {
        ASSERT_EQ(view.series.Column(tag)[i], s.Column(tag)[src]);
      }
      ASSERT_EQ(view.series.frames[i], s.frames[src]);
    }
    ASSERT_EQ(SortByTag(view.series, "full").series, view.series);
    ASSERT_EQ(ApplyPermutation(s, view.permutation), view.series);
  }
}

TEST(DiffStatsTest, TwelveFrameFixture) {
  std::vector<double> base(12, 0.8), var(12, 0.7);
  base[4] = 0.9;
  var[4] = 0.3;
  const auto stats = ComputeDiffStats(Series({{"full", base}, {"occl", var}}),
                                      "full", "occl");
  ASSERT_TRUE(stats);
  EXPECT_NEAR(stats->mean_decrease, 1.7 / 12, 1e-12);
  EXPECT_NEAR(stats->mean_decrease, 0.1417, 5e-5);
  EXPECT_DOUBLE_EQ(stats->frac_lost, 1.0 / 12);
  EXPECT_DOUBLE_EQ(stats->frac_degraded, 11.0 / 12);
  EXPECT_EQ(stats->frac_improved, 0.0);
  EXPECT_EQ(stats->decreases.size(), 12u);
}

TEST(DiffStatsTest, IdenticalRows) {
  const auto stats = ComputeDiffStats(
      Series({{"full", {0.2, 0.0, 1.0}}, {"copy", {0.2, 0.0, 1.0}}}), "full", "copy");
  EXPECT_EQ(stats->mean_decrease, 0.0);
  EXPECT_EQ(stats->frac_unchanged, 1.0);
}

TEST(DiffStatsTest, TotalLoss) {
  const auto stats = ComputeDiffStats(
      Series({{"full", {1.0, 1.0}}, {"occl", {0.0, 0.0}}}), "full", "occl");
  EXPECT_EQ(stats->mean_decrease, 1.0);
  EXPECT_EQ(stats->frac_lost, 1.0);
}

TEST(DiffStatsTest, DropToZeroCountsAsLost) {
  const auto stats = ComputeDiffStats(
      Series({{"full", {0.3, 0.0}}, {"occl", {0.0, 0.0}}}), "full", "occl");
  EXPECT_EQ(stats->frac_lost, 0.5);
  EXPECT_EQ(stats->frac_unchanged, 0.5);
}

TEST(DiffStatsTest, ImprovementsAndThreshold) {
  const auto s = Series({{"full", {0.2, 0.9, 0.9}}, {"occl", {0.6, 0.4, 0.5}}});
  const auto stats = ComputeDiffStats(s, "full", "occl");
  EXPECT_DOUBLE_EQ(stats->frac_improved, 1.0 / 3);
  EXPECT_DOUBLE_EQ(stats->frac_lost + stats->frac_degraded, 2.0 / 3);
  EXPECT_DOUBLE_EQ(ComputeDiffStats(s, "full", "occl", 0.7)->frac_degraded, 2.0 / 3);
}

TEST(DiffStatsTest, EmptyAndUnknown) {
  ConfidenceSeries empty;
  empty.model_tags = {"full", "occl"};
  empty.values = {{"full", {}}, {"occl", {}}};
  EXPECT_FALSE(ComputeDiffStats(empty, "full", "occl"));
  EXPECT_THROW(ComputeDiffStats(empty, "full", "nope"), ArgumentError);
}

TEST(DiffStatsProperty, PartitionSelfAndAntisymmetry) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = RandomSeries(rng, 1 + rng.UniformIndex(40));
    const double thr = rng.UniformIndex(10) / 10.0;
    const auto ab = ComputeDiffStats(s, "full", "lower", thr);
    const auto ba = ComputeDiffStats(s, "lower", "full", thr);
    ASSERT_NEAR(ab->frac_lost + ab->frac_improved + ab->frac_degraded +
                    ab->frac_unchanged,
                1.0, 1e-12);
    ASSERT_GE(ab->mean_decrease, -1.0);
    ASSERT_LE(ab->mean_decrease, 1.0);
    ASSERT_NEAR(ab->mean_decrease, -ba->mean_decrease, 1e-12);
    const auto aa = ComputeDiffStats(s, "upper", "upper", thr);
    ASSERT_EQ(aa->mean_decrease, 0.0);
    ASSERT_EQ(aa->frac_unchanged, 1.0);
  }
}

TEST(ImprovementFractionTest, Examples) {
  const auto s = Series({{"a", {0.9, 0.1}}, {"b", {0.5, 0.5}}});
  EXPECT_EQ(ImprovementFraction(s, "a", "b"), 0.5);
  EXPECT_EQ(ImprovementFraction(s, "a", "a"), 0.0);
  EXPECT_THROW(ImprovementFraction(s, "a", "c"), ArgumentError);
}

TEST(ImprovementFractionProperty, MatchesCount) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = RandomSeries(rng, 1 + rng.UniformIndex(25));
    const auto& a = s.Column("lower");
    const auto& b = s.Column("full");
    int count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) count += a[i] > b[i];
    ASSERT_DOUBLE_EQ(ImprovementFraction(s, "lower", "full"),
                     static_cast<double>(count) / a.size());
  }
}

TEST(MeanConfidenceTest, Mean) {
  EXPECT_DOUBLE_EQ(MeanConfidence(Series({{"full", {0.2, 0.4, 0.9}}}), "full"), 0.5);
}

TEST(SeriesCsvTest, RoundTrip) {
  Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = RandomSeries(rng, 1 + rng.UniformIndex(10));
    s.model_tags = {"full", "upper", "lower"};
    for (auto& [tag, col] : s.values) {
      for (auto& v : col) v = rng.UniformDouble();
    }
    const std::string csv = SeriesToCsv(s);
    ASSERT_EQ(csv.substr(0, csv.find('\n')), "frame_id,full,upper,lower");
    ASSERT_EQ(SeriesFromCsv(csv), s);
  }
}

TEST(StatsCsvTest, HeaderAndRow) {
  const auto stats = ComputeDiffStats(
      Series({{"full", {1.0, 1.0}}, {"occl", {0.0, 1.0}}}), "full", "occl");
  const std::string csv = StatsToCsv({{"full", "occl", *stats}});
  EXPECT_NE(csv.find("full,occl,0.50,0.50,0.00,0.00,0.50,0.50"), std::string::npos)
      << csv;
}

}  // namespace
}  // namespace occlbench

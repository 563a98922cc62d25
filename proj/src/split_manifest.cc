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
#include "occlbench/split_manifest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "occlbench/error.h"
#include "occlbench/rng.h"

namespace occlbench {
namespace {

constexpr double kRatioTolerance = 1e-9;

// Guards floor() against products like 5 * 0.4 landing a hair below 2.
std::size_t FloorCount(std::size_t n, double fraction) {
  const double x = static_cast<double>(n) * fraction;
  return static_cast<std::size_t>(std::floor(x + kRatioTolerance));
}

std::string ShortNumber(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseRatio(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad ratio in manifest header: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string_view BucketName(Bucket bucket) {
  switch (bucket) {
    case Bucket::kTrain:
      return "train";
    case Bucket::kTest:
      return "test";
    case Bucket::kValidation:
      return "validation";
  }
  return "unknown";
}

Bucket ParseBucket(std::string_view name) {
  if (name == "train") return Bucket::kTrain;
  if (name == "test") return Bucket::kTest;
  if (name == "validation") return Bucket::kValidation;
  throw ParseError("unknown bucket '" + std::string(name) + "'");
}

std::vector<std::string> SplitManifest::Members(Bucket bucket) const {
  std::vector<std::string> out;
  for (const auto& [id, b] : assignment) {
    if (b == bucket) out.push_back(id);
  }
  return out;
}

SplitManifest MakeSplit(std::span<const std::string> frame_ids,
                        const SplitRatios& ratios, std::uint64_t seed) {
  if (frame_ids.empty()) throw ArgumentError("make_split: no frame ids");
  if (ratios.train < 0.0 || ratios.test < 0.0 || ratios.validation < 0.0) {
    throw ArgumentError("make_split: ratios must be non-negative");
  }
  const double sum = ratios.train + ratios.test + ratios.validation;
  if (std::abs(sum - 1.0) > kRatioTolerance) {
    throw ArgumentError("make_split: ratios sum to " + ShortNumber(sum) +
                        ", expected 1");
  }

  std::vector<std::string> ids(frame_ids.begin(), frame_ids.end());
  std::sort(ids.begin(), ids.end());
  if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end()) {
    throw ArgumentError("make_split: duplicate frame id '" + *dup + "'");
  }

  Rng rng(seed);
  rng.Shuffle(ids);

  const std::size_t n = ids.size();
  const std::size_t train_end = std::min(n, FloorCount(n, ratios.train));
  const std::size_t test_end =
      std::max(train_end, std::min(n, FloorCount(n, ratios.train + ratios.test)));

  SplitManifest manifest;
  manifest.seed = seed;
  manifest.ratios = ratios;
  for (std::size_t i = 0; i < n; ++i) {
    const Bucket b = i < train_end  ? Bucket::kTrain
                     : i < test_end ? Bucket::kTest
                                    : Bucket::kValidation;
    manifest.assignment.emplace(ids[i], b);
  }
  return manifest;
}

std::vector<std::string> FramesContaining(const LabelSet& labels,
                                          std::string_view class_name) {
  std::vector<std::string> out;
  for (const auto& [id, frame] : labels) {
    if (std::any_of(frame.objects.begin(), frame.objects.end(),
                    [&](const ObjectLabel& o) {
                      return o.class_name == class_name;
                    })) {
      out.push_back(id);
    }
  }
  return out;
}

std::vector<std::string> FramesContainingOnly(const LabelSet& labels,
                                              std::string_view class_name) {
  std::vector<std::string> out;
  for (const auto& [id, frame] : labels) {
    if (!frame.objects.empty() &&
        std::all_of(frame.objects.begin(), frame.objects.end(),
                    [&](const ObjectLabel& o) {
                      return o.class_name == class_name;
                    })) {
      out.push_back(id);
    }
  }
  return out;
}

void MarkTargetOnlyFrames(SplitManifest& manifest, const LabelSet& labels,
                          std::string_view class_name) {
  const auto only = FramesContainingOnly(labels, class_name);
  const std::set<std::string> only_set(only.begin(), only.end());
  manifest.target_only.clear();
  for (const auto& [id, bucket] : manifest.assignment) {
    manifest.target_only[id] = only_set.count(id) > 0;
  }
}

std::string SerializeManifest(const SplitManifest& manifest) {
  std::string out = "# seed=" + std::to_string(manifest.seed) +
                    " ratios=" + ShortNumber(manifest.ratios.train) + "," +
                    ShortNumber(manifest.ratios.test) + "," +
                    ShortNumber(manifest.ratios.validation) + "\n";
  for (const auto& [id, bucket] : manifest.assignment) {
    out += id;
    out += '\t';
    out += BucketName(bucket);
    out += '\n';
  }
  return out;
}

SplitManifest ParseManifest(std::string_view text) {
  SplitManifest manifest;
  std::size_t pos = 0;
  bool header_seen = false;
  int line_number = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.empty()) continue;
    if (!header_seen) {
      constexpr std::string_view kSeed = "# seed=";
      constexpr std::string_view kRatios = " ratios=";
      const auto ratios_at = line.find(kRatios);
      if (line.substr(0, kSeed.size()) != kSeed ||
          ratios_at == std::string_view::npos) {
        throw FormatError("manifest: missing '# seed=<n> ratios=<a>,<b>,<c>' header");
      }
      const auto seed_text =
          line.substr(kSeed.size(), ratios_at - kSeed.size());
      auto [ptr, ec] = std::from_chars(
          seed_text.data(), seed_text.data() + seed_text.size(), manifest.seed);
      if (ec != std::errc() || ptr != seed_text.data() + seed_text.size()) {
        throw ParseError("manifest: bad seed '" + std::string(seed_text) + "'");
      }
      std::string_view rest = line.substr(ratios_at + kRatios.size());
      const auto c1 = rest.find(',');
      const auto c2 = rest.find(',', c1 == std::string_view::npos ? c1 : c1 + 1);
      if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
        throw FormatError("manifest: expected three ratios");
      }
      manifest.ratios.train = ParseRatio(rest.substr(0, c1));
      manifest.ratios.test = ParseRatio(rest.substr(c1 + 1, c2 - c1 - 1));
      manifest.ratios.validation = ParseRatio(rest.substr(c2 + 1));
      header_seen = true;
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw FormatError("manifest line " + std::to_string(line_number) +
                        ": expected 'frame_id<TAB>bucket'");
    }
    std::string id(line.substr(0, tab));
    if (!manifest.assignment.emplace(id, ParseBucket(line.substr(tab + 1)))
             .second) {
      throw FormatError("manifest: duplicate frame id '" + id + "'");
    }
  }
  if (!header_seen) throw FormatError("manifest: empty");
  return manifest;
}

}  // namespace occlbench

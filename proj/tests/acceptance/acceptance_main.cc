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
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Runs against the bundled synthetic dataset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "occlbench/cascade.h"
#include "occlbench/confidence_analysis.h"
#include "occlbench/eval_metrics.h"
#include "occlbench/image.h"
#include "occlbench/kitti_io.h"
#include "occlbench/label_transform.h"
#include "occlbench/occlusion_synth.h"
#include "occlbench/pipeline.h"
#include "occlbench/pipeline_config.h"
#include "occlbench/rng.h"
#include "occlbench/synthetic.h"
#include "oracles.h"

namespace occlbench {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const fs::path kData = OCCLBENCH_DATA_DIR;
const fs::path kAssets = OCCLBENCH_ASSET_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BoundingBox IntBox(Rng& rng, int extent) {
  const double l = static_cast<double>(rng.UniformIndex(extent));
  const double t = static_cast<double>(rng.UniformIndex(extent));
  return {l, t, l + 1 + static_cast<double>(rng.UniformIndex(extent / 2)),
          t + 1 + static_cast<double>(rng.UniformIndex(extent / 2))};
}

std::vector<std::string> BundledIds() {
  std::vector<std::string> ids;
  for (const auto& [id, frame] : ReadLabelDir(kData / "labels")) ids.push_back(id);
  return ids;
}

Outcome ApOracleEquivalence() {
  Outcome o;
  const auto start = Clock::now();
  Rng rng(20260101);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    DetectionSet dets;
    LabelSet gts;
    const int frames = 1 + static_cast<int>(rng.UniformIndex(3));
    for (std::size_t i = 0, n = rng.UniformIndex(6); i < n; ++i) {
      const std::string id = std::to_string(rng.UniformIndex(frames));
      ObjectLabel g;
      g.class_name = "Pedestrian";
      g.bbox = IntBox(rng, 16);
      gts[id].objects.push_back(g);
    }
    for (std::size_t i = 0, n = rng.UniformIndex(9); i < n; ++i) {
      const std::string id = std::to_string(rng.UniformIndex(frames));
      dets[id].objects.push_back(
          MakeDetection("Pedestrian", IntBox(rng, 16), (1 + rng.UniformIndex(8)) / 8.0));
    }
    PrOptions options;
    options.iou_threshold = 0.1 + 0.8 * rng.UniformDouble();
    const auto ap = AveragePrecision(ComputePrCurve(dets, gts, "Pedestrian", options));
    const double oracle =
        testing::BruteForceAp(dets, gts, "Pedestrian", options.iou_threshold);
    if (oracle < 0) {
      if (ap) o.Fail("trial " + std::to_string(trial) + ": AP defined without ground truth");
      continue;
    }
    if (!ap) {
      o.Fail("trial " + std::to_string(trial) + ": AP undefined");
      continue;
    }
    worst = std::max(worst, std::abs(*ap - oracle));
  }
  const double secs = Seconds(start);
  if (worst > 1e-9) o.Fail("max |AP - oracle| = " + std::to_string(worst));
  if (secs >= 5.0) o.Fail("runtime " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = "200 instances, max |AP - oracle| = " + Short(worst) + ", " + Short(secs) + " s";
  }
  return o;
}

Outcome IouProperties() {
  Outcome o;
  Rng rng(1000);
  for (int i = 0; i < 1000 && o.pass; ++i) {
    const BoundingBox a = IntBox(rng, 60);
    const BoundingBox b = IntBox(rng, 60);
    const double ab = Iou(a, b);
    if (ab != Iou(b, a)) o.Fail("asymmetric at pair " + std::to_string(i));
    if (ab < 0.0 || ab > 1.0) o.Fail("out of bounds at pair " + std::to_string(i));
    if (Iou(a, a) != 1.0) o.Fail("identity fails at pair " + std::to_string(i));
    if (ab != testing::PixelGridIou(a, b)) {
      o.Fail("pixel-grid mismatch at pair " + std::to_string(i));
    }
  }
  if (o.pass) o.detail = "1000 integer box pairs";
  return o;
}

Outcome SplitReconstructRoundTrip() {
  Outcome o;
  Rng rng(31);
  for (int i = 0; i < 1000 && o.pass; ++i) {
    const BoundingBox b = IntBox(rng, 400);
    const BoundingBox up = SplitBox(b, BodyPart::kUpper);
    const BoundingBox lo = SplitBox(b, BodyPart::kLower);
    if (up.Area() + lo.Area() != b.Area()) o.Fail("area partition at box " + std::to_string(i));
    if (ReconstructFull(up, lo) != b) o.Fail("reconstruction at box " + std::to_string(i));
  }
  // Real-valued boxes still reconstruct bit-exactly.
  for (int i = 0; i < 1000 && o.pass; ++i) {
    const double l = rng.Uniform(-50, 1200);
    const double t = rng.Uniform(-50, 350);
    const BoundingBox b{l, t, l + rng.Uniform(0.01, 200), t + rng.Uniform(0.01, 200)};
    if (ReconstructFull(SplitBox(b, BodyPart::kUpper), SplitBox(b, BodyPart::kLower)) != b) {
      o.Fail("real-valued reconstruction at box " + std::to_string(i));
    }
  }

  const LabelSet gts = ReadLabelDir(kData / "labels");
  std::size_t pedestrians = 0;
  double worst = 1.0;
  for (const auto& [id, frame] : gts) {
    std::vector<Detection> up, lo;
    for (const auto& obj : frame.objects) {
      if (obj.class_name != "Pedestrian") continue;
      up.push_back(MakeDetection("Pedestrian", SplitBox(obj.bbox, BodyPart::kUpper), 0.9));
      lo.push_back(MakeDetection("Pedestrian", SplitBox(obj.bbox, BodyPart::kLower), 0.9));
    }
    const auto hyps = CascadeDecide({}, up, lo, {});
    for (const auto& obj : frame.objects) {
      if (obj.class_name != "Pedestrian") continue;
      ++pedestrians;
      double best = 0.0;
      for (const auto& h : hyps) best = std::max(best, Iou(h.bbox, obj.bbox));
      worst = std::min(worst, best);
      if (best < 0.99) o.Fail("frame " + id + ": cascade IoU " + std::to_string(best));
    }
  }
  if (o.pass) {
    o.detail = "2000 boxes; cascade min IoU " + std::to_string(worst) + " over " +
               std::to_string(pedestrians) + " pedestrians in " +
               std::to_string(gts.size()) + " frames";
  }
  return o;
}

Outcome OcclusionPixelAudit() {
  Outcome o;
  const LabelSet labels = ReadLabelDir(kData / "labels");
  const auto ids = BundledIds();
  OverlaySpec box;
  box.kind = OcclusionKind::kBox;
  box.texture = ReadPng(kAssets / "box.png");
  OverlaySpec wall;
  wall.kind = OcclusionKind::kWall;
  wall.texture = ReadPng(kAssets / "wall.png");
  wall.width_factor = 2.0;
  std::size_t changed = 0;
  for (std::size_t f = 0; f < 10 && f < ids.size(); ++f) {
    const Image clean = ReadPng(kData / "images" / (ids[f] + ".png"));
    for (const OverlaySpec* spec : {&box, &wall}) {
      const Image out = OccludeFrame(clean, labels.at(ids[f]), *spec);
      const auto rects = OccluderRects(labels.at(ids[f]), *spec, clean.size());
      for (int y = 0; y < clean.height(); ++y) {
        for (int x = 0; x < clean.width(); ++x) {
          bool inside = false;
          for (const auto& r : rects) inside = inside || r.Contains(x, y);
          if (inside) {
            changed += out.at(x, y) != clean.at(x, y);
          } else if (out.at(x, y) != clean.at(x, y)) {
            o.Fail("frame " + ids[f] + ": pixel changed outside occluder");
          }
        }
      }
    }
  }
  if (changed == 0) o.Fail("no pixel changed inside any occluder");

  const Image canvas(200, 200, {3, 4, 5});
  for (int k : {1, 2, 3}) {
    const int w = box.texture.width() * k;
    const int h = box.texture.height() * k;
    const Image out = Composite(canvas, {10, 20, 10.0 + w, 20.0 + h}, box.texture,
                                ResizeFilter::kNearest);
    const Image expected = testing::ReplicateTexels(box.texture, k, k);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (out.at(10 + x, 20 + y) != expected.at(x, y)) {
          o.Fail("nearest composite differs at scale " + std::to_string(k));
        }
      }
    }
  }
  if (o.pass) {
    o.detail = "10 frames x {box, wall}, " + std::to_string(changed) +
               " occluded pixels; nearest scale 1-3 exact";
  }
  return o;
}

Outcome GrayscaleInvariants() {
  Outcome o;
  if (Luma({100, 150, 200}) != 141) o.Fail("(100,150,200) -> " + std::to_string(Luma({100, 150, 200})));
  const auto ids = BundledIds();
  for (const auto& id : ids) {
    const Image g = ToGrayscale(ReadPng(kData / "images" / (id + ".png")));
    for (int y = 0; y < g.height(); ++y) {
      for (int x = 0; x < g.width(); ++x) {
        const Rgb c = g.at(x, y);
        if (c.r != c.g || c.g != c.b) o.Fail("frame " + id + ": channels differ");
      }
    }
    if (ToGrayscale(g) != g) o.Fail("frame " + id + ": not idempotent");
  }
  if (o.pass) o.detail = std::to_string(ids.size()) + " images; (100,150,200) -> 141";
  return o;
}

Outcome StatisticsFixture() {
  Outcome o;
  ConfidenceSeries s;
  s.model_tags = {"baseline", "variant"};
  for (int i = 0; i < 12; ++i) {
    s.frames.push_back("f" + std::to_string(i));
    s.values["baseline"].push_back(i == 5 ? 0.9 : 0.8);
    s.values["variant"].push_back(i == 5 ? 0.3 : 0.7);
  }
  const auto stats = ComputeDiffStats(s, "baseline", "variant");
  if (!stats) {
    o.Fail("stats undefined");
    return o;
  }
  // One decrease of 0.6 and eleven of 0.1.
  const double expected_mean = (0.6 + 11 * 0.1) / 12;
  if (std::abs(stats->frac_lost - 1.0 / 12) > 1e-12) {
    o.Fail("frac_lost " + std::to_string(stats->frac_lost));
  }
  if (std::abs(stats->mean_decrease - expected_mean) > 1e-12) {
    o.Fail("mean_decrease " + std::to_string(stats->mean_decrease));
  }
  if (o.pass) {
    o.detail = "frac_lost " + std::to_string(stats->frac_lost) + " (8.3%), mean_decrease " +
               std::to_string(stats->mean_decrease);
  }
  return o;
}

Outcome EndToEndDeterminism() {
  Outcome o;
  PipelineConfig config;
  config.dataset_root = kData;
  config.box_texture = kAssets / "box.png";
  config.wall_texture = kAssets / "wall.png";
  config.output_dir = fs::temp_directory_path() / "occlbench_acceptance_run";
  fs::remove_all(config.output_dir);

  const auto start = Clock::now();
  const PipelineResult first = RunPipeline(config);
  const double secs = Seconds(start);
  const std::string manifest = ReadTextFile(config.output_dir / "manifest.txt");
  RunPipeline(config);
  const std::string again = ReadTextFile(config.output_dir / "manifest.txt");

  if (secs >= 10.0) o.Fail("runtime " + std::to_string(secs) + " s");
  if (manifest != again) o.Fail("rerun manifest differs");
  if (BuildManifest(config.output_dir) != manifest) o.Fail("manifest does not match files");
  if (first.artifacts.size() < 100) {
    o.Fail("only " + std::to_string(first.artifacts.size()) + " artifacts");
  }
  if (o.pass) {
    o.detail = std::to_string(first.artifacts.size()) + " artifacts, " +
               Short(secs) + " s, rerun byte-identical";
  }
  return o;
}

Outcome PerfectDetector() {
  Outcome o;
  const LabelSet gts = ReadLabelDir(kData / "labels");
  DetectionSet replay;
  for (const auto& [id, frame] : gts) replay[id] = ReplayAsDetections(frame);
  const EvalReport report = Evaluate(replay, gts, {});
  if (report.map != 1.0) o.Fail("mAP " + (report.map ? std::to_string(*report.map) : "undefined"));
  const ConfidenceSeries series = BuildSeries({{"full", replay}}, gts, {});
  for (double v : series.Column("full")) {
    if (v != 1.0) o.Fail("frame confidence " + std::to_string(v));
  }
  if (o.pass) {
    o.detail = "mAP 1.0 over " + std::to_string(report.per_class.size()) +
               " classes; " + std::to_string(series.frames.size()) +
               " frame confidences 1.0";
  }
  return o;
}

int Run() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"ap_oracle_equivalence", ApOracleEquivalence},
      {"iou_property_suite", IouProperties},
      {"split_reconstruct_round_trip", SplitReconstructRoundTrip},
      {"occlusion_pixel_audit", OcclusionPixelAudit},
      {"grayscale_invariants", GrayscaleInvariants},
      {"statistics_fixture", StatisticsFixture},
      {"end_to_end_determinism", EndToEndDeterminism},
      {"perfect_detector_sanity", PerfectDetector},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.Fail(std::string("exception: ") + e.what());
    }
    failures += !outcome.pass;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace occlbench

int main() { return occlbench::Run(); }

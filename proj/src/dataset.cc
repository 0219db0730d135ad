/*
 * Copyright 2026 The semsynth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "semsynth/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "semsynth/errors.h"
#include "semsynth/kernels.h"
#include "semsynth/manifest.h"
#include "semsynth/overlay.h"
#include "semsynth/png_io.h"

namespace semsynth {
namespace {

// Seeds the split shuffle; distinct from any per-image seed stream.
constexpr std::uint64_t kSplitSalt = 0x5b11735eed5a17ULL;

int Draw(Xoshiro256& rng, const IntRange& r) {
  return static_cast<int>(rng.UniformInt(r.lo, r.hi));
}

void CheckIntRange(const IntRange& r, int lo, int hi, const char* name) {
  if (r.lo > r.hi || r.lo < lo || r.hi > hi) {
    throw ConfigError(std::string("sampler range ") + name + " is invalid");
  }
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

void ImageSampler::Validate() const {
  if (width_px <= 0 || height_px <= 0) {
    throw ConfigError("image dimensions must be positive");
  }
  CheckIntRange(line_width_px, 1, width_px, "line_width_px");
  CheckIntRange(pitch_px, 2, width_px, "pitch_px");
  CheckIntRange(grey_lo, 0, 255, "grey_lo");
  CheckIntRange(grey_hi, 0, 255, "grey_hi");
  CheckIntRange(dark_lo, 0, 255, "dark_lo");
  CheckIntRange(dark_hi, 0, 255, "dark_hi");
  CheckIntRange(edge_lo, 0, 255, "edge_lo");
  CheckIntRange(edge_hi, 0, 255, "edge_hi");
  if (edge_width_px < 0) throw ConfigError("edge_width_px must be >= 0");
  if (!(pitch_ratio_min > 0 && pitch_ratio_min <= pitch_ratio_max)) {
    throw ConfigError("pitch ratio window is invalid");
  }
  if (grey_lo.hi > grey_hi.lo || dark_lo.hi > dark_hi.lo ||
      edge_lo.hi > edge_hi.lo) {
    throw ConfigError("sampled intensity range bounds may cross");
  }
  if (grey_lo.lo <= dark_hi.hi) {
    throw ConfigError("sampled grey range may overlap the dark range");
  }
}

ImageConfig SampleImageConfig(const ImageSampler& s, Xoshiro256& rng) {
  ImageConfig cfg;
  cfg.width_px = s.width_px;
  cfg.height_px = s.height_px;
  cfg.edge_width_px = s.edge_width_px;
  cfg.grey_width_px = Draw(rng, s.line_width_px);

  const int line = cfg.grey_width_px;
  int pitch_lo = std::max(
      s.pitch_px.lo, static_cast<int>(std::ceil(s.pitch_ratio_min * line - 1e-9)));
  pitch_lo = std::max(pitch_lo, line + 2 * s.edge_width_px + 1);
  const int pitch_hi = std::min(
      s.pitch_px.hi, static_cast<int>(std::floor(s.pitch_ratio_max * line + 1e-9)));
  if (pitch_lo > pitch_hi) {
    throw ConfigError("no pitch in range for line width " + std::to_string(line));
  }
  const int pitch = Draw(rng, {pitch_lo, pitch_hi});
  cfg.dark_width_px = pitch - line - 2 * s.edge_width_px;

  cfg.grey_range = {Draw(rng, s.grey_lo), Draw(rng, s.grey_hi)};
  cfg.dark_range = {Draw(rng, s.dark_lo), Draw(rng, s.dark_hi)};
  cfg.edge_range = {Draw(rng, s.edge_lo), Draw(rng, s.edge_hi)};
  return cfg;
}

std::string_view SplitName(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kVal:
      return "val";
    case Split::kTest:
      break;
  }
  return "test";
}

Split ParseSplit(std::string_view name) {
  for (Split s : kSplits) {
    if (SplitName(s) == name) return s;
  }
  throw ConfigError("unknown split '" + std::string(name) + "'");
}

void DatasetConfig::Validate() const {
  if (n_images < 1) throw ConfigError("n_images must be >= 1");
  if (n_defects_max < 1) throw ConfigError("n_defects_max must be >= 1");
  if (splits.train < 0 || splits.val < 0 || splits.test < 0 ||
      std::abs(splits.train + splits.val + splits.test - 1.0) > 1e-9) {
    throw ConfigError("split fractions must be non-negative and sum to 1");
  }
  sampler.Validate();
}

AnnotationRecord ImageRecord::Annotations() const {
  AnnotationRecord rec;
  rec.image_id = image_id;
  rec.filename = image_id + ".png";
  rec.width = config.width_px;
  rec.height = config.height_px;
  for (const auto& d : defects) rec.defects.push_back({d.type, d.bbox});
  return rec;
}

std::uint64_t ImageSeed(std::uint64_t global_seed, std::uint64_t index) {
  return SplitMix64(global_seed ^ index);
}

std::string ImageId(int index, int n_images) {
  const int digits =
      std::max<int>(6, static_cast<int>(std::to_string(std::max(0, n_images - 1)).size()));
  std::string s = std::to_string(index);
  return std::string(digits - std::min<int>(digits, s.size()), '0') + s;
}

std::array<int, 3> SplitCounts(int n_images, const SplitFractions& f) {
  const int train = static_cast<int>(std::llround(n_images * f.train));
  const int val = std::min<int>(static_cast<int>(std::llround(n_images * f.val)),
                                n_images - train);
  return {train, val, n_images - train - val};
}

std::vector<Split> AssignSplits(int n_images, const SplitFractions& f,
                                std::uint64_t global_seed) {
  std::vector<int> order(n_images);
  std::iota(order.begin(), order.end(), 0);
  Xoshiro256 rng(SplitMix64(global_seed ^ kSplitSalt));
  for (int i = n_images - 1; i > 0; --i) {
    std::swap(order[i], order[rng.UniformInt(0, i)]);
  }
  const auto counts = SplitCounts(n_images, f);
  std::vector<Split> splits(n_images);
  int k = 0;
  for (int s = 0; s < 3; ++s) {
    for (int c = 0; c < counts[s]; ++c) splits[order[k++]] = static_cast<Split>(s);
  }
  return splits;
}

namespace {

// Config/defect stream and pixel stream of one image.
struct ImageStreams {
  Xoshiro256 plan;
  Xoshiro256 pixels;
};

ImageStreams StreamsFor(std::uint64_t seed) {
  ImageStreams s{Xoshiro256(seed), Xoshiro256(seed)};
  s.pixels.Jump();
  return s;
}

ImageRecord Plan(const DatasetConfig& cfg, int index, Split split,
                 Xoshiro256& rng) {
  ImageRecord rec;
  rec.index = index;
  rec.image_id = ImageId(index, cfg.n_images);
  rec.split = split;
  rec.seed = ImageSeed(cfg.global_seed, static_cast<std::uint64_t>(index));
  rec.config = SampleImageConfig(cfg.sampler, rng);
  rec.config.seed = rec.seed;
  const LineLayout layout = BuildLayout(rec.config);
  try {
    rec.defects = SampleDefects(rec.config, layout, rng, cfg.n_defects_max);
  } catch (const PlacementError& e) {
    throw PlacementError("image " + rec.image_id + ": " + e.what());
  }
  return rec;
}

}  // namespace

ImageRecord PlanImage(const DatasetConfig& cfg, int index, Split split) {
  auto streams = StreamsFor(ImageSeed(cfg.global_seed, index));
  return Plan(cfg, index, split, streams.plan);
}

GeneratedImage GenerateImage(const DatasetConfig& cfg, int index, Split split) {
  auto streams = StreamsFor(ImageSeed(cfg.global_seed, index));
  GeneratedImage out;
  out.record = Plan(cfg, index, split, streams.plan);
  out.raster = RenderPattern(out.record.config, streams.pixels);
  for (const auto& d : out.record.defects) {
    InjectDefect(out.raster, d, out.record.config, streams.pixels);
  }
  return out;
}

ImagePaths PathsFor(const ImageRecord& rec) {
  const std::filesystem::path split{std::string(SplitName(rec.split))};
  return {
      std::filesystem::path("images") / split / (rec.image_id + ".png"),
      std::filesystem::path("labels_voc") / split / (rec.image_id + ".xml"),
      std::filesystem::path("labels_yolo") / split / (rec.image_id + ".txt"),
      std::filesystem::path("overlays") / split / (rec.image_id + ".png"),
  };
}

void WriteImageFiles(const std::filesystem::path& out_dir,
                     const OutputFormats& formats, const GeneratedImage& img) {
  const ImagePaths p = PathsFor(img.record);
  WriteGreyPng(out_dir / p.image, img.raster);
  const AnnotationRecord ann = img.record.Annotations();
  if (formats.voc) WriteText(out_dir / p.voc, ExportVoc(ann));
  if (formats.yolo) WriteText(out_dir / p.yolo, ExportYolo(ann));
  if (formats.overlay) {
    WriteRgbPng(out_dir / p.overlay, RenderOverlay(img.raster, ann.defects));
  }
}

DatasetManifest GenerateDataset(const DatasetConfig& cfg,
                                const GenerateOptions& opts) {
  cfg.Validate();
  const std::vector<Split> splits =
      AssignSplits(cfg.n_images, cfg.splits, cfg.global_seed);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec) throw IoError("cannot create " + opts.out_dir.string() + ": " + ec.message());
  if (!opts.dry_run) {
    for (Split s : kSplits) {
      const fs::path sub{std::string(SplitName(s))};
      fs::create_directories(opts.out_dir / "images" / sub);
      if (cfg.formats.voc) fs::create_directories(opts.out_dir / "labels_voc" / sub);
      if (cfg.formats.yolo) fs::create_directories(opts.out_dir / "labels_yolo" / sub);
      if (cfg.formats.overlay) fs::create_directories(opts.out_dir / "overlays" / sub);
    }
  }

  ImageTask task = [&](int i) -> ImageRecord {
    if (opts.dry_run) return PlanImage(cfg, i, splits[i]);
    GeneratedImage img = GenerateImage(cfg, i, splits[i]);
    WriteImageFiles(opts.out_dir, cfg.formats, img);
    return std::move(img.record);
  };

  DatasetManifest manifest;
  manifest.config = cfg;
  manifest.images = RunImageTasks(cfg.n_images, opts.workers, task);
  WriteManifest(opts.out_dir / "manifest.json", manifest);
  return manifest;
}

ClassTable CountDefects(const DatasetManifest& m) {
  ClassTable t{};
  for (const auto& img : m.images) {
    for (const auto& d : img.defects) {
      ++t[static_cast<int>(img.split)][ClassId(d.type)];
    }
  }
  return t;
}

}  // namespace semsynth

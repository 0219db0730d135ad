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

#ifndef SEMSYNTH_DATASET_H_
#define SEMSYNTH_DATASET_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semsynth/annotations.h"
#include "semsynth/defects.h"
#include "semsynth/pattern.h"

namespace semsynth {

inline constexpr std::string_view kGeneratorVersion = "semsynth-1.0.0";

struct IntRange {
  int lo = 0;
  int hi = 0;
  bool operator==(const IntRange&) const = default;
};

// Ranges from which each image's ImageConfig is drawn.
struct ImageSampler {
  int width_px = 512;
  int height_px = 512;
  IntRange line_width_px{10, 23};
  IntRange pitch_px{19, 47};
  // pitch / line width is kept in this window so lines and spaces stay
  // comparable in width.
  double pitch_ratio_min = 1.8;
  double pitch_ratio_max = 2.2;
  int edge_width_px = 1;
  IntRange grey_lo{110, 125};
  IntRange grey_hi{165, 180};
  IntRange dark_lo{35, 45};
  IntRange dark_hi{80, 90};
  IntRange edge_lo{200, 200};
  IntRange edge_hi{255, 255};

  void Validate() const;
  bool operator==(const ImageSampler&) const = default;
};

ImageConfig SampleImageConfig(const ImageSampler& sampler, Xoshiro256& rng);

enum class Split : std::uint8_t { kTrain = 0, kVal = 1, kTest = 2 };
inline constexpr Split kSplits[] = {Split::kTrain, Split::kVal, Split::kTest};
std::string_view SplitName(Split s);
Split ParseSplit(std::string_view name);

struct SplitFractions {
  double train = 0.70;
  double val = 0.20;
  double test = 0.10;
  bool operator==(const SplitFractions&) const = default;
};

struct OutputFormats {
  bool voc = true;
  bool yolo = true;
  bool overlay = false;
  bool operator==(const OutputFormats&) const = default;
};

struct DatasetConfig {
  int n_images = 100;
  ImageSampler sampler;
  int n_defects_max = kDefaultMaxDefects;
  SplitFractions splits;
  std::uint64_t global_seed = 0;
  OutputFormats formats;

  void Validate() const;
  bool operator==(const DatasetConfig&) const = default;
};

// Everything recorded about one image.
struct ImageRecord {
  int index = 0;
  std::string image_id;
  Split split = Split::kTrain;
  std::uint64_t seed = 0;
  ImageConfig config;
  std::vector<DefectSpec> defects;

  AnnotationRecord Annotations() const;
  bool operator==(const ImageRecord&) const = default;
};

struct DatasetManifest {
  std::string generator_version{kGeneratorVersion};
  DatasetConfig config;
  std::vector<ImageRecord> images;

  bool operator==(const DatasetManifest&) const = default;
};

// SplitMix64(global_seed ^ index).
std::uint64_t ImageSeed(std::uint64_t global_seed, std::uint64_t index);

// Zero-padded decimal index, at least 6 digits.
std::string ImageId(int index, int n_images);

// {train, val, test} image counts. Rounded to nearest for train and val;
// test takes the remainder.
std::array<int, 3> SplitCounts(int n_images, const SplitFractions& f);

// Seeded Fisher-Yates shuffle of image indices, cut by SplitCounts.
std::vector<Split> AssignSplits(int n_images, const SplitFractions& f,
                                std::uint64_t global_seed);

// Draws config and defects for one image without rendering pixels. The
// image's generator is split into two substreams (see Jump()): the first
// drives config and defect sampling, the second pixel noise.
ImageRecord PlanImage(const DatasetConfig& cfg, int index, Split split);

struct GeneratedImage {
  ImageRecord record;
  Raster raster;
};

GeneratedImage GenerateImage(const DatasetConfig& cfg, int index, Split split);

struct GenerateOptions {
  std::filesystem::path out_dir;
  int workers = 0;       // 0: OpenMP default
  bool dry_run = false;  // manifest only
};

// Writes images, labels and manifest.json under opts.out_dir. Output is
// identical for every worker count.
DatasetManifest GenerateDataset(const DatasetConfig& cfg,
                                const GenerateOptions& opts);

// Writes the per-image files of one generated image.
void WriteImageFiles(const std::filesystem::path& out_dir,
                     const OutputFormats& formats, const GeneratedImage& img);

// Relative paths of the files one image produces.
struct ImagePaths {
  std::filesystem::path image;
  std::filesystem::path voc;
  std::filesystem::path yolo;
  std::filesystem::path overlay;
};
ImagePaths PathsFor(const ImageRecord& rec);

// Defect counts [split][class], the shape of a per-split class table.
using ClassTable = std::array<std::array<long long, 2>, 3>;
ClassTable CountDefects(const DatasetManifest& m);

}  // namespace semsynth

#endif  // SEMSYNTH_DATASET_H_

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

#ifndef SEMSYNTH_DEFECTS_H_
#define SEMSYNTH_DEFECTS_H_

#include <optional>
#include <string_view>
#include <vector>

#include "semsynth/pattern.h"
#include "semsynth/rng.h"

namespace semsynth {

enum class DefectType { kBreak = 0, kBridge = 1 };

inline constexpr DefectType kDefectTypes[] = {DefectType::kBreak,
                                               DefectType::kBridge};

// "break" / "bridge"; also the YOLO class ids 0 / 1.
std::string_view DefectTypeName(DefectType t);
std::optional<DefectType> ParseDefectType(std::string_view name);
inline int ClassId(DefectType t) { return static_cast<int>(t); }

// Axis-aligned pixel box, half-open: [xmin, xmax) x [ymin, ymax).
struct BBox {
  int xmin = 0;
  int ymin = 0;
  int xmax = 0;
  int ymax = 0;

  int width() const { return xmax - xmin; }
  int height() const { return ymax - ymin; }
  long long area() const {
    return static_cast<long long>(width()) * height();
  }
  bool Valid() const { return xmin < xmax && ymin < ymax; }
  bool InsideImage(int w, int h) const {
    return Valid() && xmin >= 0 && ymin >= 0 && xmax <= w && ymax <= h;
  }
  bool Intersects(const BBox& o) const {
    return xmin < o.xmax && o.xmin < xmax && ymin < o.ymax && o.ymin < ymax;
  }
  bool operator==(const BBox&) const = default;
};

// Sizes are drawn from the grid {0.1, 0.2, ..., 2.0} times the line width.
inline constexpr int kSizeGridSteps = 20;

struct DefectSpec {
  DefectType type = DefectType::kBreak;
  int size_step = 1;       // norm_size = size_step / 10
  int size_px = 1;         // extent along y
  double norm_size = 0.1;  // sampled grid value
  int host_interval = 0;   // index into LineLayout::intervals
  int y_top = 0;
  BBox bbox;

  bool operator==(const DefectSpec&) const = default;
};

// round-half-up(step/10 * line_width), at least 1 px. Integer arithmetic so
// 0.5 ties are exact.
int SizePxForStep(int size_step, int line_width_px);

// Rectangle a defect of `type` hosted by `host_interval` occupies. Break
// boxes include the line's edge columns; Bridge boxes span the dark gap.
BBox DefectBox(const LineLayout& layout, DefectType type, int host_interval,
               int y_top, int size_px);

// Indices of intervals that can host `type`.
std::vector<int> FeasibleHosts(const LineLayout& layout, DefectType type);

inline constexpr int kDefaultMaxDefects = 5;
inline constexpr int kPlacementRetries = 100;

// Count ~ U{1..n_defects_max}, type ~ U{Break, Bridge}, size step ~ U{1..20},
// host and row uniform over feasible placements. Boxes never overlap; a
// placement is redrawn up to kPlacementRetries times before PlacementError.
std::vector<DefectSpec> SampleDefects(const ImageConfig& cfg,
                                      const LineLayout& layout,
                                      Xoshiro256& rng,
                                      int n_defects_max = kDefaultMaxDefects);

// Overwrites spec.bbox: Break with dark_range samples, Bridge with
// grey_range samples. Pixels outside the box are untouched.
void InjectDefect(Raster& raster, const DefectSpec& spec,
                  const ImageConfig& cfg, Xoshiro256& rng);

// size_px / line width.
double NormalizedSize(const DefectSpec& spec, const ImageConfig& cfg);

}  // namespace semsynth

#endif  // SEMSYNTH_DEFECTS_H_

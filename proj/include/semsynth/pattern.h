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

#ifndef SEMSYNTH_PATTERN_H_
#define SEMSYNTH_PATTERN_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "semsynth/rng.h"

namespace semsynth {

// Inclusive 8-bit intensity bounds.
struct IntensityRange {
  int lo = 0;
  int hi = 0;

  bool Contains(int v) const { return v >= lo && v <= hi; }
  bool operator==(const IntensityRange&) const = default;
};

// Everything needed to render one defect-free line-space image.
struct ImageConfig {
  int width_px = 512;
  int height_px = 512;
  int grey_width_px = 14;  // photoresist line
  int dark_width_px = 14;  // space
  int edge_width_px = 1;   // bright boundary on each side of a line
  IntensityRange grey_range{115, 175};
  IntensityRange dark_range{40, 85};
  IntensityRange edge_range{200, 255};
  std::uint64_t seed = 0;

  int pitch_px() const {
    return grey_width_px + dark_width_px + 2 * edge_width_px;
  }

  // Throws ConfigError on any violated invariant.
  void Validate() const;

  bool operator==(const ImageConfig&) const = default;
};

enum class Region : std::uint8_t { kGrey, kDark, kEdge };

std::string_view RegionName(Region r);

// Half-open column interval [begin, end).
struct Interval {
  int begin = 0;
  int end = 0;
  Region region = Region::kGrey;
  // True when the right image border cut this interval short.
  bool truncated = false;

  int width() const { return end - begin; }
  bool operator==(const Interval&) const = default;
};

// Tiling of [0, width) by edge, grey, edge, dark, ... intervals.
struct LineLayout {
  int width_px = 0;
  int period_count = 0;  // full periods only
  std::vector<Interval> intervals;

  // Region of every column, for rendering.
  std::vector<Region> ColumnRegions() const;
};

LineLayout BuildLayout(const ImageConfig& cfg);

// Owned 8-bit greyscale image, row-major.
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[Index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[Index(x, y)]; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }
  std::span<const std::uint8_t> row(int y) const {
    return std::span<const std::uint8_t>(pixels_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }

  const LineLayout& layout() const { return layout_; }
  void set_layout(LineLayout layout) { layout_ = std::move(layout); }

  bool operator==(const Raster& o) const {
    return width_ == o.width_ && height_ == o.height_ && pixels_ == o.pixels_;
  }

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
  LineLayout layout_;
};

// Draws every pixel independently and uniformly from the range of its
// column's region, row by row, left to right.
Raster RenderPattern(const ImageConfig& cfg, Xoshiro256& rng);

// FNV-1a 64 over the pixel bytes.
std::uint64_t PixelDigest(const Raster& raster);

}  // namespace semsynth

#endif  // SEMSYNTH_PATTERN_H_

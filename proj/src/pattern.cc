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

#include "semsynth/pattern.h"

#include <algorithm>
#include <string>
#include <utility>

#include "semsynth/errors.h"

namespace semsynth {
namespace {

void CheckRange(const IntensityRange& r, const char* name) {
  if (r.lo < 0 || r.hi > 255 || r.lo > r.hi) {
    throw ConfigError(std::string(name) + " range must satisfy 0 <= lo <= hi <= 255, got [" +
                      std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
}

const IntensityRange& RangeFor(const ImageConfig& cfg, Region r) {
  switch (r) {
    case Region::kGrey:
      return cfg.grey_range;
    case Region::kDark:
      return cfg.dark_range;
    case Region::kEdge:
      break;
  }
  return cfg.edge_range;
}

}  // namespace

std::string_view RegionName(Region r) {
  switch (r) {
    case Region::kGrey:
      return "grey";
    case Region::kDark:
      return "dark";
    case Region::kEdge:
      return "edge";
  }
  return "?";
}

void ImageConfig::Validate() const {
  if (width_px <= 0 || height_px <= 0) {
    throw ConfigError("image dimensions must be positive");
  }
  if (grey_width_px <= 0 || dark_width_px <= 0 || edge_width_px < 0) {
    throw ConfigError("grey/dark widths must be positive and edge width non-negative");
  }
  CheckRange(grey_range, "grey");
  CheckRange(dark_range, "dark");
  CheckRange(edge_range, "edge");
  if (grey_range.lo <= dark_range.hi) {
    throw ConfigError("grey_range.lo must exceed dark_range.hi");
  }
}

std::vector<Region> LineLayout::ColumnRegions() const {
  std::vector<Region> cols(width_px, Region::kDark);
  for (const auto& iv : intervals) {
    for (int x = iv.begin; x < iv.end; ++x) cols[x] = iv.region;
  }
  return cols;
}

LineLayout BuildLayout(const ImageConfig& cfg) {
  cfg.Validate();
  const int pitch = cfg.pitch_px();
  if (pitch > cfg.width_px) {
    throw ConfigError("pitch " + std::to_string(pitch) + " exceeds image width " +
                      std::to_string(cfg.width_px));
  }
  LineLayout layout;
  layout.width_px = cfg.width_px;
  layout.period_count = cfg.width_px / pitch;

  const std::pair<Region, int> period[] = {
      {Region::kEdge, cfg.edge_width_px},
      {Region::kGrey, cfg.grey_width_px},
      {Region::kEdge, cfg.edge_width_px},
      {Region::kDark, cfg.dark_width_px},
  };
  int x = 0;
  for (int k = 0; x < cfg.width_px; k = (k + 1) % 4) {
    const auto [region, w] = period[k];
    if (w == 0) continue;
    const int end = std::min(x + w, cfg.width_px);
    layout.intervals.push_back({x, end, region, end - x < w});
    x = end;
  }
  return layout;
}

Raster::Raster(int width, int height, std::uint8_t fill)
    : width_(width),
      height_(height),
      pixels_(static_cast<std::size_t>(width) * height, fill) {}

Raster RenderPattern(const ImageConfig& cfg, Xoshiro256& rng) {
  LineLayout layout = BuildLayout(cfg);
  const std::vector<Region> cols = layout.ColumnRegions();
  std::vector<IntensityRange> col_range(cols.size());
  for (std::size_t x = 0; x < cols.size(); ++x) {
    col_range[x] = RangeFor(cfg, cols[x]);
  }

  Raster raster(cfg.width_px, cfg.height_px);
  auto px = raster.pixels();
  std::size_t i = 0;
  for (int y = 0; y < cfg.height_px; ++y) {
    for (int x = 0; x < cfg.width_px; ++x, ++i) {
      const auto& r = col_range[x];
      px[i] = static_cast<std::uint8_t>(rng.UniformInt(r.lo, r.hi));
    }
  }
  raster.set_layout(std::move(layout));
  return raster;
}

std::uint64_t PixelDigest(const Raster& raster) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : raster.pixels()) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace semsynth

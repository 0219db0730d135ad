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

#include "semsynth/defects.h"

#include <algorithm>
#include <string>

#include "semsynth/errors.h"

namespace semsynth {

std::string_view DefectTypeName(DefectType t) {
  return t == DefectType::kBreak ? "break" : "bridge";
}

std::optional<DefectType> ParseDefectType(std::string_view name) {
  if (name == "break" || name == "Break") return DefectType::kBreak;
  if (name == "bridge" || name == "Bridge") return DefectType::kBridge;
  return std::nullopt;
}

int SizePxForStep(int size_step, int line_width_px) {
  return std::max(1, (size_step * line_width_px + 5) / 10);
}

BBox DefectBox(const LineLayout& layout, DefectType type, int host_interval,
               int y_top, int size_px) {
  const auto& ivs = layout.intervals;
  const Interval& host = ivs.at(host_interval);
  BBox box{host.begin, y_top, host.end, y_top + size_px};
  if (type == DefectType::kBreak) {
    if (host_interval > 0 && ivs[host_interval - 1].region == Region::kEdge) {
      box.xmin = ivs[host_interval - 1].begin;
    }
    if (host_interval + 1 < static_cast<int>(ivs.size()) &&
        ivs[host_interval + 1].region == Region::kEdge) {
      box.xmax = ivs[host_interval + 1].end;
    }
  }
  return box;
}

std::vector<int> FeasibleHosts(const LineLayout& layout, DefectType type) {
  const Region want =
      type == DefectType::kBreak ? Region::kGrey : Region::kDark;
  std::vector<int> hosts;
  const int n = static_cast<int>(layout.intervals.size());
  for (int i = 0; i < n; ++i) {
    const Interval& iv = layout.intervals[i];
    if (iv.region != want || iv.truncated) continue;
    // A bridge must have a line on both sides to connect.
    if (type == DefectType::kBridge && (i == 0 || i + 1 == n)) continue;
    hosts.push_back(i);
  }
  return hosts;
}

std::vector<DefectSpec> SampleDefects(const ImageConfig& cfg,
                                      const LineLayout& layout,
                                      Xoshiro256& rng, int n_defects_max) {
  if (n_defects_max < 1) throw ConfigError("n_defects_max must be >= 1");
  const std::vector<int> hosts[2] = {FeasibleHosts(layout, DefectType::kBreak),
                                     FeasibleHosts(layout, DefectType::kBridge)};
  if (hosts[0].empty() || hosts[1].empty()) {
    throw PlacementError("layout has no feasible grey or dark host interval");
  }

  const int count = static_cast<int>(rng.UniformInt(1, n_defects_max));
  std::vector<DefectSpec> specs;
  specs.reserve(count);
  for (int d = 0; d < count; ++d) {
    DefectSpec spec;
    spec.type = static_cast<DefectType>(rng.UniformInt(0, 1));
    spec.size_step = static_cast<int>(rng.UniformInt(1, kSizeGridSteps));
    spec.norm_size = spec.size_step / 10.0;
    spec.size_px = SizePxForStep(spec.size_step, cfg.grey_width_px);
    if (spec.size_px > cfg.height_px) {
      throw PlacementError("defect of " + std::to_string(spec.size_px) +
                           " px does not fit image height " +
                           std::to_string(cfg.height_px));
    }
    const auto& candidates = hosts[ClassId(spec.type)];
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementRetries && !placed; ++attempt) {
      spec.host_interval = candidates[rng.UniformInt(
          0, static_cast<std::int64_t>(candidates.size()) - 1)];
      spec.y_top =
          static_cast<int>(rng.UniformInt(0, cfg.height_px - spec.size_px));
      spec.bbox = DefectBox(layout, spec.type, spec.host_interval, spec.y_top,
                            spec.size_px);
      placed = std::none_of(specs.begin(), specs.end(), [&](const auto& s) {
        return s.bbox.Intersects(spec.bbox);
      });
    }
    if (!placed) {
      throw PlacementError("no non-overlapping placement after " +
                           std::to_string(kPlacementRetries) + " retries");
    }
    specs.push_back(spec);
  }
  return specs;
}

void InjectDefect(Raster& raster, const DefectSpec& spec,
                  const ImageConfig& cfg, Xoshiro256& rng) {
  const BBox& b = spec.bbox;
  if (!b.InsideImage(raster.width(), raster.height())) {
    throw PlacementError("defect box exceeds image bounds");
  }
  const IntensityRange& fill = spec.type == DefectType::kBreak
                                   ? cfg.dark_range
                                   : cfg.grey_range;
  for (int y = b.ymin; y < b.ymax; ++y) {
    for (int x = b.xmin; x < b.xmax; ++x) {
      raster.at(x, y) = static_cast<std::uint8_t>(rng.UniformInt(fill.lo, fill.hi));
    }
  }
}

double NormalizedSize(const DefectSpec& spec, const ImageConfig& cfg) {
  return static_cast<double>(spec.size_px) / cfg.grey_width_px;
}

}  // namespace semsynth

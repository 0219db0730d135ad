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

#ifndef SEMSYNTH_OVERLAY_H_
#define SEMSYNTH_OVERLAY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semsynth/annotations.h"
#include "semsynth/pattern.h"
#include "semsynth/png_io.h"

namespace semsynth {

using Rgb = std::array<std::uint8_t, 3>;

Rgb ClassColor(DefectType t);

// Grey raster copied into RGB with a 1 px outline drawn per box. Boxes are
// clipped at the image border.
RgbImage RenderOverlay(const Raster& raster, std::span<const Annotation> boxes);

struct ChartSeries {
  std::string name;
  Rgb color{0, 0, 0};
  // y == nullopt leaves a gap in the polyline.
  std::vector<std::pair<double, std::optional<double>>> points;
};

// Axes over [x_min, x_max] x [0, 1] with tick marks every 0.1 in y and
// one polyline per series.
RgbImage RenderLineChart(std::span<const ChartSeries> series, double x_min,
                         double x_max, int width = 640, int height = 400);

}  // namespace semsynth

#endif  // SEMSYNTH_OVERLAY_H_

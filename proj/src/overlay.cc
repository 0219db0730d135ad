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

#include "semsynth/overlay.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace semsynth {
namespace {

void Plot(RgbImage& img, int x, int y, const Rgb& c) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  std::copy(c.begin(), c.end(), img.px(x, y));
}

// Bresenham.
void DrawLine(RgbImage& img, int x0, int y0, int x1, int y1, const Rgb& c) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    Plot(img, x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

}  // namespace

Rgb ClassColor(DefectType t) {
  return t == DefectType::kBreak ? Rgb{255, 0, 0} : Rgb{0, 255, 0};
}

RgbImage RenderOverlay(const Raster& raster,
                       std::span<const Annotation> boxes) {
  RgbImage out(raster.width(), raster.height());
  const auto src = raster.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    out.data[3 * i] = out.data[3 * i + 1] = out.data[3 * i + 2] = src[i];
  }
  for (const auto& a : boxes) {
    const Rgb c = ClassColor(a.type);
    const int x0 = a.bbox.xmin, x1 = a.bbox.xmax - 1;
    const int y0 = a.bbox.ymin, y1 = a.bbox.ymax - 1;
    DrawLine(out, x0, y0, x1, y0, c);
    DrawLine(out, x0, y1, x1, y1, c);
    DrawLine(out, x0, y0, x0, y1, c);
    DrawLine(out, x1, y0, x1, y1, c);
  }
  return out;
}

RgbImage RenderLineChart(std::span<const ChartSeries> series, double x_min,
                         double x_max, int width, int height) {
  RgbImage img(width, height);
  std::fill(img.data.begin(), img.data.end(), std::uint8_t{255});
  const int left = 40, right = width - 20, top = 20, bottom = height - 30;
  const Rgb axis{0, 0, 0};
  const Rgb grid{220, 220, 220};

  auto to_px = [&](double x, double y) {
    const double fx = (x - x_min) / (x_max - x_min);
    return std::pair<int, int>{
        left + static_cast<int>(std::lround(fx * (right - left))),
        bottom - static_cast<int>(std::lround(y * (bottom - top)))};
  };

  for (int k = 0; k <= 10; ++k) {
    const int gy = to_px(x_min, k / 10.0).second;
    DrawLine(img, left + 1, gy, right, gy, k == 0 ? axis : grid);
    DrawLine(img, left - 4, gy, left, gy, axis);
  }
  const int x_ticks = static_cast<int>(std::floor((x_max - x_min) / 0.1 + 1e-9));
  for (int k = 0; k <= x_ticks; ++k) {
    const auto [tx, ty] = to_px(x_min + 0.1 * k, 0.0);
    DrawLine(img, tx, ty, tx, ty + (k % 5 == 0 ? 6 : 3), axis);
  }
  DrawLine(img, left, top, left, bottom, axis);
  DrawLine(img, left, bottom, right, bottom, axis);

  for (const auto& s : series) {
    std::optional<std::pair<int, int>> prev;
    for (const auto& [x, y] : s.points) {
      if (!y) {
        prev.reset();
        continue;
      }
      const auto p = to_px(x, std::clamp(*y, 0.0, 1.0));
      if (prev) DrawLine(img, prev->first, prev->second, p.first, p.second, s.color);
      for (int d = -1; d <= 1; ++d) {
        Plot(img, p.first + d, p.second, s.color);
        Plot(img, p.first, p.second + d, s.color);
      }
      prev = p;
    }
  }
  return img;
}

}  // namespace semsynth

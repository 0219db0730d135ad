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

#ifndef SEMSYNTH_IMAGE_STATS_H_
#define SEMSYNTH_IMAGE_STATS_H_

#include <optional>
#include <span>

#include "semsynth/kernels.h"
#include "semsynth/pattern.h"

namespace semsynth {

// Mean intensity.
double Brightness(const Raster& raster);
// Population standard deviation of intensities.
double RmsContrast(const Raster& raster);
// 20 log10(mean / std). Throws DegenerateImage when std == 0.
double SnrDb(const Raster& raster);

// Same statistics from an intensity histogram (e.g. pooled over a corpus).
double HistogramMean(const Histogram& h);
double HistogramStdDev(const Histogram& h);
double HistogramSnrDb(const Histogram& h);

struct LayoutEstimate {
  double line_width_px = 0.0;
  double pitch_px = 0.0;
};

// Estimates line width and pitch from the column-mean profile. Columns are
// split into space and line(+edge) classes by Otsu's threshold; bright edge
// columns at each line's borders are excluded from the line width. Pitch is
// the mean spacing of line starts. Throws LayoutNotFound when fewer than two
// complete lines are visible or the profile has no contrast.
LayoutEstimate MeasureLayout(const Raster& raster);

struct StatsReport {
  double brightness = 0.0;
  double rms_contrast = 0.0;
  std::optional<double> snr_db;       // unset for a constant image
  std::optional<LayoutEstimate> layout;
};

StatsReport ComputeStats(const Raster& raster);

}  // namespace semsynth

#endif  // SEMSYNTH_IMAGE_STATS_H_

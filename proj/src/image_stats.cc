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

#include "semsynth/image_stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "semsynth/errors.h"

namespace semsynth {
namespace {

// Minimum separation, in intensity levels, between the space and line
// column means for a layout to count as found.
constexpr double kMinClassGap = 10.0;
constexpr double kMinEdgeGap = 10.0;

double SnrFrom(double mean, double sd) {
  if (sd == 0.0) throw DegenerateImage("image has zero contrast; SNR undefined");
  return 20.0 * std::log10(mean / sd);
}

// Otsu threshold over a set of values; returns nullopt when all are equal.
std::optional<double> OtsuThreshold(std::vector<double> v, double* gap) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n < 2 || v.front() == v.back()) return std::nullopt;
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  double best = -1.0, threshold = 0.0, left_sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    left_sum += v[k - 1];
    if (v[k] == v[k - 1]) continue;
    const double w0 = static_cast<double>(k) / n;
    const double m0 = left_sum / k;
    const double m1 = (total - left_sum) / (n - k);
    const double between = w0 * (1.0 - w0) * (m1 - m0) * (m1 - m0);
    if (between > best) {
      best = between;
      threshold = 0.5 * (v[k - 1] + v[k]);
      *gap = m1 - m0;
    }
  }
  return threshold;
}

}  // namespace

double HistogramMean(const Histogram& h) {
  std::uint64_t n = 0, sum = 0;
  for (int v = 0; v < 256; ++v) {
    n += h[v];
    sum += h[v] * static_cast<std::uint64_t>(v);
  }
  return n ? static_cast<double>(sum) / n : 0.0;
}

double HistogramStdDev(const Histogram& h) {
  long double n = 0, sum = 0, sq = 0;
  for (int v = 0; v < 256; ++v) {
    n += h[v];
    sum += static_cast<long double>(h[v]) * v;
    sq += static_cast<long double>(h[v]) * v * v;
  }
  if (n == 0) return 0.0;
  const long double mean = sum / n;
  const long double var = sq / n - mean * mean;
  return var > 0 ? static_cast<double>(std::sqrt(var)) : 0.0;
}

double HistogramSnrDb(const Histogram& h) {
  return SnrFrom(HistogramMean(h), HistogramStdDev(h));
}

double Brightness(const Raster& raster) {
  return HistogramMean(IntensityHistogram(raster));
}

double RmsContrast(const Raster& raster) {
  return HistogramStdDev(IntensityHistogram(raster));
}

double SnrDb(const Raster& raster) {
  return HistogramSnrDb(IntensityHistogram(raster));
}

LayoutEstimate MeasureLayout(const Raster& raster) {
  if (raster.empty()) throw LayoutNotFound("empty image");
  const auto sums = ColumnSums(raster);
  std::vector<double> profile(sums.size());
  for (std::size_t x = 0; x < sums.size(); ++x) {
    profile[x] = static_cast<double>(sums[x]) / raster.height();
  }

  double gap = 0.0;
  const auto threshold = OtsuThreshold(profile, &gap);
  if (!threshold || gap < kMinClassGap) {
    throw LayoutNotFound("column profile shows no line/space contrast");
  }

  struct Run {
    int begin;
    int end;
  };
  std::vector<Run> runs;
  const int w = static_cast<int>(profile.size());
  for (int x = 0; x < w;) {
    if (profile[x] <= *threshold) {
      ++x;
      continue;
    }
    const int begin = x;
    while (x < w && profile[x] > *threshold) ++x;
    // Runs cut by the border have unknown extent.
    if (begin > 0 && x < w) runs.push_back({begin, x});
  }
  if (runs.size() < 2) {
    throw LayoutNotFound("fewer than two complete lines in the image");
  }

  double width_sum = 0.0;
  for (const Run& r : runs) {
    std::vector<double> vals(profile.begin() + r.begin, profile.begin() + r.end);
    std::vector<double> sorted = vals;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double peak = *std::max_element(vals.begin(), vals.end());
    int edge_cols = 0;
    if (peak - median >= kMinEdgeGap) {
      const double edge_threshold = median + 0.5 * (peak - median);
      for (int x = r.begin; x < r.end && profile[x] > edge_threshold; ++x) ++edge_cols;
      for (int x = r.end - 1; x >= r.begin && profile[x] > edge_threshold; --x) ++edge_cols;
      edge_cols = std::min(edge_cols, r.end - r.begin - 1);
    }
    width_sum += (r.end - r.begin) - edge_cols;
  }

  LayoutEstimate est;
  est.line_width_px = width_sum / runs.size();
  est.pitch_px = static_cast<double>(runs.back().begin - runs.front().begin) /
                 (runs.size() - 1);
  return est;
}

StatsReport ComputeStats(const Raster& raster) {
  const Histogram h = IntensityHistogram(raster);
  StatsReport r;
  r.brightness = HistogramMean(h);
  r.rms_contrast = HistogramStdDev(h);
  if (r.rms_contrast > 0) r.snr_db = SnrFrom(r.brightness, r.rms_contrast);
  try {
    r.layout = MeasureLayout(raster);
  } catch (const LayoutNotFound&) {
  }
  return r;
}

}  // namespace semsynth

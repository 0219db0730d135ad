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

#include <omp.h>

#include <algorithm>
#include <exception>

#include "semsynth/kernels.h"

namespace semsynth {
namespace {

int ThreadCount(int workers) {
  return workers > 0 ? workers : omp_get_max_threads();
}

}  // namespace

std::vector<ImageRecord> RunImageTasks(int n, int workers,
                                       const ImageTask& task) {
  std::vector<ImageRecord> out(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(ThreadCount(workers))
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = task(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Histogram IntensityHistogram(const Raster& raster) {
  std::uint64_t h[256] = {};
  const auto px = raster.pixels();
  const std::int64_t n = static_cast<std::int64_t>(px.size());
  const std::uint8_t* data = px.data();
#pragma omp parallel for reduction(+ : h[:256])
  for (std::int64_t i = 0; i < n; ++i) ++h[data[i]];
  Histogram out;
  std::copy(std::begin(h), std::end(h), out.begin());
  return out;
}

std::vector<std::uint64_t> ColumnSums(const Raster& raster) {
  const int w = raster.width();
  std::vector<std::uint64_t> sums(w, 0);
  std::uint64_t* s = sums.data();
  const std::uint8_t* data = raster.pixels().data();
#pragma omp parallel for reduction(+ : s[:w])
  for (int y = 0; y < raster.height(); ++y) {
    const std::uint8_t* row = data + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) s[x] += row[x];
  }
  return sums;
}

std::vector<std::vector<int>> MatchGroups(
    std::span<const MatchGroup> groups,
    std::span<const PredictionRecord> preds,
    std::span<const TruthRecord> truths, double iou_threshold) {
  std::vector<std::vector<int>> out(groups.size());
  const std::int64_t n = static_cast<std::int64_t>(groups.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t g = 0; g < n; ++g) {
    out[g] = MatchOneGroup(groups[g], preds, truths, iou_threshold);
  }
  return out;
}

}  // namespace semsynth

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

#include "semsynth/kernels.h"

namespace semsynth::reference {

std::vector<ImageRecord> RunImageTasks(int n, const ImageTask& task) {
  std::vector<ImageRecord> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(task(i));
  return out;
}

Histogram IntensityHistogram(const Raster& raster) {
  Histogram h{};
  for (std::uint8_t v : raster.pixels()) ++h[v];
  return h;
}

std::vector<std::uint64_t> ColumnSums(const Raster& raster) {
  std::vector<std::uint64_t> sums(raster.width(), 0);
  for (int y = 0; y < raster.height(); ++y) {
    const auto row = raster.row(y);
    for (int x = 0; x < raster.width(); ++x) sums[x] += row[x];
  }
  return sums;
}

std::vector<std::vector<int>> MatchGroups(
    std::span<const MatchGroup> groups,
    std::span<const PredictionRecord> preds,
    std::span<const TruthRecord> truths, double iou_threshold) {
  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    out.push_back(MatchOneGroup(g, preds, truths, iou_threshold));
  }
  return out;
}

MatchLedger Match(std::span<const PredictionRecord> preds,
                  std::span<const TruthRecord> truths, const EvalConfig& cfg) {
  cfg.Validate();
  const auto groups = GroupByImageAndClass(preds, truths);
  return LedgerFromGroups(groups,
                          reference::MatchGroups(groups, preds, truths, cfg.iou_threshold),
                          preds.size(), truths.size());
}

}  // namespace semsynth::reference

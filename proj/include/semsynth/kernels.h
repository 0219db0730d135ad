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

#ifndef SEMSYNTH_KERNELS_H_
#define SEMSYNTH_KERNELS_H_

// Data-parallel loops of the pipeline. Each OpenMP kernel has a serial twin
// in namespace reference with the same contract; tests assert identical
// results and bench/ compares their speed.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "semsynth/dataset.h"
#include "semsynth/detect_eval.h"
#include "semsynth/pattern.h"

namespace semsynth {

using Histogram = std::array<std::uint64_t, 256>;

using ImageTask = std::function<ImageRecord(int index)>;

// Runs task(i) for i in [0, n). Results are ordered by index. If any task
// throws, the exception of the lowest failing index is rethrown after all
// tasks finish. workers <= 0 uses the OpenMP default.
std::vector<ImageRecord> RunImageTasks(int n, int workers, const ImageTask& task);

Histogram IntensityHistogram(const Raster& raster);

// Sum of each column's pixels.
std::vector<std::uint64_t> ColumnSums(const Raster& raster);

// Per group: GreedyMatch result mapped to global truth indices.
std::vector<std::vector<int>> MatchGroups(
    std::span<const MatchGroup> groups,
    std::span<const PredictionRecord> preds,
    std::span<const TruthRecord> truths, double iou_threshold);

namespace reference {

std::vector<ImageRecord> RunImageTasks(int n, const ImageTask& task);
Histogram IntensityHistogram(const Raster& raster);
std::vector<std::uint64_t> ColumnSums(const Raster& raster);
std::vector<std::vector<int>> MatchGroups(
    std::span<const MatchGroup> groups,
    std::span<const PredictionRecord> preds,
    std::span<const TruthRecord> truths, double iou_threshold);

// Match() built on the serial MatchGroups.
MatchLedger Match(std::span<const PredictionRecord> preds,
                  std::span<const TruthRecord> truths, const EvalConfig& cfg);

}  // namespace reference

// Shared by Match and reference::Match: scatters group results into a ledger.
MatchLedger LedgerFromGroups(std::span<const MatchGroup> groups,
                             const std::vector<std::vector<int>>& matched,
                             std::size_t n_preds, std::size_t n_truths);

// Matches one group and returns global truth indices (or -1) per prediction.
std::vector<int> MatchOneGroup(const MatchGroup& group,
                               std::span<const PredictionRecord> preds,
                               std::span<const TruthRecord> truths,
                               double iou_threshold);

}  // namespace semsynth

#endif  // SEMSYNTH_KERNELS_H_

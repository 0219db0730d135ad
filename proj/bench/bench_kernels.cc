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

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "semsynth/dataset.h"
#include "semsynth/kernels.h"

namespace {

using semsynth::DatasetConfig;
using semsynth::GenerateImage;
using semsynth::ImageRecord;
using semsynth::Split;

DatasetConfig BenchConfig() {
  DatasetConfig cfg;
  cfg.n_images = 32;
  cfg.global_seed = 7;
  return cfg;
}

void BM_GenerateImagesSerial(benchmark::State& state) {
  const DatasetConfig cfg = BenchConfig();
  for (auto _ : state) {
    auto out = semsynth::reference::RunImageTasks(cfg.n_images, [&](int i) {
      return GenerateImage(cfg, i, Split::kTrain).record;
    });
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_images);
}
BENCHMARK(BM_GenerateImagesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_GenerateImagesOmp(benchmark::State& state) {
  const DatasetConfig cfg = BenchConfig();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto out = semsynth::RunImageTasks(cfg.n_images, workers, [&](int i) {
      return GenerateImage(cfg, i, Split::kTrain).record;
    });
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_images);
}
BENCHMARK(BM_GenerateImagesOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

const semsynth::Raster& BenchRaster() {
  static const semsynth::Raster raster =
      GenerateImage(BenchConfig(), 0, Split::kTrain).raster;
  return raster;
}

void BM_HistogramSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(semsynth::reference::IntensityHistogram(BenchRaster()));
  }
}
BENCHMARK(BM_HistogramSerial)->UseRealTime();

void BM_HistogramOmp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(semsynth::IntensityHistogram(BenchRaster()));
  }
}
BENCHMARK(BM_HistogramOmp)->UseRealTime();

void BM_ColumnSumsSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(semsynth::reference::ColumnSums(BenchRaster()));
  }
}
BENCHMARK(BM_ColumnSumsSerial)->UseRealTime();

void BM_ColumnSumsOmp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(semsynth::ColumnSums(BenchRaster()));
  }
}
BENCHMARK(BM_ColumnSumsOmp)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

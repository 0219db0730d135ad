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

#include <gtest/gtest.h>

#include <cmath>

#include "semsynth/dataset.h"
#include "semsynth/errors.h"

namespace semsynth {
namespace {

Raster HalfAndHalf(int lo, int hi) {
  Raster r(64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) r.at(x, y) = static_cast<std::uint8_t>(x < 32 ? lo : hi);
  }
  return r;
}

Raster Transpose(const Raster& r) {
  Raster t(r.height(), r.width());
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) t.at(y, x) = r.at(x, y);
  }
  return t;
}

TEST(BrightnessTest, ConstantAndHalfImages) {
  EXPECT_DOUBLE_EQ(Brightness(Raster(20, 10, 128)), 128.0);
  EXPECT_DOUBLE_EQ(Brightness(HalfAndHalf(100, 200)), 150.0);
}

TEST(RmsContrastTest, ConstantAndHalfImages) {
  EXPECT_DOUBLE_EQ(RmsContrast(Raster(20, 10, 128)), 0.0);
  EXPECT_NEAR(RmsContrast(HalfAndHalf(100, 200)), 50.0, 1e-12);
}

TEST(SnrDbTest, ClosedForms) {
  EXPECT_NEAR(SnrDb(HalfAndHalf(100, 200)), 20.0 * std::log10(3.0), 1e-9);
  EXPECT_NEAR(SnrDb(HalfAndHalf(100, 200)), 9.542, 1e-3);
  // mean 1, std 1
  EXPECT_NEAR(SnrDb(HalfAndHalf(0, 2)), 0.0, 1e-12);
  EXPECT_THROW(SnrDb(Raster(4, 4, 9)), DegenerateImage);
}

TEST(SnrDbTest, DecreasesAsNoiseRangesWiden) {
  double previous = 1e9;
  for (int spread = 0; spread <= 25; spread += 5) {
    ImageConfig cfg;
    cfg.grey_range = {140 - spread, 140 + spread};
    cfg.dark_range = {60 - spread, 60 + spread};
    cfg.edge_range = {230 - spread, 230 + spread};
    Xoshiro256 rng(1);
    const double snr = SnrDb(RenderPattern(cfg, rng));
    EXPECT_LT(snr, previous) << spread;
    previous = snr;
  }
}

TEST(ImageStatsTest, TransposeInvariance) {
  DatasetConfig cfg;
  const Raster r = GenerateImage(cfg, 3, Split::kTrain).raster;
  const Raster t = Transpose(r);
  EXPECT_DOUBLE_EQ(Brightness(r), Brightness(t));
  EXPECT_DOUBLE_EQ(RmsContrast(r), RmsContrast(t));
  EXPECT_DOUBLE_EQ(SnrDb(r), SnrDb(t));
}

TEST(MeasureLayoutTest, RecoversGrey14Pitch32) {
  ImageConfig cfg;
  cfg.grey_width_px = 14;
  cfg.dark_width_px = 14;
  cfg.edge_width_px = 2;
  Xoshiro256 rng(2);
  const LayoutEstimate e = MeasureLayout(RenderPattern(cfg, rng));
  EXPECT_NEAR(e.line_width_px, 14.0, 1.0);
  EXPECT_NEAR(e.pitch_px, 32.0, 1.0);
}

TEST(MeasureLayoutTest, InvertsGeneratorOverSampledConfigs) {
  const ImageSampler sampler;
  Xoshiro256 rng(17);
  for (int i = 0; i < 60; ++i) {
    const ImageConfig cfg = SampleImageConfig(sampler, rng);
    const LayoutEstimate e = MeasureLayout(RenderPattern(cfg, rng));
    EXPECT_NEAR(e.line_width_px, cfg.grey_width_px, 1.0) << i;
    EXPECT_NEAR(e.pitch_px, cfg.pitch_px(), 1.0) << i;
  }
}

TEST(MeasureLayoutTest, NoEdgesLayout) {
  ImageConfig cfg;
  cfg.grey_width_px = 10;
  cfg.dark_width_px = 9;
  cfg.edge_width_px = 0;
  Xoshiro256 rng(3);
  const LayoutEstimate e = MeasureLayout(RenderPattern(cfg, rng));
  EXPECT_NEAR(e.line_width_px, 10.0, 1.0);
  EXPECT_NEAR(e.pitch_px, 19.0, 1.0);
}

TEST(MeasureLayoutTest, ConstantImageHasNoLayout) {
  EXPECT_THROW(MeasureLayout(Raster(64, 64, 100)), LayoutNotFound);
}

TEST(MeasureLayoutTest, SingleLineHasNoLayout) {
  ImageConfig cfg;
  cfg.width_px = 40;  // one period of 30 plus a partial
  Xoshiro256 rng(4);
  EXPECT_THROW(MeasureLayout(RenderPattern(cfg, rng)), LayoutNotFound);
}

TEST(ComputeStatsTest, DegenerateImageLeavesOptionalsEmpty) {
  const StatsReport s = ComputeStats(Raster(16, 16, 7));
  EXPECT_DOUBLE_EQ(s.brightness, 7.0);
  EXPECT_FALSE(s.snr_db);
  EXPECT_FALSE(s.layout);
}

TEST(ComputeStatsTest, DefaultRenderInsideReportedRanges) {
  DatasetConfig cfg;
  const StatsReport s = ComputeStats(GenerateImage(cfg, 0, Split::kTrain).raster);
  EXPECT_GE(s.brightness, 96.0);
  EXPECT_LE(s.brightness, 153.0);
  EXPECT_GE(s.rms_contrast, 33.0);
  EXPECT_LE(s.rms_contrast, 77.0);
  ASSERT_TRUE(s.snr_db);
  EXPECT_GE(*s.snr_db, 3.7);
  EXPECT_LE(*s.snr_db, 9.0);
  ASSERT_TRUE(s.layout);
  EXPECT_GE(s.layout->line_width_px, 10.0);
  EXPECT_LE(s.layout->line_width_px, 23.0);
  EXPECT_GE(s.layout->pitch_px, 19.0);
  EXPECT_LE(s.layout->pitch_px, 47.0);
}

TEST(HistogramStatsTest, PooledMatchesConcatenation) {
  Histogram h{};
  h[100] = 2048;
  h[200] = 2048;
  EXPECT_DOUBLE_EQ(HistogramMean(h), 150.0);
  EXPECT_NEAR(HistogramStdDev(h), 50.0, 1e-12);
}

}  // namespace
}  // namespace semsynth

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

#include <gtest/gtest.h>

#include <array>
#include <queue>
#include <vector>

#include "semsynth/errors.h"

namespace semsynth {
namespace {

// Layout with a dark interval at columns [20, 30): edge 1, grey 18, dark 10.
ImageConfig BridgeConfig() {
  ImageConfig cfg;
  cfg.width_px = 128;
  cfg.height_px = 256;
  cfg.grey_width_px = 18;
  cfg.dark_width_px = 10;
  cfg.edge_width_px = 1;
  return cfg;
}

// Layout with a grey interval at columns [40, 54): edge 1, grey 14, dark 23.
ImageConfig BreakConfig() {
  ImageConfig cfg;
  cfg.width_px = 128;
  cfg.height_px = 256;
  cfg.grey_width_px = 14;
  cfg.dark_width_px = 23;
  cfg.edge_width_px = 1;
  return cfg;
}

int IntervalAt(const LineLayout& layout, int begin, Region region) {
  for (std::size_t i = 0; i < layout.intervals.size(); ++i) {
    if (layout.intervals[i].begin == begin && layout.intervals[i].region == region) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

// Tight rectangle of pixels that differ between two rasters.
std::optional<BBox> DiffBox(const Raster& a, const Raster& b) {
  std::optional<BBox> box;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (a.at(x, y) == b.at(x, y)) continue;
      if (!box) {
        box = BBox{x, y, x + 1, y + 1};
      } else {
        box->xmin = std::min(box->xmin, x);
        box->ymin = std::min(box->ymin, y);
        box->xmax = std::max(box->xmax, x + 1);
        box->ymax = std::max(box->ymax, y + 1);
      }
    }
  }
  return box;
}

// Degenerate ranges so every injected pixel is guaranteed to differ.
ImageConfig Constant(ImageConfig cfg) {
  cfg.grey_range = {150, 150};
  cfg.dark_range = {30, 30};
  cfg.edge_range = {230, 230};
  return cfg;
}

DefectSpec MakeSpec(const LineLayout& layout, DefectType type, int host,
                    int y_top, int size) {
  DefectSpec s;
  s.type = type;
  s.size_px = size;
  s.host_interval = host;
  s.y_top = y_top;
  s.bbox = DefectBox(layout, type, host, y_top, size);
  return s;
}

TEST(DefectBoxTest, BridgeSpansDarkGap) {
  const LineLayout layout = BuildLayout(BridgeConfig());
  const int host = IntervalAt(layout, 20, Region::kDark);
  ASSERT_GE(host, 0);
  EXPECT_EQ(DefectBox(layout, DefectType::kBridge, host, 100, 6),
            (BBox{20, 100, 30, 106}));
}

TEST(DefectBoxTest, BreakIncludesEdges) {
  const LineLayout layout = BuildLayout(BreakConfig());
  const int host = IntervalAt(layout, 40, Region::kGrey);
  ASSERT_GE(host, 0);
  EXPECT_EQ(DefectBox(layout, DefectType::kBreak, host, 200, 4),
            (BBox{39, 200, 55, 204}));
}

TEST(InjectDefectTest, BridgePixelDiffMatchesBox) {
  const ImageConfig cfg = Constant(BridgeConfig());
  Xoshiro256 rng(1);
  const Raster before = RenderPattern(cfg, rng);
  const int host = IntervalAt(before.layout(), 20, Region::kDark);
  const DefectSpec spec = MakeSpec(before.layout(), DefectType::kBridge, host, 100, 6);
  Raster after = before;
  InjectDefect(after, spec, cfg, rng);
  EXPECT_EQ(DiffBox(before, after), (BBox{20, 100, 30, 106}));
  for (int y = 100; y < 106; ++y) {
    for (int x = 20; x < 30; ++x) EXPECT_EQ(after.at(x, y), 150);
  }
}

TEST(InjectDefectTest, BreakPixelDiffMatchesBox) {
  const ImageConfig cfg = Constant(BreakConfig());
  Xoshiro256 rng(1);
  const Raster before = RenderPattern(cfg, rng);
  const int host = IntervalAt(before.layout(), 40, Region::kGrey);
  const DefectSpec spec = MakeSpec(before.layout(), DefectType::kBreak, host, 200, 4);
  Raster after = before;
  InjectDefect(after, spec, cfg, rng);
  EXPECT_EQ(DiffBox(before, after), (BBox{39, 200, 55, 204}));
  for (int y = 200; y < 204; ++y) {
    for (int x = 39; x < 55; ++x) EXPECT_EQ(after.at(x, y), 30);
  }
}

TEST(InjectDefectTest, InjectedPixelsUseOppositeRange) {
  const ImageConfig cfg = BridgeConfig();
  Xoshiro256 rng(8);
  Raster r = RenderPattern(cfg, rng);
  const LineLayout& layout = r.layout();
  const auto bridge = MakeSpec(layout, DefectType::kBridge,
                               IntervalAt(layout, 20, Region::kDark), 10, 40);
  const auto brk = MakeSpec(layout, DefectType::kBreak,
                            IntervalAt(layout, 1, Region::kGrey), 60, 40);
  InjectDefect(r, bridge, cfg, rng);
  InjectDefect(r, brk, cfg, rng);
  for (int y = 10; y < 50; ++y) {
    for (int x = 20; x < 30; ++x) EXPECT_TRUE(cfg.grey_range.Contains(r.at(x, y)));
  }
  for (int y = 60; y < 100; ++y) {
    for (int x = 0; x < 20; ++x) EXPECT_TRUE(cfg.dark_range.Contains(r.at(x, y)));
  }
}

TEST(InjectDefectTest, OverflowingBoxIsPlacementError) {
  ImageConfig cfg = BridgeConfig();
  cfg.height_px = 20;
  Xoshiro256 rng(1);
  Raster r = RenderPattern(cfg, rng);
  const auto spec = MakeSpec(r.layout(), DefectType::kBridge,
                             IntervalAt(r.layout(), 20, Region::kDark), 1, 20);
  EXPECT_THROW(InjectDefect(r, spec, cfg, rng), PlacementError);
}

// 4-connected flood fill restricted to `rows`, over pixels >= min_value.
bool Connected(const Raster& r, int x0, int x1, int y_begin, int y_end,
               int min_value) {
  std::vector<char> seen(static_cast<std::size_t>(r.width()) * r.height(), 0);
  std::queue<std::pair<int, int>> q;
  for (int y = y_begin; y < y_end; ++y) {
    if (r.at(x0, y) >= min_value) {
      q.push({x0, y});
      seen[y * r.width() + x0] = 1;
    }
  }
  while (!q.empty()) {
    auto [x, y] = q.front();
    q.pop();
    if (x == x1) return true;
    const int nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
    for (const auto& n : nb) {
      const int nx = n[0], ny = n[1];
      if (nx < 0 || nx >= r.width() || ny < y_begin || ny >= y_end) continue;
      auto& s = seen[ny * r.width() + nx];
      if (s || r.at(nx, ny) < min_value) continue;
      s = 1;
      q.push({nx, ny});
    }
  }
  return false;
}

TEST(InjectDefectTest, BridgeConnectsAdjacentLines) {
  const ImageConfig cfg = BridgeConfig();
  Xoshiro256 rng(4);
  Raster r = RenderPattern(cfg, rng);
  // Lines at [1,19) and [31,49) around the dark gap [20,30).
  EXPECT_FALSE(Connected(r, 10, 40, 100, 106, cfg.grey_range.lo));
  InjectDefect(r, MakeSpec(r.layout(), DefectType::kBridge,
                           IntervalAt(r.layout(), 20, Region::kDark), 100, 6),
               cfg, rng);
  EXPECT_TRUE(Connected(r, 10, 40, 100, 106, cfg.grey_range.lo));
}

TEST(InjectDefectTest, BreakDisconnectsLine) {
  const ImageConfig cfg = BreakConfig();
  Xoshiro256 rng(4);
  Raster r = RenderPattern(cfg, rng);
  // Walk down the line's columns [39, 55): rows above and below the break.
  auto reaches = [&](const Raster& img) {
    std::vector<char> seen(static_cast<std::size_t>(img.width()) * img.height(), 0);
    std::queue<std::pair<int, int>> q;
    for (int x = 39; x < 55; ++x) q.push({x, 0});
    while (!q.empty()) {
      auto [x, y] = q.front();
      q.pop();
      if (x < 39 || x >= 55 || y < 0 || y >= img.height()) continue;
      auto& s = seen[y * img.width() + x];
      if (s || img.at(x, y) < cfg.grey_range.lo) continue;
      s = 1;
      if (y == img.height() - 1) return true;
      q.push({x + 1, y});
      q.push({x - 1, y});
      q.push({x, y + 1});
      q.push({x, y - 1});
    }
    return false;
  };
  EXPECT_TRUE(reaches(r));
  InjectDefect(r, MakeSpec(r.layout(), DefectType::kBreak,
                           IntervalAt(r.layout(), 40, Region::kGrey), 200, 4),
               cfg, rng);
  EXPECT_FALSE(reaches(r));
}

TEST(SizePxTest, RoundHalfUpMinimumOne) {
  EXPECT_EQ(SizePxForStep(1, 10), 1);   // 1.0
  EXPECT_EQ(SizePxForStep(1, 4), 1);    // 0.4 -> clamped to 1
  EXPECT_EQ(SizePxForStep(5, 15), 8);   // 7.5 -> 8
  EXPECT_EQ(SizePxForStep(5, 14), 7);   // 7.0
  EXPECT_EQ(SizePxForStep(2, 15), 3);   // 3.0
  EXPECT_EQ(SizePxForStep(20, 23), 46);
}

TEST(NormalizedSizeTest, DividesByLineWidth) {
  ImageConfig cfg;
  DefectSpec s;
  cfg.grey_width_px = 14;
  s.size_px = 7;
  EXPECT_DOUBLE_EQ(NormalizedSize(s, cfg), 0.5);
  s.size_px = 14;
  EXPECT_DOUBLE_EQ(NormalizedSize(s, cfg), 1.0);
  cfg.grey_width_px = 15;
  s.size_px = 3;
  EXPECT_DOUBLE_EQ(NormalizedSize(s, cfg), 0.2);
}

TEST(SampleDefectsTest, SingleDefectWhenMaxIsOne) {
  const ImageConfig cfg;
  const LineLayout layout = BuildLayout(cfg);
  Xoshiro256 rng(10);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(SampleDefects(cfg, layout, rng, 1).size(), 1u);
  }
}

TEST(SampleDefectsTest, SpecsSatisfyInvariants) {
  const ImageConfig cfg;
  const LineLayout layout = BuildLayout(cfg);
  Xoshiro256 rng(11);
  std::array<int, 6> count_hist{};
  for (int i = 0; i < 3000; ++i) {
    const auto specs = SampleDefects(cfg, layout, rng);
    ASSERT_GE(specs.size(), 1u);
    ASSERT_LE(specs.size(), 5u);
    ++count_hist[specs.size()];
    for (std::size_t a = 0; a < specs.size(); ++a) {
      const auto& s = specs[a];
      EXPECT_GE(s.norm_size, 0.1 - 1e-12);
      EXPECT_LE(s.norm_size, 2.0 + 1e-12);
      EXPECT_EQ(s.size_px, SizePxForStep(s.size_step, cfg.grey_width_px));
      EXPECT_TRUE(s.bbox.InsideImage(cfg.width_px, cfg.height_px));
      EXPECT_EQ(s.bbox.height(), s.size_px);
      const Region host = layout.intervals[s.host_interval].region;
      EXPECT_EQ(host, s.type == DefectType::kBreak ? Region::kGrey : Region::kDark);
      for (std::size_t b = a + 1; b < specs.size(); ++b) {
        EXPECT_FALSE(s.bbox.Intersects(specs[b].bbox));
      }
    }
  }
  // Count ~ U{1..5}: 600 expected each, binomial sigma ~22.
  for (int c = 1; c <= 5; ++c) EXPECT_NEAR(count_hist[c], 600, 70) << c;
}

TEST(SampleDefectsTest, TypeBalanceOverTenThousandDefects) {
  const ImageConfig cfg;
  const LineLayout layout = BuildLayout(cfg);
  Xoshiro256 rng(12);
  long long n = 0, breaks = 0;
  while (n < 10000) {
    for (const auto& s : SampleDefects(cfg, layout, rng)) {
      ++n;
      breaks += s.type == DefectType::kBreak;
    }
  }
  EXPECT_NEAR(static_cast<double>(breaks) / n, 0.5, 0.02);
}

TEST(SampleDefectsTest, SizeGridUniformOverTwentyThousandDefects) {
  const ImageConfig cfg;
  const LineLayout layout = BuildLayout(cfg);
  Xoshiro256 rng(13);
  std::array<long long, kSizeGridSteps + 1> hist{};
  long long n = 0;
  while (n < 20000) {
    for (const auto& s : SampleDefects(cfg, layout, rng)) {
      ++hist[s.size_step];
      ++n;
    }
  }
  const double expected = static_cast<double>(n) / kSizeGridSteps;
  for (int k = 1; k <= kSizeGridSteps; ++k) {
    EXPECT_NEAR(hist[k], expected, 0.1 * expected) << "step " << k;
  }
}

TEST(SampleDefectsTest, ImpossibleSizeIsPlacementError) {
  ImageConfig cfg;
  cfg.height_px = 1;
  cfg.grey_width_px = 23;
  const LineLayout layout = BuildLayout(cfg);
  Xoshiro256 rng(14);
  EXPECT_THROW(
      {
        for (int i = 0; i < 50; ++i) SampleDefects(cfg, layout, rng);
      },
      PlacementError);
}

TEST(SampleDefectsTest, CrowdedImageIsPlacementError) {
  // One bridge host and one break host on a short image: five disjoint
  // boxes cannot fit.
  ImageConfig cfg;
  cfg.width_px = 48;
  cfg.height_px = 24;
  cfg.grey_width_px = 20;
  cfg.dark_width_px = 4;
  cfg.edge_width_px = 0;
  const LineLayout layout = BuildLayout(cfg);
  Xoshiro256 rng(15);
  EXPECT_THROW(
      {
        for (int i = 0; i < 200; ++i) SampleDefects(cfg, layout, rng, 5);
      },
      PlacementError);
}

TEST(FeasibleHostsTest, TruncatedAndBorderIntervalsExcluded) {
  ImageConfig cfg;
  cfg.width_px = 50;  // pitch 30: second line truncated
  const LineLayout layout = BuildLayout(cfg);
  for (int i : FeasibleHosts(layout, DefectType::kBreak)) {
    EXPECT_FALSE(layout.intervals[i].truncated);
  }
  for (int i : FeasibleHosts(layout, DefectType::kBridge)) {
    EXPECT_GT(i, 0);
    EXPECT_LT(i + 1, static_cast<int>(layout.intervals.size()));
  }
}

}  // namespace
}  // namespace semsynth

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

#ifndef SEMSYNTH_TESTS_ORACLES_H_
#define SEMSYNTH_TESTS_ORACLES_H_

// Independent reference computations used by the unit and acceptance tests.

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "semsynth/defects.h"

namespace semsynth::testing {

// IoU by counting grid cells covered by each box.
inline double PixelCountIou(const BBox& a, const BBox& b) {
  const int x0 = std::min(a.xmin, b.xmin), x1 = std::max(a.xmax, b.xmax);
  const int y0 = std::min(a.ymin, b.ymin), y1 = std::max(a.ymax, b.ymax);
  long long inter = 0, uni = 0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const bool in_a = x >= a.xmin && x < a.xmax && y >= a.ymin && y < a.ymax;
      const bool in_b = x >= b.xmin && x < b.xmax && y >= b.ymin && y < b.ymax;
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return uni ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

// Maximum number of disjoint (prediction, truth) pairs with IoU >= threshold,
// by exhaustive search over truth subsets (memoized on the used-truth mask).
inline int MaxFeasibleMatching(std::span<const BBox> preds,
                               std::span<const BBox> truths, double threshold) {
  const int np = static_cast<int>(preds.size());
  const int nt = static_cast<int>(truths.size());
  std::vector<std::vector<bool>> ok(np, std::vector<bool>(nt));
  for (int p = 0; p < np; ++p) {
    for (int t = 0; t < nt; ++t) ok[p][t] = PixelCountIou(preds[p], truths[t]) >= threshold;
  }
  std::map<std::pair<int, unsigned>, int> memo;
  std::function<int(int, unsigned)> best = [&](int p, unsigned used) -> int {
    if (p == np) return 0;
    const auto key = std::make_pair(p, used);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int r = best(p + 1, used);
    for (int t = 0; t < nt; ++t) {
      if (ok[p][t] && !(used & (1u << t))) r = std::max(r, 1 + best(p + 1, used | (1u << t)));
    }
    memo[key] = r;
    return r;
  };
  return best(0, 0);
}

}  // namespace semsynth::testing

#endif  // SEMSYNTH_TESTS_ORACLES_H_

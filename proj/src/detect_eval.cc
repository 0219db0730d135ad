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

#include "semsynth/detect_eval.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "json.hpp"
#include "semsynth/errors.h"
#include "semsynth/kernels.h"

namespace semsynth {

void EvalConfig::Validate() const {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw ConfigError(fmt::format("IoU threshold must be in (0, 1], got {}", iou_threshold));
  }
  if (!(size_bin_width > 0.0)) {
    throw ConfigError(fmt::format("size bin width must be positive, got {}", size_bin_width));
  }
}

double Iou(const BBox& a, const BBox& b) {
  const long long iw = std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin);
  const long long ih = std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin);
  if (iw <= 0 || ih <= 0) return 0.0;
  const long long inter = iw * ih;
  const long long uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<int> GreedyMatch(std::span<const BBox> pred_boxes,
                             std::span<const double> confidences,
                             std::span<const BBox> truth_boxes,
                             double iou_threshold) {
  std::vector<int> order(pred_boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return confidences[a] > confidences[b];
  });
  std::vector<int> result(pred_boxes.size(), -1);
  std::vector<bool> taken(truth_boxes.size(), false);
  for (int p : order) {
    int best = -1;
    double best_iou = -1.0;
    for (std::size_t t = 0; t < truth_boxes.size(); ++t) {
      if (taken[t]) continue;
      const double v = Iou(pred_boxes[p], truth_boxes[t]);
      if (v > best_iou) {
        best_iou = v;
        best = static_cast<int>(t);
      }
    }
    if (best >= 0 && best_iou >= iou_threshold) {
      taken[best] = true;
      result[p] = best;
    }
  }
  return result;
}

std::vector<MatchGroup> GroupByImageAndClass(
    std::span<const PredictionRecord> preds,
    std::span<const TruthRecord> truths) {
  std::map<std::pair<std::string, int>, MatchGroup> by_key;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    by_key[{preds[i].image_id, ClassId(preds[i].type)}].preds.push_back(
        static_cast<int>(i));
  }
  for (std::size_t i = 0; i < truths.size(); ++i) {
    by_key[{truths[i].image_id, ClassId(truths[i].type)}].truths.push_back(
        static_cast<int>(i));
  }
  std::vector<MatchGroup> groups;
  groups.reserve(by_key.size());
  for (auto& [key, g] : by_key) groups.push_back(std::move(g));
  return groups;
}

std::vector<int> MatchOneGroup(const MatchGroup& group,
                               std::span<const PredictionRecord> preds,
                               std::span<const TruthRecord> truths,
                               double iou_threshold) {
  std::vector<BBox> pb, tb;
  std::vector<double> conf;
  for (int p : group.preds) {
    pb.push_back(preds[p].bbox);
    conf.push_back(preds[p].confidence);
  }
  for (int t : group.truths) tb.push_back(truths[t].bbox);
  std::vector<int> local = GreedyMatch(pb, conf, tb, iou_threshold);
  for (int& m : local) {
    if (m >= 0) m = group.truths[m];
  }
  return local;
}

MatchLedger LedgerFromGroups(std::span<const MatchGroup> groups,
                             const std::vector<std::vector<int>>& matched,
                             std::size_t n_preds, std::size_t n_truths) {
  MatchLedger ledger;
  ledger.pred_truth.assign(n_preds, -1);
  ledger.truth_pred.assign(n_truths, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t k = 0; k < groups[g].preds.size(); ++k) {
      const int p = groups[g].preds[k];
      const int t = matched[g][k];
      ledger.pred_truth[p] = t;
      if (t >= 0) ledger.truth_pred[t] = p;
    }
  }
  return ledger;
}

MatchLedger Match(std::span<const PredictionRecord> preds,
                  std::span<const TruthRecord> truths, const EvalConfig& cfg) {
  cfg.Validate();
  const auto groups = GroupByImageAndClass(preds, truths);
  return LedgerFromGroups(groups,
                          MatchGroups(groups, preds, truths, cfg.iou_threshold),
                          preds.size(), truths.size());
}

std::optional<double> Precision(long long tp, long long fp) {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> Recall(long long tp, long long fn) {
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double FScore(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double Accuracy(long long tp, long long tn, long long fp, long long fn) {
  const long long total = tp + tn + fp + fn;
  if (total <= 0) throw ConfigError("accuracy needs at least one prediction");
  return 100.0 * static_cast<double>(tp + tn) / static_cast<double>(total);
}

std::optional<double> AveragePrecision(std::span<const ScoredHit> hits,
                                       long long n_truths) {
  if (n_truths <= 0) return std::nullopt;
  std::vector<ScoredHit> sorted(hits.begin(), hits.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoredHit& a, const ScoredHit& b) {
                     return a.confidence > b.confidence;
                   });
  const std::size_t n = sorted.size();
  // Sentinels: recall 0 at the start, precision 0 past the end.
  std::vector<double> recall(n + 2, 0.0), precision(n + 2, 0.0);
  long long tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sorted[i].true_positive) ++tp;
    recall[i + 1] = static_cast<double>(tp) / n_truths;
    precision[i + 1] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  recall[n + 1] = recall[n];
  for (std::size_t i = n + 1; i-- > 0;) {
    precision[i] = std::max(precision[i], precision[i + 1]);
  }
  double ap = 0.0;
  for (std::size_t i = 1; i <= n + 1; ++i) {
    ap += (recall[i] - recall[i - 1]) * precision[i];
  }
  return ap;
}

std::optional<double> MeanAveragePrecision(
    std::span<const std::optional<double>> aps) {
  double sum = 0.0;
  int count = 0;
  for (const auto& ap : aps) {
    if (ap) {
      sum += *ap;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

ClassMetrics MetricsFromCounts(long long tp, long long fp, long long fn) {
  ClassMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = Precision(tp, fp);
  m.recall = Recall(tp, fn);
  if (m.precision && m.recall) m.f_score = FScore(*m.precision, *m.recall);
  return m;
}

std::optional<double> MeanFScore(std::span<const ClassMetrics> classes) {
  std::vector<std::optional<double>> f;
  for (const auto& c : classes) f.push_back(c.f_score);
  return MeanAveragePrecision(f);
}

std::vector<HitRateBin> HitRateCurve(std::span<const TruthRecord> truths,
                                     const MatchLedger& ledger,
                                     double bin_width,
                                     std::optional<DefectType> only) {
  if (!(bin_width > 0.0)) throw ConfigError("size bin width must be positive");
  const int last = static_cast<int>(
      std::floor((kMaxNormSize - kMinNormSize) / bin_width + 1e-9));
  std::vector<HitRateBin> bins(last + 1);
  for (int k = 0; k <= last; ++k) bins[k].center = kMinNormSize + k * bin_width;
  for (std::size_t t = 0; t < truths.size(); ++t) {
    const auto& truth = truths[t];
    if (!truth.norm_size) {
      throw MissingSizeMetadata("truth in image '" + truth.image_id +
                                "' has no norm_size");
    }
    if (only && truth.type != *only) continue;
    const int k = std::clamp(
        static_cast<int>(std::llround((*truth.norm_size - kMinNormSize) / bin_width)),
        0, last);
    ++bins[k].support;
    if (ledger.truth_pred[t] >= 0) ++bins[k].matched;
  }
  for (auto& b : bins) {
    if (b.support > 0) b.tpr = static_cast<double>(b.matched) / b.support;
  }
  return bins;
}

MetricsReport Evaluate(std::span<const PredictionRecord> preds,
                       std::span<const TruthRecord> truths,
                       const EvalConfig& cfg) {
  const MatchLedger ledger = Match(preds, truths, cfg);
  MetricsReport report;
  report.config = cfg;

  std::array<long long, 2> n_truth{}, tp{}, fp{};
  std::array<std::vector<ScoredHit>, 2> hits;
  for (std::size_t t = 0; t < truths.size(); ++t) ++n_truth[ClassId(truths[t].type)];
  for (std::size_t p = 0; p < preds.size(); ++p) {
    const int c = ClassId(preds[p].type);
    const bool hit = ledger.pred_truth[p] >= 0;
    (hit ? tp : fp)[c]++;
    hits[c].push_back({preds[p].confidence, hit});
  }
  std::array<std::optional<double>, 2> aps;
  for (int c = 0; c < 2; ++c) {
    report.per_class[c] = MetricsFromCounts(tp[c], fp[c], n_truth[c] - tp[c]);
    aps[c] = AveragePrecision(hits[c], n_truth[c]);
    report.per_class[c].ap = aps[c];
  }
  report.map = MeanAveragePrecision(aps);
  report.mean_f_score = MeanFScore(report.per_class);

  report.has_size_metadata = std::all_of(
      truths.begin(), truths.end(), [](const TruthRecord& t) { return t.norm_size.has_value(); });
  if (report.has_size_metadata) {
    report.hit_rate = HitRateCurve(truths, ledger, cfg.size_bin_width);
    for (DefectType t : kDefectTypes) {
      report.hit_rate_by_class[ClassId(t)] =
          HitRateCurve(truths, ledger, cfg.size_bin_width, t);
    }
  }
  return report;
}

std::vector<TruthRecord> TruthsFromManifest(const DatasetManifest& m,
                                            std::optional<Split> split) {
  std::vector<TruthRecord> out;
  for (const auto& img : m.images) {
    if (split && img.split != *split) continue;
    for (const auto& d : img.defects) {
      TruthRecord t;
      t.image_id = img.image_id;
      t.type = d.type;
      t.bbox = d.bbox;
      if (!std::isnan(d.norm_size)) t.norm_size = d.norm_size;
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace {

nlohmann::json Nullable(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json CurveJson(const std::vector<HitRateBin>& bins) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : bins) {
    arr.push_back({{"bin_center", b.center},
                   {"support", b.support},
                   {"matched", b.matched},
                   {"tpr", Nullable(b.tpr)}});
  }
  return arr;
}

}  // namespace

std::string ReportToJson(const MetricsReport& r) {
  nlohmann::json classes = nlohmann::json::object();
  for (DefectType t : kDefectTypes) {
    const auto& c = r.per_class[ClassId(t)];
    classes[std::string(DefectTypeName(t))] = {
        {"tp", c.tp},
        {"fp", c.fp},
        {"fn", c.fn},
        {"precision", Nullable(c.precision)},
        {"recall", Nullable(c.recall)},
        {"f_score", Nullable(c.f_score)},
        {"ap", Nullable(c.ap)},
    };
  }
  nlohmann::json doc = {
      {"iou_threshold", r.config.iou_threshold},
      {"size_bin_width", r.config.size_bin_width},
      {"ap_interpolation", "all-points"},
      {"matching", "greedy, confidence-ranked, one-to-one"},
      {"size_normalization", "defect size / line width (grey_width_px)"},
      {"classes", classes},
      {"map", Nullable(r.map)},
      {"mean_f_score", Nullable(r.mean_f_score)},
  };
  if (r.has_size_metadata) {
    doc["hit_rate"] = {
        {"all", CurveJson(r.hit_rate)},
        {"break", CurveJson(r.hit_rate_by_class[0])},
        {"bridge", CurveJson(r.hit_rate_by_class[1])},
    };
  } else {
    doc["hit_rate"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string HitRateCsv(const MetricsReport& r) {
  std::string out = "class,bin_center,support,matched,tpr\n";
  auto emit = [&](std::string_view name, const std::vector<HitRateBin>& bins) {
    for (const auto& b : bins) {
      out += fmt::format("{},{:.2f},{},{},{}\n", name, b.center, b.support,
                         b.matched, b.tpr ? fmt::format("{:.6f}", *b.tpr) : "");
    }
  };
  emit("all", r.hit_rate);
  emit("break", r.hit_rate_by_class[0]);
  emit("bridge", r.hit_rate_by_class[1]);
  return out;
}

}  // namespace semsynth

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

#ifndef SEMSYNTH_DETECT_EVAL_H_
#define SEMSYNTH_DETECT_EVAL_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semsynth/dataset.h"
#include "semsynth/defects.h"

namespace semsynth {

// A detector output in the prediction wire format.
struct PredictionRecord {
  std::string image_id;
  DefectType type = DefectType::kBreak;
  BBox bbox;
  double confidence = 0.0;

  bool operator==(const PredictionRecord&) const = default;
};

struct TruthRecord {
  std::string image_id;
  DefectType type = DefectType::kBreak;
  BBox bbox;
  std::optional<double> norm_size;
};

struct EvalConfig {
  double iou_threshold = 0.5;
  double size_bin_width = 0.1;  // normalized size units

  // Throws ConfigError.
  void Validate() const;
};

// Intersection over union of half-open integer boxes; 0 for disjoint boxes.
double Iou(const BBox& a, const BBox& b);

// Greedy matching inside one (image, class) group. Predictions are visited
// by descending confidence (ties keep input order); each takes the
// still-unmatched truth of highest IoU if that IoU reaches the threshold.
// Returns, per prediction, the matched truth index or -1.
std::vector<int> GreedyMatch(std::span<const BBox> pred_boxes,
                             std::span<const double> confidences,
                             std::span<const BBox> truth_boxes,
                             double iou_threshold);

// One-to-one assignment between predictions and truths.
struct MatchLedger {
  std::vector<int> pred_truth;  // truth index or -1 (false positive)
  std::vector<int> truth_pred;  // prediction index or -1 (false negative)
};

// Indices of the predictions and truths sharing one (image, class) key.
struct MatchGroup {
  std::vector<int> preds;
  std::vector<int> truths;
};

std::vector<MatchGroup> GroupByImageAndClass(
    std::span<const PredictionRecord> preds,
    std::span<const TruthRecord> truths);

// Groups are matched concurrently; see kernels.h for the serial reference.
MatchLedger Match(std::span<const PredictionRecord> preds,
                  std::span<const TruthRecord> truths, const EvalConfig& cfg);

// tp / (tp + fp); nullopt when there are no predictions.
std::optional<double> Precision(long long tp, long long fp);
// tp / (tp + fn); nullopt when there are no truths.
std::optional<double> Recall(long long tp, long long fn);
// Harmonic mean; 0 when both are 0.
double FScore(double precision, double recall);
// Percent correct. Not used by the detection report (no true negatives).
double Accuracy(long long tp, long long tn, long long fp, long long fn);

struct ScoredHit {
  double confidence = 0.0;
  bool true_positive = false;
};

// All-points interpolated area under the precision-recall curve. Hits are
// swept in descending confidence; the precision envelope is made
// non-increasing before integration. nullopt when n_truths == 0.
std::optional<double> AveragePrecision(std::span<const ScoredHit> hits,
                                       long long n_truths);

// Unweighted mean of the defined APs.
std::optional<double> MeanAveragePrecision(
    std::span<const std::optional<double>> aps);

struct ClassMetrics {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f_score;
  std::optional<double> ap;
};

// Precision, recall and F from counts; ap left unset.
ClassMetrics MetricsFromCounts(long long tp, long long fp, long long fn);

// Mean of the defined per-class F-scores.
std::optional<double> MeanFScore(std::span<const ClassMetrics> classes);

struct HitRateBin {
  double center = 0.0;
  long long support = 0;
  long long matched = 0;
  std::optional<double> tpr;
};

inline constexpr double kMinNormSize = 0.1;
inline constexpr double kMaxNormSize = 2.0;

// Truths bucketed by norm_size into bins of `bin_width` centred on
// 0.1, 0.1 + w, ... up to 2.0. Empty bins carry tpr = nullopt.
// Throws MissingSizeMetadata if a truth has no norm_size.
std::vector<HitRateBin> HitRateCurve(std::span<const TruthRecord> truths,
                                     const MatchLedger& ledger,
                                     double bin_width,
                                     std::optional<DefectType> only = {});

struct MetricsReport {
  EvalConfig config;
  std::array<ClassMetrics, 2> per_class;
  std::optional<double> map;
  std::optional<double> mean_f_score;
  std::vector<HitRateBin> hit_rate;                   // all classes
  std::array<std::vector<HitRateBin>, 2> hit_rate_by_class;
  bool has_size_metadata = false;
};

// Runs Match and aggregates. Hit-rate curves are filled only when every
// truth carries norm_size.
MetricsReport Evaluate(std::span<const PredictionRecord> preds,
                       std::span<const TruthRecord> truths,
                       const EvalConfig& cfg);

// Ground truth of a manifest, optionally restricted to one split.
std::vector<TruthRecord> TruthsFromManifest(const DatasetManifest& m,
                                            std::optional<Split> split = {});

// JSON document mirroring MetricsReport; undefined metrics are null.
std::string ReportToJson(const MetricsReport& r);

// "class,bin_center,support,matched,tpr" rows for all, break, bridge.
std::string HitRateCsv(const MetricsReport& r);

}  // namespace semsynth

#endif  // SEMSYNTH_DETECT_EVAL_H_

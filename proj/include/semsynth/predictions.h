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

#ifndef SEMSYNTH_PREDICTIONS_H_
#define SEMSYNTH_PREDICTIONS_H_

// Prediction wire format, one record per line:
//
//   <image_id> <class_name> <confidence> <xmin> <ymin> <xmax> <ymax>
//
// Space separated, class_name in {break, bridge}, confidence with six
// decimals, half-open integer pixel box. Blank lines are ignored.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "semsynth/detect_eval.h"

namespace semsynth {

std::string FormatPrediction(const PredictionRecord& p);
void WritePredictions(std::ostream& out, std::span<const PredictionRecord> preds);
void WritePredictionsFile(const std::filesystem::path& path,
                          std::span<const PredictionRecord> preds);

// Throws ParseError (malformed line) or RangeError (confidence outside
// [0, 1], empty or negative box), both carrying the 1-based line number.
std::vector<PredictionRecord> ReadPredictions(std::istream& in);
std::vector<PredictionRecord> ReadPredictionsFile(const std::filesystem::path& path);

}  // namespace semsynth

#endif  // SEMSYNTH_PREDICTIONS_H_

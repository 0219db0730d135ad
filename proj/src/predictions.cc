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

#include "semsynth/predictions.h"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "semsynth/errors.h"

namespace semsynth {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
T ParseNumber(std::string_view s, const char* what, std::size_t line) {
  T value{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ParseError(fmt::format("bad {} '{}'", what, s), line);
  }
  return value;
}

}  // namespace

std::string FormatPrediction(const PredictionRecord& p) {
  return fmt::format("{} {} {:.6f} {} {} {} {}", p.image_id,
                     DefectTypeName(p.type), p.confidence, p.bbox.xmin,
                     p.bbox.ymin, p.bbox.xmax, p.bbox.ymax);
}

void WritePredictions(std::ostream& out,
                      std::span<const PredictionRecord> preds) {
  for (const auto& p : preds) out << FormatPrediction(p) << '\n';
}

void WritePredictionsFile(const std::filesystem::path& path,
                          std::span<const PredictionRecord> preds) {
  std::ofstream out(path, std::ios::binary);
  WritePredictions(out, preds);
  if (!out) throw IoError("cannot write " + path.string());
}

std::vector<PredictionRecord> ReadPredictions(std::istream& in) {
  std::vector<PredictionRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = SplitFields(line);
    if (f.empty()) continue;
    if (f.size() != 7) {
      throw ParseError(fmt::format("expected 7 fields, got {}", f.size()), lineno);
    }
    PredictionRecord p;
    p.image_id = std::string(f[0]);
    const auto type = ParseDefectType(f[1]);
    if (!type) throw ParseError(fmt::format("unknown class '{}'", f[1]), lineno);
    p.type = *type;
    p.confidence = ParseNumber<double>(f[2], "confidence", lineno);
    p.bbox.xmin = ParseNumber<int>(f[3], "xmin", lineno);
    p.bbox.ymin = ParseNumber<int>(f[4], "ymin", lineno);
    p.bbox.xmax = ParseNumber<int>(f[5], "xmax", lineno);
    p.bbox.ymax = ParseNumber<int>(f[6], "ymax", lineno);
    if (!(p.confidence >= 0.0 && p.confidence <= 1.0)) {
      throw RangeError(fmt::format("confidence {} outside [0, 1]", f[2]), lineno);
    }
    if (!p.bbox.Valid() || p.bbox.xmin < 0 || p.bbox.ymin < 0) {
      throw RangeError("box must satisfy 0 <= xmin < xmax and 0 <= ymin < ymax",
                       lineno);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PredictionRecord> ReadPredictionsFile(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return ReadPredictions(in);
}

}  // namespace semsynth

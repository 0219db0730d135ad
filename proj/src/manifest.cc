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

#include "semsynth/manifest.h"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "semsynth/errors.h"

namespace semsynth {

using nlohmann::json;

namespace {

json RangeJson(int lo, int hi) { return json::array({lo, hi}); }

template <typename Range>
Range RangeFrom(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError("expected a [lo, hi] pair, got " + j.dump());
  }
  return Range{j[0].get<int>(), j[1].get<int>()};
}

void RejectUnknown(const json& j, const std::set<std::string>& known,
                   const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

template <typename T>
void Override(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

template <typename Range>
void OverrideRange(const json& j, const char* key, Range& field) {
  if (j.contains(key)) field = RangeFrom<Range>(j.at(key));
}

json SamplerToJson(const ImageSampler& s) {
  return {
      {"width_px", s.width_px},
      {"height_px", s.height_px},
      {"line_width_px", RangeJson(s.line_width_px.lo, s.line_width_px.hi)},
      {"pitch_px", RangeJson(s.pitch_px.lo, s.pitch_px.hi)},
      {"pitch_ratio", json::array({s.pitch_ratio_min, s.pitch_ratio_max})},
      {"edge_width_px", s.edge_width_px},
      {"grey_lo", RangeJson(s.grey_lo.lo, s.grey_lo.hi)},
      {"grey_hi", RangeJson(s.grey_hi.lo, s.grey_hi.hi)},
      {"dark_lo", RangeJson(s.dark_lo.lo, s.dark_lo.hi)},
      {"dark_hi", RangeJson(s.dark_hi.lo, s.dark_hi.hi)},
      {"edge_lo", RangeJson(s.edge_lo.lo, s.edge_lo.hi)},
      {"edge_hi", RangeJson(s.edge_hi.lo, s.edge_hi.hi)},
  };
}

ImageSampler SamplerFromJson(const json& j, ImageSampler s) {
  RejectUnknown(j,
                {"width_px", "height_px", "line_width_px", "pitch_px",
                 "pitch_ratio", "edge_width_px", "grey_lo", "grey_hi",
                 "dark_lo", "dark_hi", "edge_lo", "edge_hi"},
                "sampler");
  Override(j, "width_px", s.width_px);
  Override(j, "height_px", s.height_px);
  OverrideRange(j, "line_width_px", s.line_width_px);
  OverrideRange(j, "pitch_px", s.pitch_px);
  if (j.contains("pitch_ratio")) {
    const auto& r = j.at("pitch_ratio");
    if (!r.is_array() || r.size() != 2) throw ConfigError("pitch_ratio must be [min, max]");
    s.pitch_ratio_min = r[0].get<double>();
    s.pitch_ratio_max = r[1].get<double>();
  }
  Override(j, "edge_width_px", s.edge_width_px);
  OverrideRange(j, "grey_lo", s.grey_lo);
  OverrideRange(j, "grey_hi", s.grey_hi);
  OverrideRange(j, "dark_lo", s.dark_lo);
  OverrideRange(j, "dark_hi", s.dark_hi);
  OverrideRange(j, "edge_lo", s.edge_lo);
  OverrideRange(j, "edge_hi", s.edge_hi);
  return s;
}

json DefectToJson(const DefectSpec& d) {
  return {
      {"type", std::string(DefectTypeName(d.type))},
      {"size_step", d.size_step},
      {"size_px", d.size_px},
      {"norm_size", d.norm_size},
      {"host_interval", d.host_interval},
      {"y_top", d.y_top},
      {"bbox", json::array({d.bbox.xmin, d.bbox.ymin, d.bbox.xmax, d.bbox.ymax})},
  };
}

DefectSpec DefectFromJson(const json& j) {
  DefectSpec d;
  const auto name = j.at("type").get<std::string>();
  const auto type = ParseDefectType(name);
  if (!type) throw ConfigError("unknown defect type '" + name + "'");
  d.type = *type;
  d.size_px = j.at("size_px").get<int>();
  d.size_step = j.value("size_step", 0);
  d.norm_size = j.contains("norm_size") && !j.at("norm_size").is_null()
                    ? j.at("norm_size").get<double>()
                    : std::numeric_limits<double>::quiet_NaN();
  d.host_interval = j.value("host_interval", 0);
  d.y_top = j.value("y_top", 0);
  const auto& b = j.at("bbox");
  d.bbox = {b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
            b.at(3).get<int>()};
  return d;
}

}  // namespace

json ConfigToJson(const DatasetConfig& cfg) {
  return {
      {"n_images", cfg.n_images},
      {"n_defects_max", cfg.n_defects_max},
      {"global_seed", cfg.global_seed},
      {"split_fractions",
       {{"train", cfg.splits.train}, {"val", cfg.splits.val}, {"test", cfg.splits.test}}},
      {"formats",
       {{"voc", cfg.formats.voc}, {"yolo", cfg.formats.yolo}, {"overlay", cfg.formats.overlay}}},
      {"sampler", SamplerToJson(cfg.sampler)},
  };
}

DatasetConfig ConfigFromJson(const json& j, DatasetConfig cfg) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    RejectUnknown(j,
                  {"n_images", "n_defects_max", "global_seed", "split_fractions",
                   "formats", "sampler"},
                  "config");
    Override(j, "n_images", cfg.n_images);
    Override(j, "n_defects_max", cfg.n_defects_max);
    Override(j, "global_seed", cfg.global_seed);
    if (j.contains("split_fractions")) {
      const auto& f = j.at("split_fractions");
      RejectUnknown(f, {"train", "val", "test"}, "split_fractions");
      Override(f, "train", cfg.splits.train);
      Override(f, "val", cfg.splits.val);
      Override(f, "test", cfg.splits.test);
    }
    if (j.contains("formats")) {
      const auto& f = j.at("formats");
      RejectUnknown(f, {"voc", "yolo", "overlay"}, "formats");
      Override(f, "voc", cfg.formats.voc);
      Override(f, "yolo", cfg.formats.yolo);
      Override(f, "overlay", cfg.formats.overlay);
    }
    if (j.contains("sampler")) cfg.sampler = SamplerFromJson(j.at("sampler"), cfg.sampler);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return cfg;
}

json ImageConfigToJson(const ImageConfig& c) {
  return {
      {"width_px", c.width_px},
      {"height_px", c.height_px},
      {"grey_width_px", c.grey_width_px},
      {"dark_width_px", c.dark_width_px},
      {"edge_width_px", c.edge_width_px},
      {"grey_range", RangeJson(c.grey_range.lo, c.grey_range.hi)},
      {"dark_range", RangeJson(c.dark_range.lo, c.dark_range.hi)},
      {"edge_range", RangeJson(c.edge_range.lo, c.edge_range.hi)},
      {"seed", c.seed},
  };
}

ImageConfig ImageConfigFromJson(const json& j) {
  ImageConfig c;
  c.width_px = j.at("width_px").get<int>();
  c.height_px = j.at("height_px").get<int>();
  c.grey_width_px = j.at("grey_width_px").get<int>();
  c.dark_width_px = j.at("dark_width_px").get<int>();
  c.edge_width_px = j.at("edge_width_px").get<int>();
  c.grey_range = RangeFrom<IntensityRange>(j.at("grey_range"));
  c.dark_range = RangeFrom<IntensityRange>(j.at("dark_range"));
  c.edge_range = RangeFrom<IntensityRange>(j.at("edge_range"));
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::string ManifestToJson(const DatasetManifest& m) {
  json images = json::array();
  for (const auto& img : m.images) {
    json defects = json::array();
    for (const auto& d : img.defects) defects.push_back(DefectToJson(d));
    images.push_back({
        {"index", img.index},
        {"image_id", img.image_id},
        {"split", std::string(SplitName(img.split))},
        {"seed", img.seed},
        {"config", ImageConfigToJson(img.config)},
        {"defects", std::move(defects)},
    });
  }
  const json doc = {
      {"generator_version", m.generator_version},
      {"config", ConfigToJson(m.config)},
      {"images", std::move(images)},
  };
  return doc.dump(2) + "\n";
}

DatasetManifest ParseManifest(std::string_view text) {
  DatasetManifest m;
  try {
    const json doc = json::parse(text);
    m.generator_version = doc.at("generator_version").get<std::string>();
    m.config = ConfigFromJson(doc.at("config"));
    for (const auto& j : doc.at("images")) {
      ImageRecord rec;
      rec.index = j.at("index").get<int>();
      rec.image_id = j.at("image_id").get<std::string>();
      rec.split = ParseSplit(j.at("split").get<std::string>());
      rec.seed = j.at("seed").get<std::uint64_t>();
      rec.config = ImageConfigFromJson(j.at("config"));
      for (const auto& d : j.at("defects")) rec.defects.push_back(DefectFromJson(d));
      m.images.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad manifest: ") + e.what());
  }
  return m;
}

void WriteManifest(const std::filesystem::path& path, const DatasetManifest& m) {
  std::ofstream out(path, std::ios::binary);
  out << ManifestToJson(m);
  if (!out) throw IoError("cannot write " + path.string());
}

DatasetManifest ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseManifest(ss.str());
}

}  // namespace semsynth

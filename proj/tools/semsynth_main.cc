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

// semsynth command-line entry point: generate, stats, eval, hitrate, convert.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "semsynth/annotations.h"
#include "semsynth/dataset.h"
#include "semsynth/detect_eval.h"
#include "semsynth/errors.h"
#include "semsynth/image_stats.h"
#include "semsynth/kernels.h"
#include "semsynth/manifest.h"
#include "semsynth/overlay.h"
#include "semsynth/png_io.h"
#include "semsynth/predictions.h"

namespace semsynth {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown for invalid flag values detected after parsing; maps to exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

void SetUpLogging() {
  auto logger = spdlog::stderr_color_st("semsynth");
  logger->set_pattern("semsynth: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("SEMSYNTH_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string(env) != "off") {
      spdlog::warn("unknown SEMSYNTH_LOG level '{}', keeping info", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

// Writes to the file if a path is given, else to stdout.
void Emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text << std::flush;
  } else {
    WriteText(out_path, text);
  }
}

std::string Field(double v) { return fmt::format("{:.3f}", v); }
std::string Field(const std::optional<double>& v) { return v ? Field(*v) : ""; }

// ---------------------------------------------------------------- generate

struct GenerateFlags {
  int n_images = 0;
  std::uint64_t seed = 0;
  std::string out;
  int workers = 0;
  std::string config;
  std::string replay;
  bool dry_run = false;
  std::vector<std::string> formats;
  int n_defects_max = 0;
};

OutputFormats ParseFormats(const std::vector<std::string>& names) {
  OutputFormats f{false, false, false};
  for (const auto& n : names) {
    if (n == "voc") {
      f.voc = true;
    } else if (n == "yolo") {
      f.yolo = true;
    } else if (n == "overlay") {
      f.overlay = true;
    } else {
      throw UsageError("unknown format '" + n + "' (expected voc, yolo, overlay)");
    }
  }
  return f;
}

void PrintSummary(const DatasetManifest& m) {
  const ClassTable t = CountDefects(m);
  std::array<long long, 3> images{};
  for (const auto& img : m.images) ++images[static_cast<int>(img.split)];
  std::cout << fmt::format("{:<6} {:>8} {:>8} {:>8} {:>8}\n", "split", "images",
                           "break", "bridge", "total");
  std::array<long long, 4> sum{};
  for (Split s : kSplits) {
    const int i = static_cast<int>(s);
    std::cout << fmt::format("{:<6} {:>8} {:>8} {:>8} {:>8}\n", SplitName(s),
                             images[i], t[i][0], t[i][1], t[i][0] + t[i][1]);
    sum[0] += images[i];
    sum[1] += t[i][0];
    sum[2] += t[i][1];
  }
  std::cout << fmt::format("{:<6} {:>8} {:>8} {:>8} {:>8}\n", "all", sum[0],
                           sum[1], sum[2], sum[1] + sum[2]);
}

int CmdGenerate(const GenerateFlags& f, const CLI::App& cmd) {
  auto given = [&](const char* name) { return cmd.count(name) > 0; };

  std::optional<DatasetManifest> source;
  DatasetConfig cfg;
  if (!f.replay.empty()) {
    source = ReadManifest(f.replay);
    cfg = source->config;
    if (source->generator_version != kGeneratorVersion) {
      spdlog::warn("manifest was written by {}, replaying with {}",
                   source->generator_version, kGeneratorVersion);
    }
  } else {
    if (!f.config.empty()) {
      cfg = ConfigFromJson(nlohmann::json::parse(ReadText(f.config)), cfg);
    }
    if (given("--n-images")) cfg.n_images = f.n_images;
    if (given("--seed")) cfg.global_seed = f.seed;
    if (given("--n-defects-max")) cfg.n_defects_max = f.n_defects_max;
    if (given("--formats")) cfg.formats = ParseFormats(f.formats);
  }
  if (f.workers < 0) throw UsageError("--workers must be >= 0");
  try {
    cfg.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  GenerateOptions opts;
  opts.out_dir = f.out;
  opts.workers = f.workers;
  opts.dry_run = f.dry_run;
  spdlog::info("generating {} images (seed {}) into {}", cfg.n_images,
               cfg.global_seed, f.out);
  const DatasetManifest m = GenerateDataset(cfg, opts);
  PrintSummary(m);

  if (source && !(m.config == source->config && m.images == source->images)) {
    spdlog::error("replay of {} produced a different manifest", f.replay);
    return kExitFailure;
  }
  return kExitOk;
}

// ------------------------------------------------------------------- stats

struct StatsFlags {
  std::string dir;
  std::string out;
};

int CmdStats(const StatsFlags& f) {
  if (!fs::is_directory(f.dir)) throw UsageError("not a directory: " + f.dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(f.dir)) {
    if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no PNG images under " + f.dir);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::array<double, 5> lo, hi;
  lo.fill(kInf);
  hi.fill(-kInf);
  auto track = [&](int col, const std::optional<double>& v) {
    if (!v) return;
    lo[col] = std::min(lo[col], *v);
    hi[col] = std::max(hi[col], *v);
  };
  auto bound = [](double v) { return std::isfinite(v) ? Field(v) : std::string(); };

  Histogram pooled{};
  std::vector<std::string> unreadable, degenerate;
  std::string csv = "image_id,brightness,rms_contrast,snr_db,line_width,pitch\n";
  for (const auto& path : files) {
    Raster r;
    try {
      r = ReadGreyPng(path);
    } catch (const Error& e) {
      spdlog::error("{}", e.what());
      unreadable.push_back(path.string());
      continue;
    }
    const Histogram h = IntensityHistogram(r);
    for (int i = 0; i < 256; ++i) pooled[i] += h[i];
    const StatsReport s = ComputeStats(r);
    const std::string id = path.stem().string();
    if (!s.snr_db) {
      spdlog::error("{}: DegenerateImage: zero intensity variance", path.string());
      degenerate.push_back(path.string());
    } else if (!s.layout) {
      spdlog::warn("{}: no line layout detected", path.string());
    }
    std::optional<double> lw, pitch;
    if (s.layout) {
      lw = s.layout->line_width_px;
      pitch = s.layout->pitch_px;
    }
    track(0, s.brightness);
    track(1, s.rms_contrast);
    track(2, s.snr_db);
    track(3, lw);
    track(4, pitch);
    csv += fmt::format("{},{},{},{},{},{}\n", id, Field(s.brightness),
                       Field(s.rms_contrast), Field(s.snr_db), Field(lw), Field(pitch));
  }
  for (const char* name : {"min", "max"}) {
    const auto& v = std::string(name) == "min" ? lo : hi;
    csv += fmt::format("{},{},{},{},{},{}\n", name, bound(v[0]), bound(v[1]),
                       bound(v[2]), bound(v[3]), bound(v[4]));
  }
  if (unreadable.size() < files.size()) {
    const double sd = HistogramStdDev(pooled);
    const std::optional<double> snr =
        sd > 0 ? std::optional<double>(HistogramSnrDb(pooled)) : std::nullopt;
    csv += fmt::format("corpus,{},{},{},,\n", Field(HistogramMean(pooled)),
                       Field(sd), Field(snr));
  }
  Emit(f.out, csv);

  if (!unreadable.empty()) {
    spdlog::error("{} unreadable image(s):", unreadable.size());
    for (const auto& p : unreadable) spdlog::error("  {}", p);
  }
  if (!degenerate.empty()) {
    spdlog::error("{} degenerate image(s):", degenerate.size());
    for (const auto& p : degenerate) spdlog::error("  {}", p);
  }
  return unreadable.empty() && degenerate.empty() ? kExitOk : kExitFailure;
}

// ------------------------------------------------------------ eval/hitrate

struct EvalFlags {
  std::string manifest;
  std::string predictions;
  double iou = 0.5;
  double bin_width = 0.1;
  std::string split;
  std::string out;
  std::string curve;
  std::string plot;
};

EvalConfig ValidatedEvalConfig(const EvalFlags& f) {
  EvalConfig cfg;
  cfg.iou_threshold = f.iou;
  cfg.size_bin_width = f.bin_width;
  try {
    cfg.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::optional<Split> ValidatedSplit(const std::string& name) {
  if (name.empty() || name == "all") return std::nullopt;
  try {
    return ParseSplit(name);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

MetricsReport RunEvaluation(const EvalFlags& f, const EvalConfig& cfg,
                            std::optional<Split> split) {
  const DatasetManifest m = ReadManifest(f.manifest);
  std::vector<PredictionRecord> preds = ReadPredictionsFile(f.predictions);

  std::set<std::string> known;
  for (const auto& img : m.images) {
    if (!split || img.split == *split) known.insert(img.image_id);
  }
  std::set<std::string> unknown;
  std::erase_if(preds, [&](const PredictionRecord& p) {
    if (known.count(p.image_id)) return false;
    unknown.insert(p.image_id);
    return true;
  });
  if (!unknown.empty()) {
    spdlog::warn("{} prediction image_id(s) not in the evaluated set, ignored:",
                 unknown.size());
    for (const auto& id : unknown) spdlog::warn("  {}", id);
  }
  return Evaluate(preds, TruthsFromManifest(m, split), cfg);
}

int CmdEval(const EvalFlags& f) {
  const EvalConfig cfg = ValidatedEvalConfig(f);
  const auto split = ValidatedSplit(f.split);
  const MetricsReport r = RunEvaluation(f, cfg, split);
  Emit(f.out, ReportToJson(r));
  if (!f.curve.empty()) {
    if (!r.has_size_metadata) throw MissingSizeMetadata("manifest lacks norm_size");
    WriteText(f.curve, HitRateCsv(r));
  }
  for (DefectType t : kDefectTypes) {
    const ClassMetrics& c = r.per_class[ClassId(t)];
    spdlog::info("{}: tp {} fp {} fn {} precision {} recall {} ap {}",
                 DefectTypeName(t), c.tp, c.fp, c.fn, Field(c.precision),
                 Field(c.recall), Field(c.ap));
  }
  spdlog::info("mAP {}", Field(r.map));
  return kExitOk;
}

int CmdHitRate(const EvalFlags& f) {
  const EvalConfig cfg = ValidatedEvalConfig(f);
  const auto split = ValidatedSplit(f.split);
  const MetricsReport r = RunEvaluation(f, cfg, split);
  if (!r.has_size_metadata) {
    throw MissingSizeMetadata("manifest " + f.manifest + " lacks norm_size");
  }
  Emit(f.out, HitRateCsv(r));
  if (!f.plot.empty()) {
    auto series = [](std::string name, Rgb color, const std::vector<HitRateBin>& bins) {
      ChartSeries s{std::move(name), color, {}};
      for (const auto& b : bins) s.points.emplace_back(b.center, b.tpr);
      return s;
    };
    const std::vector<ChartSeries> chart = {
        series("all", {0, 0, 0}, r.hit_rate),
        series("break", ClassColor(DefectType::kBreak), r.hit_rate_by_class[0]),
        series("bridge", ClassColor(DefectType::kBridge), r.hit_rate_by_class[1])};
    const double x_max = r.hit_rate.empty() ? kMaxNormSize : r.hit_rate.back().center;
    if (fs::path(f.plot).has_parent_path()) fs::create_directories(fs::path(f.plot).parent_path());
    WriteRgbPng(f.plot, RenderLineChart(chart, kMinNormSize, x_max));
  }
  return kExitOk;
}

// ----------------------------------------------------------------- convert

struct ConvertFlags {
  std::string from;
  std::string to;
  std::string in;
  std::string out;
  std::string image_size;
};

std::pair<int, int> ParseImageSize(const std::string& s) {
  int w = 0, h = 0;
  char x = 0, extra = 0;
  if (std::sscanf(s.c_str(), "%d%c%d%c", &w, &x, &h, &extra) != 3 ||
      (x != 'x' && x != 'X') || w <= 0 || h <= 0) {
    throw UsageError("--image-size must be WxH with positive integers, got '" + s + "'");
  }
  return {w, h};
}

std::string Extension(const std::string& format) { return format == "voc" ? ".xml" : ".txt"; }

void ConvertFile(const ConvertFlags& f, std::optional<std::pair<int, int>> size,
                 const fs::path& in, const fs::path& out) {
  try {
    const std::string text = ReadText(in);
    const std::string stem = in.stem().string();
    AnnotationRecord rec;
    if (f.from == "voc") {
      rec = ImportVoc(text);
      if (rec.image_id.empty()) rec.image_id = stem;
    } else {
      rec = ImportYolo(text, size->first, size->second, stem);
      rec.filename = stem + ".png";
    }
    WriteText(out, f.to == "voc" ? ExportVoc(rec) : ExportYolo(rec));
  } catch (const Error& e) {
    throw FormatError(in.string() + ": " + e.what());
  }
}

int CmdConvert(const ConvertFlags& f) {
  std::optional<std::pair<int, int>> size;
  if (!f.image_size.empty()) size = ParseImageSize(f.image_size);
  if (f.from == "yolo" && !size) throw UsageError("--image-size is required with --from yolo");
  if (!fs::exists(f.in)) throw UsageError("no such input: " + f.in);

  if (!fs::is_directory(f.in)) {
    ConvertFile(f, size, f.in, f.out);
    return kExitOk;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(f.in)) {
    if (e.is_regular_file() && e.path().extension() == Extension(f.from)) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no " + Extension(f.from) + " files in " + f.in);
  fs::create_directories(f.out);
  for (const auto& p : files) {
    ConvertFile(f, size, p, fs::path(f.out) / (p.stem().string() + Extension(f.to)));
  }
  spdlog::info("converted {} file(s)", files.size());
  return kExitOk;
}

// -------------------------------------------------------------------- main

void AddEvalOptions(CLI::App* cmd, EvalFlags& f) {
  cmd->add_option("--manifest", f.manifest, "Dataset manifest.json")->required();
  cmd->add_option("--predictions", f.predictions, "Prediction file")->required();
  cmd->add_option("--iou", f.iou, "IoU threshold in (0, 1]")->capture_default_str();
  cmd->add_option("--bin-width", f.bin_width, "Normalized size bin width")
      ->capture_default_str();
  cmd->add_option("--split", f.split, "Evaluate one split: train, val, test or all");
}

int Run(int argc, char** argv) {
  CLI::App app{"Synthetic SEM line-pattern defect datasets and detector evaluation"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Generate a labelled dataset");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--n-images", gen.n_images, "Number of images");
  generate->add_option("--seed", gen.seed, "Global seed");
  generate->add_option("--workers", gen.workers, "Worker threads (0 = all cores)");
  generate->add_option("--n-defects-max", gen.n_defects_max, "Max defects per image");
  generate->add_option("--formats", gen.formats, "Label formats: voc,yolo,overlay")
      ->delimiter(',');
  auto* config_opt =
      generate->add_option("--config", gen.config, "JSON config overriding defaults");
  auto* replay_opt =
      generate->add_option("--replay", gen.replay, "Regenerate the dataset of a manifest");
  generate->add_flag("--dry-run", gen.dry_run, "Write only the manifest");
  replay_opt->excludes(config_opt);
  for (const char* name : {"--n-images", "--seed", "--n-defects-max", "--formats"}) {
    replay_opt->excludes(generate->get_option(name));
  }

  StatsFlags st;
  auto* stats = app.add_subcommand("stats", "Per-image statistics of a PNG directory");
  stats->add_option("dir", st.dir, "Directory searched recursively for PNGs")->required();
  stats->add_option("--out", st.out, "CSV output file (default stdout)");

  EvalFlags ev;
  auto* eval = app.add_subcommand("eval", "Score predictions against a manifest");
  AddEvalOptions(eval, ev);
  eval->add_option("--out", ev.out, "Report JSON file (default stdout)");
  eval->add_option("--curve", ev.curve, "Also write the hit-rate CSV here");

  EvalFlags hr;
  auto* hitrate = app.add_subcommand("hitrate", "Hit rate against normalized defect size");
  AddEvalOptions(hitrate, hr);
  hitrate->add_option("--out", hr.out, "CSV output file (default stdout)");
  hitrate->add_option("--plot", hr.plot, "Render the curves to this PNG");

  ConvertFlags cv;
  auto* convert = app.add_subcommand("convert", "Convert labels between VOC and YOLO");
  const std::vector<std::string> formats = {"voc", "yolo"};
  convert->add_option("--from", cv.from, "Input format")
      ->required()->check(CLI::IsMember(formats));
  convert->add_option("--to", cv.to, "Output format")
      ->required()->check(CLI::IsMember(formats));
  convert->add_option("--in", cv.in, "Input file or directory")->required();
  convert->add_option("--out", cv.out, "Output file or directory")->required();
  convert->add_option("--image-size", cv.image_size, "WxH, required for YOLO input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  SetUpLogging();
  try {
    if (*generate) return CmdGenerate(gen, *generate);
    if (*stats) return CmdStats(st);
    if (*eval) return CmdEval(ev);
    if (*hitrate) return CmdHitRate(hr);
    if (*convert) return CmdConvert(cv);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const ConfigError& e) {
    spdlog::error("invalid configuration: {}", e.what());
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    spdlog::error("malformed JSON: {}", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace semsynth

int main(int argc, char** argv) { return semsynth::Run(argc, argv); }

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

#ifndef SEMSYNTH_MANIFEST_H_
#define SEMSYNTH_MANIFEST_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "semsynth/dataset.h"

namespace semsynth {

// Keys are emitted sorted, so equal manifests serialize to equal bytes.
nlohmann::json ConfigToJson(const DatasetConfig& cfg);

// Fields present in `j` override those of `base`; unknown keys are errors.
DatasetConfig ConfigFromJson(const nlohmann::json& j, DatasetConfig base = {});

nlohmann::json ImageConfigToJson(const ImageConfig& cfg);
ImageConfig ImageConfigFromJson(const nlohmann::json& j);

std::string ManifestToJson(const DatasetManifest& m);
// A defect without "norm_size" gets NaN there.
DatasetManifest ParseManifest(std::string_view text);

void WriteManifest(const std::filesystem::path& path, const DatasetManifest& m);
DatasetManifest ReadManifest(const std::filesystem::path& path);

}  // namespace semsynth

#endif  // SEMSYNTH_MANIFEST_H_

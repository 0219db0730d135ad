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

#ifndef SEMSYNTH_PNG_IO_H_
#define SEMSYNTH_PNG_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "semsynth/pattern.h"

namespace semsynth {

// Interleaved 8-bit RGB image, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 3 bytes per pixel

  RgbImage() = default;
  RgbImage(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t* px(int x, int y) {
    return &data[(static_cast<std::size_t>(y) * width + x) * 3];
  }
  const std::uint8_t* px(int x, int y) const {
    return &data[(static_cast<std::size_t>(y) * width + x) * 3];
  }
  bool operator==(const RgbImage&) const = default;
};

// Single-channel 8-bit PNG, no alpha. Output bytes depend only on pixels.
void WriteGreyPng(const std::filesystem::path& path, const Raster& raster);
void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image);

// Reads any PNG and converts to 8-bit greyscale. Throws IoError.
Raster ReadGreyPng(const std::filesystem::path& path);

}  // namespace semsynth

#endif  // SEMSYNTH_PNG_IO_H_

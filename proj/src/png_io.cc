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

#include "semsynth/png_io.h"

#include <png.h>

#include <cstring>
#include <string>

#include "semsynth/errors.h"

namespace semsynth {
namespace {

void WritePng(const std::filesystem::path& path, int width, int height,
              png_uint_32 format, const std::uint8_t* data, int row_stride) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, row_stride,
                               nullptr)) {
    std::string msg = "cannot write " + path.string() + ": " + image.message;
    png_image_free(&image);
    throw IoError(msg);
  }
}

}  // namespace

void WriteGreyPng(const std::filesystem::path& path, const Raster& raster) {
  WritePng(path, raster.width(), raster.height(), PNG_FORMAT_GRAY,
           raster.pixels().data(), raster.width());
}

void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image) {
  WritePng(path, image.width, image.height, PNG_FORMAT_RGB, image.data.data(),
           image.width * 3);
}

Raster ReadGreyPng(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError("cannot read " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  Raster raster(static_cast<int>(image.width), static_cast<int>(image.height));
  if (!png_image_finish_read(&image, nullptr, raster.pixels().data(),
                             static_cast<png_int_32>(image.width), nullptr)) {
    std::string msg = "cannot decode " + path.string() + ": " + image.message;
    png_image_free(&image);
    throw IoError(msg);
  }
  return raster;
}

}  // namespace semsynth

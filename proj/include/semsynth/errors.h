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

#ifndef SEMSYNTH_ERRORS_H_
#define SEMSYNTH_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semsynth {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid ImageConfig / DatasetConfig / EvalConfig.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A defect cannot be placed inside the image or without overlap.
class PlacementError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public Error {
 public:
  RangeError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Malformed label file (VOC or YOLO).
class FormatError : public Error {
 public:
  using Error::Error;
};

class DegenerateImage : public Error {
 public:
  using Error::Error;
};

class LayoutNotFound : public Error {
 public:
  using Error::Error;
};

class MissingSizeMetadata : public Error {
 public:
  using Error::Error;
};

}  // namespace semsynth

#endif  // SEMSYNTH_ERRORS_H_

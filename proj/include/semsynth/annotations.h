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

#ifndef SEMSYNTH_ANNOTATIONS_H_
#define SEMSYNTH_ANNOTATIONS_H_

#include <string>
#include <string_view>
#include <vector>

#include "semsynth/defects.h"

namespace semsynth {

struct Annotation {
  DefectType type = DefectType::kBreak;
  BBox bbox;
  bool operator==(const Annotation&) const = default;
};

// Ground-truth labels of one image.
struct AnnotationRecord {
  std::string image_id;
  std::string filename;
  int width = 0;
  int height = 0;
  std::vector<Annotation> defects;

  // Throws FormatError unless there is at least one in-bounds defect.
  void Validate() const;
};

// Pascal VOC XML. Boxes are written 1-based inclusive: xmin+1, ymin+1,
// xmax, ymax.
std::string ExportVoc(const AnnotationRecord& rec);
AnnotationRecord ImportVoc(std::string_view xml);

// YOLO text: "<class> <xc> <yc> <w> <h>" per defect, normalized, 6 decimals.
std::string ExportYolo(const AnnotationRecord& rec);
AnnotationRecord ImportYolo(std::string_view text, int width, int height,
                            std::string image_id = {});

}  // namespace semsynth

#endif  // SEMSYNTH_ANNOTATIONS_H_

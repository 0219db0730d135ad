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

#include "semsynth/annotations.h"

#include <fmt/format.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cmath>
#include <sstream>

#include "semsynth/errors.h"

namespace semsynth {

void AnnotationRecord::Validate() const {
  if (defects.empty()) {
    throw FormatError("image '" + image_id + "' has no defects");
  }
  for (const auto& d : defects) {
    if (!d.bbox.InsideImage(width, height)) {
      throw FormatError("image '" + image_id + "' has a box outside the image");
    }
  }
}

std::string ExportVoc(const AnnotationRecord& rec) {
  rec.Validate();
  std::string out;
  out += "<annotation>\n";
  out += fmt::format("  <filename>{}</filename>\n", rec.filename);
  out += fmt::format(
      "  <size>\n    <width>{}</width>\n    <height>{}</height>\n"
      "    <depth>1</depth>\n  </size>\n",
      rec.width, rec.height);
  for (const auto& d : rec.defects) {
    out += "  <object>\n";
    out += fmt::format("    <name>{}</name>\n", DefectTypeName(d.type));
    out += "    <difficult>0</difficult>\n";
    out += fmt::format(
        "    <bndbox>\n      <xmin>{}</xmin>\n      <ymin>{}</ymin>\n"
        "      <xmax>{}</xmax>\n      <ymax>{}</ymax>\n    </bndbox>\n",
        d.bbox.xmin + 1, d.bbox.ymin + 1, d.bbox.xmax, d.bbox.ymax);
    out += "  </object>\n";
  }
  out += "</annotation>\n";
  return out;
}

AnnotationRecord ImportVoc(std::string_view xml) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw FormatError(std::string("malformed VOC XML: ") + e.what());
  }
  AnnotationRecord rec;
  try {
    const pt::ptree& root = tree.get_child("annotation");
    rec.filename = root.get<std::string>("filename", "");
    rec.image_id = rec.filename.substr(0, rec.filename.rfind('.'));
    rec.width = root.get<int>("size.width");
    rec.height = root.get<int>("size.height");
    for (const auto& [key, node] : root) {
      if (key != "object") continue;
      const auto name = node.get<std::string>("name");
      const auto type = ParseDefectType(name);
      if (!type) throw FormatError("unknown class name '" + name + "'");
      Annotation a;
      a.type = *type;
      a.bbox.xmin = node.get<int>("bndbox.xmin") - 1;
      a.bbox.ymin = node.get<int>("bndbox.ymin") - 1;
      a.bbox.xmax = node.get<int>("bndbox.xmax");
      a.bbox.ymax = node.get<int>("bndbox.ymax");
      rec.defects.push_back(a);
    }
  } catch (const pt::ptree_error& e) {
    throw FormatError(std::string("incomplete VOC annotation: ") + e.what());
  }
  rec.Validate();
  return rec;
}

std::string ExportYolo(const AnnotationRecord& rec) {
  rec.Validate();
  const double w = rec.width;
  const double h = rec.height;
  std::string out;
  for (const auto& d : rec.defects) {
    const BBox& b = d.bbox;
    out += fmt::format("{} {:.6f} {:.6f} {:.6f} {:.6f}\n", ClassId(d.type),
                       (b.xmin + b.xmax) / 2.0 / w, (b.ymin + b.ymax) / 2.0 / h,
                       b.width() / w, b.height() / h);
  }
  return out;
}

AnnotationRecord ImportYolo(std::string_view text, int width, int height,
                            std::string image_id) {
  AnnotationRecord rec;
  rec.image_id = std::move(image_id);
  rec.filename = rec.image_id + ".png";
  rec.width = width;
  rec.height = height;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    int cls;
    double xc, yc, bw, bh;
    std::string extra;
    if (!(fields >> cls >> xc >> yc >> bw >> bh) || (fields >> extra)) {
      throw FormatError(fmt::format("line {}: expected '<class> <xc> <yc> <w> <h>'",
                                    lineno));
    }
    if (cls != 0 && cls != 1) {
      throw FormatError(fmt::format("line {}: unknown class id {}", lineno, cls));
    }
    Annotation a;
    a.type = static_cast<DefectType>(cls);
    a.bbox.xmin = static_cast<int>(std::lround((xc - bw / 2) * width));
    a.bbox.ymin = static_cast<int>(std::lround((yc - bh / 2) * height));
    a.bbox.xmax = static_cast<int>(std::lround((xc + bw / 2) * width));
    a.bbox.ymax = static_cast<int>(std::lround((yc + bh / 2) * height));
    rec.defects.push_back(a);
  }
  rec.Validate();
  return rec;
}

}  // namespace semsynth

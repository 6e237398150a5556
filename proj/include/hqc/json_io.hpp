// Copyright 2026 The HQC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "hqc/common.hpp"

namespace hqc {

using Json = nlohmann::ordered_json;

// Formats a double with 17 significant digits.
std::string fmt17(double x);

// Serializes with every floating-point value printed at 17 significant digits.
std::string dump_json(const Json &j, int indent = 2);

// Parses text, reporting syntax errors with line and column.
Json parse_json_text(const std::string &text, const std::string &source);
Json load_json_file(const std::string &path);

// Complex scalars are a number or a [re, im] pair.
cplx parse_complex(const Json &j, const std::string &where);
Json complex_to_json(cplx z);
CMat parse_cmatrix(const Json &j, const std::string &where);
Json cmatrix_to_json(const CMat &M);
CVec parse_cvector(const Json &j, const std::string &where);
Json cvector_to_json(const CVec &v);
MultiIndex parse_index(const Json &j, const std::string &where);

const Json &require(const Json &obj, const char *key, const std::string &where);

}  // namespace hqc

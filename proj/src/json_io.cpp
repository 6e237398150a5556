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

#include "hqc/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hqc {

std::string fmt17(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void emit(const Json &j, int indent, int depth, std::string &out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      bool flat = j.size() <= 8;
      for (const auto &e : j) flat = flat && e.is_primitive();
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? (indent < 0 ? "," : ", ") : ",";
        if (!flat) newline(depth + 1);
        emit(j[i], indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      out += fmt17(x);
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json &j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  out += '\n';
  return out;
}

Json parse_json_text(const std::string &text, const std::string &source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": JSON syntax error";
    throw ValidationError(os.str());
  }
}

Json load_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

const Json &require(const Json &obj, const char *key, const std::string &where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing field '" + key + "'");
  return *it;
}

cplx parse_complex(const Json &j, const std::string &where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError(where + ": expected a number or a [re, im] pair");
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

CMat parse_cmatrix(const Json &j, const std::string &where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a matrix");
  const size_t r = j.size();
  const size_t c = j[0].is_array() ? j[0].size() : 0;
  CMat M(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw ValidationError(where + ": ragged matrix");
    for (size_t k = 0; k < c; ++k) {
      M(i, k) = parse_complex(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return M;
}

Json cmatrix_to_json(const CMat &M) {
  Json out = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < M.cols(); ++k) row.push_back(complex_to_json(M(i, k)));
    out.push_back(row);
  }
  return out;
}

CVec parse_cvector(const Json &j, const std::string &where) {
  if (!j.is_array()) throw ValidationError(where + ": expected a vector");
  CVec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    v[i] = parse_complex(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

Json cvector_to_json(const CVec &v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

MultiIndex parse_index(const Json &j, const std::string &where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an integer list");
  MultiIndex n;
  for (const auto &e : j) {
    if (!e.is_number_integer() || e.get<long>() < 0) {
      throw ValidationError(where + ": entries must be non-negative integers");
    }
    n.push_back(e.get<int>());
  }
  return n;
}

}  // namespace hqc

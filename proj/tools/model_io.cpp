// Copyright 2026 The iidss Authors
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

#include "model_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace iid::io {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

int get_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::floor(v) == v) return static_cast<int>(v);
  }
  throw SchemaError(where + ": expected an integer");
}

double get_double(const Json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

cplx get_entry(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError(where + ": expected an [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

bool is_pair(const Json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

void check_allowed(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw SchemaError(where + ": unknown field '" + it.key() + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------- matrices

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": matrix must be a non-empty array");
  Matrix m(rows, cols);
  const bool flat = is_pair(j[0]) || j[0].is_number();
  if (flat) {
    if (static_cast<Eigen::Index>(j.size()) != rows * cols)
      throw SchemaError(where + ": flat matrix has " + std::to_string(j.size()) + " entries, expected " +
                        std::to_string(rows * cols));
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        m(r, c) = get_entry(j[r * cols + c], where + "[" + std::to_string(r * cols + c) + "]");
    return m;
  }
  if (static_cast<Eigen::Index>(j.size()) != rows)
    throw SchemaError(where + ": matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw SchemaError(where + ": row " + std::to_string(r) + " has the wrong length, expected " +
                        std::to_string(cols));
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = get_entry(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": matrix must be a non-empty array");
  Eigen::Index dim = 0;
  if (is_pair(j[0]) || j[0].is_number()) {
    dim = static_cast<Eigen::Index>(std::llround(std::sqrt(double(j.size()))));
    if (dim * dim != static_cast<Eigen::Index>(j.size())) throw SchemaError(where + ": flat matrix is not square");
  } else {
    dim = static_cast<Eigen::Index>(j.size());
  }
  return matrix_from_json(j, dim, dim, where);
}

// ---------------------------------------------------------------- models

LoadedModel example_model(const ExampleSpec& spec) {
  LoadedModel out{build_example(spec), spec};
  return out;
}

LoadedModel parse_model(const Json& doc, const ModelOverrides& ov) {
  if (!doc.is_object()) throw SchemaError("model: document must be a JSON object");
  check_allowed(doc, {"name", "sites", "local_dim", "statistics", "superselection", "hamiltonian", "lindblads",
                      "geometry"},
                "model");
  const Json& ham = field(doc, "hamiltonian", "model");

  if (ham.is_object() && ham.contains("example")) {
    check_allowed(ham, {"example", "params", "geometry"}, "hamiltonian");
    ExampleSpec spec = example_spec(get_int(ham["example"], "hamiltonian.example"));
    if (doc.contains("sites")) spec.n = get_int(doc["sites"], "sites");
    const Json* geo = ham.contains("geometry") ? &ham["geometry"] : doc.contains("geometry") ? &doc["geometry"] : nullptr;
    if (geo) {
      if (!geo->is_string()) throw SchemaError("geometry: expected a string");
      spec.geometry = geometry_from_string(geo->get<std::string>());
    }
    if (ham.contains("params")) {
      const Json& ps = ham["params"];
      if (!ps.is_object()) throw SchemaError("hamiltonian.params: expected an object");
      for (auto it = ps.begin(); it != ps.end(); ++it)
        spec.params[it.key()] = get_double(it.value(), "hamiltonian.params." + it.key());
    }
    if (ov.n) spec.n = *ov.n;
    if (ov.geometry) spec.geometry = *ov.geometry;
    for (const auto& [k, v] : ov.params) spec.params[k] = v;
    LoadedModel out = example_model(spec);
    if (doc.contains("name")) out.model.set_name(doc["name"].get<std::string>());
    if (doc.contains("lindblads") && !doc["lindblads"].empty())
      throw SchemaError("lindblads: example documents take their channels from the example");
    return out;
  }

  if (!ov.params.empty()) throw SchemaError("--param applies to example models only");
  const int d = get_int(field(doc, "local_dim", "model"), "local_dim");
  const int n = ov.n ? *ov.n : get_int(field(doc, "sites", "model"), "sites");
  const std::string stats = doc.contains("statistics") ? doc["statistics"].get<std::string>() : "spin";
  const Statistics st = statistics_from_string(stats);
  bool ss = st == Statistics::fermion || st == Statistics::truncated_boson || st == Statistics::hardcore_boson;
  if (doc.contains("superselection")) {
    if (!doc["superselection"].is_boolean()) throw SchemaError("superselection: expected a boolean");
    ss = doc["superselection"].get<bool>();
  }
  LatticeModel m(n, LocalSpace::from_description(d, st, ss), doc.value("name", std::string("model")));

  if (!ham.is_object()) throw SchemaError("hamiltonian: expected an object");
  check_allowed(ham, {"two_site", "one_site"}, "hamiltonian");
  if (ham.contains("two_site")) {
    const Json& ts = ham["two_site"];
    if (!ts.is_array()) throw SchemaError("hamiltonian.two_site: expected an array");
    for (size_t k = 0; k < ts.size(); ++k) {
      const std::string where = "hamiltonian.two_site[" + std::to_string(k) + "]";
      check_allowed(ts[k], {"i", "j", "matrix"}, where);
      const int i = get_int(field(ts[k], "i", where), where + ".i");
      const int j = get_int(field(ts[k], "j", where), where + ".j");
      if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw SchemaError(where + ": sites must be distinct and lie in [0, " + std::to_string(n) + ")");
      m.add_two_site(i, j, matrix_from_json(field(ts[k], "matrix", where), d * d, d * d, where + ".matrix"));
    }
  }
  if (ham.contains("one_site")) {
    const Json& os = ham["one_site"];
    if (!os.is_array()) throw SchemaError("hamiltonian.one_site: expected an array");
    for (size_t k = 0; k < os.size(); ++k) {
      const std::string where = "hamiltonian.one_site[" + std::to_string(k) + "]";
      check_allowed(os[k], {"i", "matrix"}, where);
      const int i = get_int(field(os[k], "i", where), where + ".i");
      if (i < 0 || i >= n) throw SchemaError(where + ": site out of range");
      m.add_one_site(i, matrix_from_json(field(os[k], "matrix", where), d, d, where + ".matrix"));
    }
  }
  if (doc.contains("lindblads")) {
    const Json& ls = doc["lindblads"];
    if (!ls.is_array()) throw SchemaError("lindblads: expected an array");
    for (size_t k = 0; k < ls.size(); ++k) {
      const std::string where = "lindblads[" + std::to_string(k) + "]";
      check_allowed(ls[k], {"site", "label", "matrix", "rate"}, where);
      const int s = get_int(field(ls[k], "site", where), where + ".site");
      if (s < 0 || s >= n) throw SchemaError(where + ": site out of range");
      const double rate = ls[k].contains("rate") ? get_double(ls[k]["rate"], where + ".rate") : 1.0;
      if (!(rate >= 0.0)) throw SchemaError(where + ": rate must be >= 0");
      const std::string label = ls[k].value("label", "L" + std::to_string(k));
      m.add_lindblad(s, label, matrix_from_json(field(ls[k], "matrix", where), d, d, where + ".matrix"), rate);
    }
  }
  return {std::move(m), std::nullopt};
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

LoadedModel load_model_file(const std::string& path, const ModelOverrides& ov) {
  const Json doc = parse_json_file(path);
  try {
    return parse_model(doc, ov);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Json model_to_json(const LatticeModel& model) {
  const LocalSpace& sp = model.space();
  Json doc;
  doc["name"] = model.name();
  doc["sites"] = model.n();
  doc["local_dim"] = sp.dim;
  doc["statistics"] = to_string(sp.statistics);
  doc["superselection"] = sp.superselection;
  Json two = Json::array(), one = Json::array(), ls = Json::array();
  for (const auto& t : model.two_site_terms()) two.push_back(Json{{"i", t.i}, {"j", t.j}, {"matrix", matrix_to_json(t.h)}});
  for (const auto& t : model.one_site_terms()) one.push_back(Json{{"i", t.site}, {"matrix", matrix_to_json(t.h)}});
  for (const auto& l : model.lindblads())
    ls.push_back(Json{{"site", l.site}, {"label", l.label}, {"matrix", matrix_to_json(l.raw)}, {"rate", l.rate}});
  doc["hamiltonian"] = Json{{"two_site", two}, {"one_site", one}};
  doc["lindblads"] = ls;
  return doc;
}

Matrix load_state_file(const std::string& path, Eigen::Index dim) {
  const Json doc = parse_json_file(path);
  const Json& m = doc.is_object() ? field(doc, "matrix", path) : doc;
  return matrix_from_json(m, dim, dim, path);
}

// ---------------------------------------------------------------- writer

std::string format_double(double x) {
  char buf[32];
  if (x == 0.0) x = 0.0;  // no "-0": it would not survive a round trip through the parser
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_value(std::ostream& os, const Json& j, int indent) {
  const std::string pad(2 * (indent + 1), ' '), close(2 * indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << "{\n";
      size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        os << pad << Json(it.key()).dump() << ": ";
        write_value(os, it.value(), indent + 1);
        os << (k + 1 < j.size() ? ",\n" : "\n");
      }
      os << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      // Arrays of scalars, e.g. [re, im] pairs, stay on one line.
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      if (scalars) {
        os << "[";
        for (size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          write_value(os, j[k], indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (size_t k = 0; k < j.size(); ++k) {
        os << pad;
        write_value(os, j[k], indent + 1);
        os << (k + 1 < j.size() ? ",\n" : "\n");
      }
      os << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x)) os << format_double(x);
      else os << "null";
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const Json& j) {
  write_value(os, j, 0);
  os << "\n";
}

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

}  // namespace iid::io

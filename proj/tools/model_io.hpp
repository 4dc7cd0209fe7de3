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

#pragma once

#include "iid/models.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace iid::io {

using Json = nlohmann::ordered_json;

// Malformed model or state files; the message names the offending field.
struct SchemaError : InvalidParams {
  using InvalidParams::InvalidParams;
};

struct LoadedModel {
  LatticeModel model;
  std::optional<ExampleSpec> example;  // set for {example, params} documents
};

// Overrides applied on top of a document (CLI --n / --param / --geometry).
struct ModelOverrides {
  std::optional<int> n;
  std::optional<Geometry> geometry;
  std::map<std::string, double> params;
};

// Schema:
//   {name, sites, local_dim, statistics, superselection,
//    hamiltonian: {two_site: [{i, j, matrix}], one_site: [{i, matrix}]}
//               | {example, params, geometry},
//    lindblads: [{site, label, matrix, rate}]}
// Matrices are row-major: either a list of rows of [re, im] pairs or a flat
// list of d·d pairs. Example documents may omit the space fields.
LoadedModel parse_model(const Json& doc, const ModelOverrides& ov = {});
LoadedModel load_model_file(const std::string& path, const ModelOverrides& ov = {});
LoadedModel example_model(const ExampleSpec& spec);

// Explicit-matrix document; parse_model(model_to_json(m)) reproduces m.
Json model_to_json(const LatticeModel& model);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols, const std::string& where);
// Square matrix of unknown size.
Matrix matrix_from_json(const Json& j, const std::string& where);

// A state file holds a matrix, or {"matrix": ...}; `dim` is the expected size.
Matrix load_state_file(const std::string& path, Eigen::Index dim);

Json parse_json_file(const std::string& path);

// Deterministic writer: object order preserved, floats as %.17g, two-space
// indent. Non-finite numbers become null.
void write_json(std::ostream& os, const Json& j);
std::string dump_json(const Json& j);
std::string format_double(double x);

}  // namespace iid::io

// Copyright 2026 The MQPT Authors
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

#include "mqpt/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mqpt {

using nlohmann::json;

namespace {

Complex parse_entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw IoError("matrix file: entry must be a number or [re, im]");
}

}  // namespace

MatrixFile parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("matrix file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw IoError("matrix file: missing \"rows\" array");
  MatrixFile out;
  out.name = doc.value("name", std::string{});
  out.convention = doc.value("convention", std::string("ptm"));
  const double scale = doc.value("scale", 1.0);
  const auto& rows = doc["rows"];
  const auto r = static_cast<Index>(rows.size());
  if (r == 0) throw IoError("matrix file: empty matrix");
  out.matrix.resize(r, r);
  for (Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != r)
      throw IoError("matrix file: matrix must be square");
    for (Index j = 0; j < r; ++j)
      out.matrix(i, j) = scale * parse_entry(row[static_cast<std::size_t>(j)]);
  }
  try {
    const int inferred = out.convention == "unitary" ? qubits_for_dimension(r)
                                                     : qubits_for_superdimension(r);
    out.n = doc.value("n", inferred);
    if (out.n != inferred)
      throw IoError("matrix file: \"n\" does not match the matrix size");
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("matrix file: ") + e.what());
  }
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix_json(buf.str());
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string matrix_to_json(const MatrixFile& file) {
  const bool real = file.matrix.imag().cwiseAbs().maxCoeff() == 0.0;
  json rows = json::array();
  for (Index i = 0; i < file.matrix.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < file.matrix.cols(); ++j) {
      const Complex v = file.matrix(i, j);
      if (real)
        row.push_back(v.real());
      else
        row.push_back(json::array({v.real(), v.imag()}));
    }
    rows.push_back(std::move(row));
  }
  json doc;
  if (!file.name.empty()) doc["name"] = file.name;
  doc["n"] = file.n;
  doc["convention"] = file.convention;
  doc["rows"] = std::move(rows);
  return doc.dump(1);
}

void write_matrix_file(const std::string& path, const MatrixFile& file) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << matrix_to_json(file) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

Matrix real_matrix(const MatrixFile& file) {
  if (file.matrix.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalError("matrix file: expected real entries for convention " +
                         file.convention);
  return file.matrix.real();
}

PauliTransferMatrix ptm_from_file(const MatrixFile& file) {
  const auto& c = file.convention;
  if (c == "ptm" || c == "error") return PauliTransferMatrix(file.n, real_matrix(file));
  if (c == "liouville")
    return ptm_from_liouville(LiouvilleSuperoperator(file.n, file.matrix));
  if (c == "choi") return ptm_from_choi(ChoiMatrix(file.n, file.matrix));
  if (c == "unitary") return target_ptm(file.matrix);
  throw IoError("matrix file: unknown convention \"" + c + "\"");
}

MatrixFile to_file(const PauliTransferMatrix& r, std::string name) {
  return MatrixFile{std::move(name), r.qubits(), "ptm", r.matrix().cast<Complex>()};
}

MatrixFile to_file(const ErrorMatrix& e, std::string name) {
  return MatrixFile{std::move(name), e.qubits(), "error", e.matrix().cast<Complex>()};
}

}  // namespace mqpt

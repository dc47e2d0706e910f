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

#pragma once

#include <string>
#include <string_view>

#include "mqpt/channel.hpp"

namespace mqpt {

/// Contents of a matrix file:
///   {"n": 1, "convention": "ptm", "scale": 1e-3, "rows": [[...], ...]}
/// Entries are numbers or [re, im] pairs. "scale" is optional and is
/// already applied to `matrix`. Conventions: ptm, error, liouville, choi,
/// unitary.
struct MatrixFile {
  std::string name;
  int n = 0;
  std::string convention;
  CMatrix matrix;
};

MatrixFile parse_matrix_json(std::string_view text);
MatrixFile read_matrix_file(const std::string& path);

/// Real matrices are written with plain numbers, complex ones as pairs.
std::string matrix_to_json(const MatrixFile& file);
void write_matrix_file(const std::string& path, const MatrixFile& file);

/// Real part of a file matrix; throws NumericalError on imaginary content.
Matrix real_matrix(const MatrixFile& file);

/// Interprets any supported convention as a channel PTM (a unitary is
/// turned into its target PTM).
PauliTransferMatrix ptm_from_file(const MatrixFile& file);

MatrixFile to_file(const PauliTransferMatrix& r, std::string name = {});
MatrixFile to_file(const ErrorMatrix& e, std::string name = {});

}  // namespace mqpt

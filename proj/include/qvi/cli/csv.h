// Copyright 2026 The qvi Authors
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

// RFC 4180 style CSV: header row, comma separator, LF line endings, fields
// quoted only when they contain a comma, quote or newline. Doubles are written
// with 17 significant digits so they parse back to the same value.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace qvi::cli {

using CsvCell = std::variant<double, std::int64_t, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

std::string FormatDouble(double v);

// Throws InputError if a row's width differs from the header's.
std::string FormatCsv(const CsvTable& table);

// Throws std::runtime_error on I/O failure.
void EmitCsv(const CsvTable& table, const std::filesystem::path& path);

// Minimal reader for files written by EmitCsv (used by tests and tooling).
std::vector<std::vector<std::string>> ParseCsv(const std::string& text);

}  // namespace qvi::cli

/* Copyright 2026 The Occlbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef OCCLBENCH_CSV_H_
#define OCCLBENCH_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace occlbench {

// Minimal comma-separated table: no quoting, so fields must not contain
// commas or newlines. Lines starting with '#' are comments.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Throws FormatError on a row whose width differs from the header.
CsvTable ParseCsv(std::string_view text);
std::string WriteCsv(const CsvTable& table);

// Throws ParseError naming `column` when `field` is not a number.
double ParseCsvNumber(std::string_view field, std::string_view column);

}  // namespace occlbench

#endif  // OCCLBENCH_CSV_H_

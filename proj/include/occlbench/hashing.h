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
#ifndef OCCLBENCH_HASHING_H_
#define OCCLBENCH_HASHING_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace occlbench {

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::filesystem::path& path);

// Digest over the sorted regular files of `dir` (non-recursive): each file
// contributes "<name>\n<sha256 of contents>\n". Files named in `exclude` are
// skipped.
std::string HashDirectory(const std::filesystem::path& dir,
                          std::string_view exclude = {});

}  // namespace occlbench

#endif  // OCCLBENCH_HASHING_H_

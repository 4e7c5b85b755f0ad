// Copyright 2026 The Metamorph Authors.
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

#include <filesystem>
#include <string>
#include <vector>

#include "metamorph/files.hpp"
#include "metamorph/syntax.hpp"

namespace metamorph::testing {

inline std::filesystem::path fixtures() { return METAMORPH_FIXTURES; }
inline std::filesystem::path fixture(const std::string& rel) { return fixtures() / rel; }

inline CompilationUnit load_unit(const std::string& rel) {
  return parse_source(read_file(fixture(rel)));
}

/// Every parsable fixture unit used by the corpus-wide checks.
inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const char* dir : {"corpus", "sensitivity", "small_domain", "permute"}) {
    if (!std::filesystem::is_directory(fixture(dir))) continue;
    for (auto& p : list_java_files(fixture(dir))) out.push_back(p);
  }
  return out;
}

/// Scratch directory under the system temp dir, emptied on creation.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("metamorph_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace metamorph::testing

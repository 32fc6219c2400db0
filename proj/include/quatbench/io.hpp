// Copyright 2026 The quatbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small file and number formatting helpers shared by the CSV/JSON writers.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace quatbench {

// Shortest representation that parses back to the same double.
std::string format_number(double value);

// Parses a full string as a double; throws Error(Parse) otherwise.
double parse_number(std::string_view text);

std::string read_file(const std::filesystem::path& path);

// Creates parent directories as needed. Throws Error(Io) naming the path.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace quatbench

// Copyright 2026 The viewbench Authors
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

#ifndef VIEWBENCH_IO_HPP_
#define VIEWBENCH_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace viewbench {

std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

// "fnv1a64:" followed by 16 lowercase hex digits.
std::string hash_tag(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string hash_file(const std::filesystem::path& path);

// Library version string.
const char* version();

}  // namespace viewbench

#endif  // VIEWBENCH_IO_HPP_

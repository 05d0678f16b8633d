// Copyright 2026 The hdaccess Authors
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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hdaccess
{

  std::vector<std::string_view> split_lines(std::string_view text);

  /// Drop a trailing '#' comment and surrounding whitespace.
  std::string_view strip_comment(std::string_view line);

  std::string_view trim(std::string_view s);

  /// Parse hex digits with an optional 0x/0X prefix and optional h/H
  /// suffix. Empty result on junk or a value above `max`.
  std::optional<uint32_t> parse_hex(std::string_view s, uint32_t max);

  std::optional<uint32_t> parse_decimal(std::string_view s, uint32_t max);

  std::string read_file(const std::string& path);
  void write_file(const std::string& path, std::string_view bytes);

}

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

#include "hdaccess/text.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hdaccess/error.hpp"

namespace hdaccess
{

  std::vector<std::string_view> split_lines(std::string_view text)
  {
    std::vector<std::string_view> lines;
    while (!text.empty())
      {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r')
          line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos)
          break;
        text.remove_prefix(nl + 1);
      }
    return lines;
  }

  std::string_view trim(std::string_view s)
  {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front()))
      s.remove_prefix(1);
    while (!s.empty() && ws(s.back()))
      s.remove_suffix(1);
    return s;
  }

  std::string_view strip_comment(std::string_view line)
  {
    return trim(line.substr(0, line.find('#')));
  }

  namespace
  {
    std::optional<uint32_t> parse_base(std::string_view s, uint32_t max, int base)
    {
      s = trim(s);
      if (s.empty())
        return std::nullopt;
      uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
      if (ec != std::errc() || ptr != s.data() + s.size() || value > max)
        return std::nullopt;
      return static_cast<uint32_t>(value);
    }
  }

  std::optional<uint32_t> parse_hex(std::string_view s, uint32_t max)
  {
    s = trim(s);
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
      s.remove_prefix(2);
    else if (s.size() > 1 && (s.back() == 'h' || s.back() == 'H'))
      s.remove_suffix(1);
    return parse_base(s, max, 16);
  }

  std::optional<uint32_t> parse_decimal(std::string_view s, uint32_t max)
  {
    return parse_base(s, max, 10);
  }

  std::string read_file(const std::string& path)
  {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write_file(const std::string& path, std::string_view bytes)
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
      throw Error("short write to " + path);
  }

}

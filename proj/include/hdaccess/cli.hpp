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

#include <iosfwd>
#include <string>
#include <vector>

namespace hdaccess::service
{

  inline constexpr int exit_ok = 0;
  inline constexpr int exit_error = 1;
  inline constexpr int exit_usage = 2;

  /// Entry point of the hda-access tool. args[0] is the program name.
  int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}

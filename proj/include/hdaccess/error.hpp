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

#include <stdexcept>
#include <string>

namespace hdaccess
{

  /// Base of every error raised by the library.
  class Error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// A verb command does not fit its wire form.
  class EncodeError : public Error
  {
  public:
    using Error::Error;
  };

  /// A PCI config access named an address with no function behind it.
  class NoSuchDevice : public Error
  {
  public:
    using Error::Error;
  };

  class ControllerNotFound : public Error
  {
  public:
    ControllerNotFound() : Error("controller not found") {}
  };

  class BarUnassigned : public Error
  {
  public:
    BarUnassigned() : Error("BAR unassigned") {}
  };

  /// ICIS.ICB stayed set for the whole polling budget before a command
  /// could be issued.
  class BusyTimeout : public Error
  {
  public:
    using Error::Error;
  };

  /// ICIS.IRV never came up within the polling budget after arming.
  class ResponseTimeout : public Error
  {
  public:
    using Error::Error;
  };

  class NoBeepGenerator : public Error
  {
  public:
    NoBeepGenerator() : Error("no beep generator") {}
  };

  /// Malformed profile or form document. The message names the
  /// offending key path.
  class ParseError : public Error
  {
  public:
    using Error::Error;
  };

}

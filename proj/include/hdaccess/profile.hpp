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

#include <string>
#include <string_view>

#include "hdaccess/codec.hpp"
#include "hdaccess/controller.hpp"

namespace hdaccess::hda
{

  /// Machine description: controller identity plus the codec at cad 0.
  struct Profile
  {
    ControllerConfig controller;
    CodecProfile codec;

    bool operator==(const Profile&) const = default;
  };

  /// Parse a JSON profile document:
  ///
  ///   {
  ///     "name": "cx-default",
  ///     "identity": {"vendor_response": "0x14F1510F", "revision_response": "0x00100100"},
  ///     "controller": {"pci": "0:27:0", "vendor_id": "0x8086", "device_id": "0x1D20",
  ///                    "bar_base": "0xFEB00000", "latency_steps": 1},
  ///     "nodes": [
  ///       {"nid": "0x00", "kind": "root", "subordinates": {"start": "0x01", "count": 1}},
  ///       {"nid": "0x12", "kind": "beep-generator", "params": {"0x09": "0x00700000"}}
  ///     ]
  ///   }
  ///
  /// Numbers may be JSON integers or hex strings. Missing controller keys
  /// take ControllerConfig defaults. Throws ParseError naming the key.
  Profile load_profile(std::string_view document);

  Profile load_profile_file(const std::string& path);

  /// Inverse of load_profile; output is stable and re-parses equal.
  std::string dump_profile(const Profile& profile);

  /// Built-in copy of profiles/cx-default.json.
  Profile default_profile();

}

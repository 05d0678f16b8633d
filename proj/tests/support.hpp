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

#include <random>

#include "hdaccess/verb.hpp"

namespace hdaccess::testing
{

  /// Uniform over commands the catalog can round-trip: long ids drawn
  /// from the catalog's long verbs, short ids from the rest of 0..0xFFF.
  inline hda::VerbCommand random_command(std::mt19937& rng, const hda::VerbCatalog& catalog)
  {
    std::uniform_int_distribution<unsigned> cad(0, 15), nid(0, 255), short_id(0, 0xFFF),
      u8(0, 0xFF), u16(0, 0xFFFF), coin(0, 1), nibble(0, 15);
    hda::VerbCommand cmd;
    cmd.cad = hda::CodecAddress(cad(rng));
    cmd.nid = hda::NodeId(nid(rng));
    if (coin(rng))
      {
        unsigned id;
        do
          id = nibble(rng);
        while (!catalog.is_long_id(id));
        cmd.verb = hda::VerbId::long4(id);
        cmd.payload = uint16_t(u16(rng));
      }
    else
      {
        unsigned id;
        do
          id = short_id(rng);
        while (catalog.is_long_id(id >> 8));
        cmd.verb = hda::VerbId::short12(id);
        cmd.payload = uint16_t(u8(rng));
      }
    return cmd;
  }

  /// Independent bit assembly: the command word as a sum of fields
  /// scaled by powers of two.
  inline uint64_t oracle_word(const hda::VerbCommand& cmd)
  {
    uint64_t w = uint64_t(cmd.cad.value()) * (1ull << 28) + uint64_t(cmd.nid.value()) * (1ull << 20);
    if (cmd.verb.form == hda::VerbForm::Long4)
      w += uint64_t(cmd.verb.id) * 65536 + cmd.payload;
    else
      w += uint64_t(cmd.verb.id) * 256 + cmd.payload;
    return w;
  }

}

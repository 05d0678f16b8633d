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

#include "hdaccess/verb.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "hdaccess/error.hpp"
#include "hdaccess/text.hpp"

namespace hdaccess::hda
{

  namespace
  {
    constexpr unsigned cad_shift = 28;
    constexpr unsigned nid_shift = 20;
    constexpr unsigned long_id_shift = 16;
    constexpr unsigned short_id_shift = 8;
  }

  CodecAddress::CodecAddress(unsigned value)
  {
    if (value > 0xF)
      throw std::out_of_range("codec address " + std::to_string(value) + " exceeds 15");
    value_ = static_cast<uint8_t>(value);
  }

  NodeId::NodeId(unsigned value)
  {
    if (value > 0xFF)
      throw std::out_of_range("node id " + std::to_string(value) + " exceeds 255");
    value_ = static_cast<uint8_t>(value);
  }

  VerbId VerbId::short12(unsigned id)
  {
    if (id > 0xFFF)
      throw std::out_of_range("12-bit verb id out of range");
    return {VerbForm::Short12, static_cast<uint16_t>(id)};
  }

  VerbId VerbId::long4(unsigned id)
  {
    if (id > 0xF)
      throw std::out_of_range("4-bit verb id out of range");
    return {VerbForm::Long4, static_cast<uint16_t>(id)};
  }

  void VerbCatalog::check_unique(std::string_view name, VerbId id) const
  {
    if (find(name))
      throw std::invalid_argument("duplicate verb name " + std::string(name));
    if (find(id))
      throw std::invalid_argument("duplicate verb id for " + std::string(name));
  }

  void VerbCatalog::add(std::string name, VerbId id, VerbDirection direction)
  {
    check_unique(name, id);
    entries_.push_back({std::move(name), id, direction, std::nullopt});
  }

  void VerbCatalog::add_pair(std::string get_name, VerbId get_id,
                             std::string set_name, VerbId set_id)
  {
    if (get_name == set_name || get_id == set_id)
      throw std::invalid_argument("verb paired with itself");
    check_unique(get_name, get_id);
    check_unique(set_name, set_id);
    entries_.push_back({get_name, get_id, VerbDirection::Get, set_name});
    entries_.push_back({set_name, set_id, VerbDirection::Set, get_name});
  }

  const VerbEntry* VerbCatalog::find(std::string_view name) const
  {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const VerbEntry& e) { return e.name == name; });
    return it == entries_.end() ? nullptr : &*it;
  }

  const VerbEntry* VerbCatalog::find(VerbId id) const
  {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const VerbEntry& e) { return e.id == id; });
    return it == entries_.end() ? nullptr : &*it;
  }

  const VerbEntry& VerbCatalog::lookup(std::string_view name) const
  {
    if (auto* e = find(name))
      return *e;
    throw std::out_of_range("unknown verb " + std::string(name));
  }

  const VerbEntry* VerbCatalog::pair_of(const VerbEntry& entry) const
  {
    return entry.pair ? find(*entry.pair) : nullptr;
  }

  bool VerbCatalog::is_long_id(unsigned nibble) const
  {
    return std::any_of(entries_.begin(), entries_.end(), [&](const VerbEntry& e) {
      return e.id.form == VerbForm::Long4 && e.id.id == nibble;
    });
  }

  bool VerbCatalog::is_valid(const VerbCommand& cmd) const
  {
    if (cmd.payload > cmd.verb.payload_max())
      return false;
    if (cmd.verb.form == VerbForm::Long4)
      return is_long_id(cmd.verb.id);
    // A short id whose top nibble is a long id would decode as Long4.
    return !is_long_id(cmd.verb.id >> 8);
  }

  std::string VerbCatalog::name_of(VerbId id) const
  {
    if (auto* e = find(id))
      return e->name;
    char buf[16];
    if (id.form == VerbForm::Long4)
      std::snprintf(buf, sizeof buf, "verb-0x%X", id.id);
    else
      std::snprintf(buf, sizeof buf, "verb-0x%03X", id.id);
    return buf;
  }

  VerbCatalog default_catalog()
  {
    VerbCatalog c;
    c.add("GetParameter", verbs::get_parameter, VerbDirection::Get);
    c.add_pair("GetConnectionSelect", VerbId::short12(0xF01),
               "SetConnectionSelect", VerbId::short12(0x701));
    c.add("GetConnectionListEntry", VerbId::short12(0xF02), VerbDirection::Get);
    c.add_pair("GetPowerState", VerbId::short12(0xF05),
               "SetPowerState", VerbId::short12(0x705));
    c.add_pair("GetConverterStream", VerbId::short12(0xF06),
               "SetConverterStream", VerbId::short12(0x706));
    c.add_pair("GetPinWidgetControl", VerbId::short12(0xF07),
               "SetPinWidgetControl", VerbId::short12(0x707));
    c.add_pair("GetBeepControl", verbs::get_beep_control,
               "SetBeepControl", verbs::set_beep_control);
    c.add_pair("GetAmpGainMute", verbs::get_amp_gain_mute,
               "SetAmpGainMute", verbs::set_amp_gain_mute);
    c.add_pair("GetConverterFormat", verbs::get_converter_format,
               "SetConverterFormat", verbs::set_converter_format);
    c.add("FunctionReset", VerbId::short12(0x7FF), VerbDirection::Set);
    return c;
  }

  uint32_t encode_command(const VerbCommand& cmd)
  {
    if (cmd.payload > cmd.verb.payload_max())
      throw EncodeError("payload " + hex32(cmd.payload) + " overflows verb form");

    uint32_t low = cmd.verb.form == VerbForm::Short12
      ? (uint32_t(cmd.verb.id) << short_id_shift) | cmd.payload
      : (uint32_t(cmd.verb.id) << long_id_shift) | cmd.payload;

    return (uint32_t(cmd.cad.value()) << cad_shift)
      | (uint32_t(cmd.nid.value()) << nid_shift)
      | low;
  }

  VerbCommand decode_command(uint32_t word, const VerbCatalog& catalog)
  {
    VerbCommand cmd;
    cmd.cad = CodecAddress(word >> cad_shift);
    cmd.nid = NodeId((word >> nid_shift) & 0xFF);

    unsigned nibble = (word >> long_id_shift) & 0xF;
    if (catalog.is_long_id(nibble))
      {
        cmd.verb = VerbId::long4(nibble);
        cmd.payload = static_cast<uint16_t>(word & 0xFFFF);
      }
    else
      {
        cmd.verb = VerbId::short12((word >> short_id_shift) & 0xFFF);
        cmd.payload = static_cast<uint16_t>(word & 0xFF);
      }
    return cmd;
  }

  std::string format_command(const VerbCommand& cmd, const VerbCatalog& catalog)
  {
    char buf[96];
    if (cmd.verb.form == VerbForm::Long4)
      std::snprintf(buf, sizeof buf, "%u 0x%02X %s 0x%04X", cmd.cad.value(),
                    cmd.nid.value(), catalog.name_of(cmd.verb).c_str(), cmd.payload);
    else
      std::snprintf(buf, sizeof buf, "%u 0x%02X %s 0x%02X", cmd.cad.value(),
                    cmd.nid.value(), catalog.name_of(cmd.verb).c_str(), cmd.payload);
    return buf;
  }

  std::vector<std::string> decode_trace(std::string_view text, const VerbCatalog& catalog)
  {
    std::vector<std::string> out;
    unsigned line_no = 0;
    for (std::string_view line : split_lines(text))
      {
        ++line_no;
        line = strip_comment(line);
        if (line.empty())
          continue;
        auto word = parse_hex(line, 0xFFFFFFFFu);
        if (!word)
          throw ParseError("line " + std::to_string(line_no) + ": not a 32-bit hex word: "
                           + std::string(line));
        out.push_back(format_command(decode_command(*word, catalog), catalog));
      }
    return out;
  }

  std::string hex32(uint32_t value)
  {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08X", value);
    return buf;
  }

}

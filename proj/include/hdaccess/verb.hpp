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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hdaccess::hda
{

  /// Codec address on the link (command word bits 31:28).
  class CodecAddress
  {
  public:
    constexpr CodecAddress() = default;
    explicit CodecAddress(unsigned value);

    constexpr unsigned value() const
    { return value_; }

    auto operator<=>(const CodecAddress&) const = default;

  private:
    uint8_t value_ = 0;
  };

  /// Widget node identifier (command word bits 27:20).
  class NodeId
  {
  public:
    constexpr NodeId() = default;
    explicit NodeId(unsigned value);

    constexpr unsigned value() const
    { return value_; }

    auto operator<=>(const NodeId&) const = default;

  private:
    uint8_t value_ = 0;
  };

  /// Verbs come in two wire forms: a 12-bit id with an 8-bit payload,
  /// or a 4-bit id with a 16-bit payload.
  enum class VerbForm : uint8_t { Short12, Long4 };

  struct VerbId
  {
    VerbForm form = VerbForm::Short12;
    uint16_t id = 0;

    static VerbId short12(unsigned id);
    static VerbId long4(unsigned id);

    /// Largest payload this form can carry.
    constexpr unsigned payload_max() const
    { return form == VerbForm::Short12 ? 0xFFu : 0xFFFFu; }

    auto operator<=>(const VerbId&) const = default;
  };

  struct VerbCommand
  {
    CodecAddress cad;
    NodeId nid;
    VerbId verb;
    uint16_t payload = 0;

    auto operator<=>(const VerbCommand&) const = default;
  };

  struct VerbResponse
  {
    uint32_t raw = 0;

    auto operator<=>(const VerbResponse&) const = default;
  };

  /// Well-known verb ids the simulator and client speak directly.
  namespace verbs
  {
    inline constexpr VerbId get_parameter{VerbForm::Short12, 0xF00};
    inline constexpr VerbId get_beep_control{VerbForm::Short12, 0xF0A};
    inline constexpr VerbId set_beep_control{VerbForm::Short12, 0x70A};
    inline constexpr VerbId get_amp_gain_mute{VerbForm::Long4, 0xB};
    inline constexpr VerbId set_amp_gain_mute{VerbForm::Long4, 0x3};
    inline constexpr VerbId get_converter_format{VerbForm::Long4, 0xA};
    inline constexpr VerbId set_converter_format{VerbForm::Long4, 0x2};
  }

  /// GetParameter payloads.
  namespace params
  {
    inline constexpr uint8_t vendor_id = 0x00;
    inline constexpr uint8_t revision_id = 0x02;
    inline constexpr uint8_t subordinate_node_count = 0x04;
    inline constexpr uint8_t function_group_type = 0x05;
    inline constexpr uint8_t audio_group_caps = 0x08;
    inline constexpr uint8_t widget_caps = 0x09;
  }

  enum class VerbDirection : uint8_t { Get, Set };

  struct VerbEntry
  {
    std::string name;
    VerbId id;
    VerbDirection direction = VerbDirection::Get;
    std::optional<std::string> pair;
  };

  /// Named verb table. Get/set pairs are registered together so the
  /// pairing is always symmetric; ids and names are unique.
  class VerbCatalog
  {
  public:
    /// Register a verb with no counterpart. Throws std::invalid_argument
    /// on a duplicate name or id.
    void add(std::string name, VerbId id, VerbDirection direction);

    /// Register a get verb and its matching set verb.
    void add_pair(std::string get_name, VerbId get_id,
                  std::string set_name, VerbId set_id);

    const VerbEntry* find(std::string_view name) const;
    const VerbEntry* find(VerbId id) const;

    /// Like find() but throws std::out_of_range for unknown names.
    const VerbEntry& lookup(std::string_view name) const;

    /// The paired entry of `entry`, or nullptr.
    const VerbEntry* pair_of(const VerbEntry& entry) const;

    /// True if bits 19:16 equal to `nibble` select the long form.
    bool is_long_id(unsigned nibble) const;

    /// A command is valid under this catalog if its payload fits and it
    /// cannot be mistaken for the other form when decoded.
    bool is_valid(const VerbCommand& cmd) const;

    /// Display name for an id; unknown ids render as "verb-0xNNN".
    std::string name_of(VerbId id) const;

    const std::vector<VerbEntry>& entries() const
    { return entries_; }

  private:
    void check_unique(std::string_view name, VerbId id) const;

    std::vector<VerbEntry> entries_;
  };

  VerbCatalog default_catalog();

  /// Assemble the 32-bit command word. Throws EncodeError if the payload
  /// does not fit the verb form.
  uint32_t encode_command(const VerbCommand& cmd);

  /// Total inverse of encode_command. Bits 19:16 matching a long-form id
  /// of `catalog` select Long4, anything else decodes as Short12.
  VerbCommand decode_command(uint32_t word, const VerbCatalog& catalog);

  /// "cad nid verb-name payload", e.g. "0 0x12 SetBeepControl 0x30".
  std::string format_command(const VerbCommand& cmd, const VerbCatalog& catalog);

  /// Decode a verb trace: one hex word per line, blank lines and '#'
  /// comments skipped. Throws ParseError naming the line on bad input.
  std::vector<std::string> decode_trace(std::string_view text, const VerbCatalog& catalog);

  /// "0x%08X"
  std::string hex32(uint32_t value);

}

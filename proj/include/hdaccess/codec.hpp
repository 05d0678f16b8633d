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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdaccess/verb.hpp"

namespace hdaccess::hda
{

  /// Node kinds. Widget kinds mirror the 4-bit type field (bits 23:20) of
  /// the widget capabilities parameter; root and function-group are the
  /// two grouping levels above them.
  enum class WidgetKind : uint8_t
  {
    Root,
    FunctionGroup,
    AudioOutput,
    AudioInput,
    AudioMixer,
    AudioSelector,
    Pin,
    Power,
    VolumeKnob,
    BeepGenerator,
    VendorDefined,
    Reserved,
  };

  std::string_view to_string(WidgetKind kind);
  std::optional<WidgetKind> widget_kind_from_string(std::string_view name);

  /// Kind encoded by a widget capabilities word.
  WidgetKind widget_kind_from_caps(uint32_t caps);

  /// Type field value for a widget kind; empty for grouping kinds.
  std::optional<unsigned> widget_type_field(WidgetKind kind);

  inline bool is_grouping(WidgetKind kind)
  { return kind == WidgetKind::Root || kind == WidgetKind::FunctionGroup; }

  /// Contiguous block of child nodes, as reported by parameter 0x04.
  struct SubordinateRange
  {
    uint8_t start = 0;
    uint8_t count = 0;

    uint32_t encode() const
    { return (uint32_t(start) << 16) | count; }

    bool operator==(const SubordinateRange&) const = default;
  };

  struct WidgetSpec
  {
    NodeId nid;
    WidgetKind kind = WidgetKind::Root;
    /// Explicit parameter responses; these win over derived defaults.
    std::map<uint8_t, uint32_t> params;
    /// Grouping nodes only.
    SubordinateRange subordinates;

    bool operator==(const WidgetSpec&) const = default;
  };

  struct CodecProfile
  {
    std::string name;
    uint32_t vendor_response = 0;
    uint32_t revision_response = 0;
    std::vector<WidgetSpec> nodes;

    bool operator==(const CodecProfile&) const = default;

    /// Throws ParseError when node ids repeat, the root is missing, or a
    /// subordinate range reaches an undeclared node.
    void validate() const;
  };

  /// The shipped "cx-default" codec: node-0 identity of the development
  /// machine's Conexant part and a beep generator at 0x12.
  CodecProfile default_codec_profile();

  struct BeepEntry
  {
    double t_ms = 0;
    uint8_t divider = 0;

    bool operator==(const BeepEntry&) const = default;
  };

  /// Divider changes with strictly increasing timestamps.
  using BeepTimeline = std::vector<BeepEntry>;

  struct AmpState
  {
    bool mute = false;
    uint8_t gain = 0;

    bool operator==(const AmpState&) const = default;
  };

  /// Amp addressed by direction, side and input index.
  struct AmpKey
  {
    bool output = true;
    bool left = true;
    uint8_t index = 0;

    auto operator<=>(const AmpKey&) const = default;
  };

  struct WidgetNode
  {
    NodeId nid;
    WidgetKind kind = WidgetKind::Root;
    std::map<uint8_t, uint32_t> params;
    std::map<AmpKey, AmpState> amps;
    uint8_t beep_divider = 0;
    BeepTimeline beep_timeline;
  };

  /// Simulated codec. Answers every command; unknown verbs, nodes and
  /// parameters read as zero.
  class CodecModel
  {
  public:
    explicit CodecModel(CodecProfile profile);

    const CodecProfile& profile() const
    { return profile_; }

    VerbResponse execute_verb(const VerbCommand& cmd, double at_ms);

    uint32_t get_parameter(NodeId nid, uint8_t param) const;

    /// Throws std::invalid_argument for anything but a beep generator.
    const BeepTimeline& beep_timeline(NodeId nid) const;

    const WidgetNode* node(NodeId nid) const;

    /// Commands executed since construction or the last reset.
    uint64_t verbs_executed() const
    { return verbs_executed_; }

    /// Link reset: amp and beep state back to power-on values.
    void reset();

  private:
    WidgetNode* mutable_node(NodeId nid);
    uint32_t amp_gain_mute(WidgetNode& node, const VerbCommand& cmd);
    uint32_t beep_control(WidgetNode& node, const VerbCommand& cmd, double at_ms);

    CodecProfile profile_;
    std::map<uint8_t, WidgetNode> nodes_;
    uint64_t verbs_executed_ = 0;
  };

}

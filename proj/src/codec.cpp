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

#include "hdaccess/codec.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "hdaccess/error.hpp"

namespace hdaccess::hda
{

  namespace
  {
    struct KindInfo
    {
      WidgetKind kind;
      std::string_view name;
      std::optional<unsigned> type_field;
      uint32_t default_caps;   // capability bits below the type field
    };

    constexpr std::array<KindInfo, 12> kind_table{{
      {WidgetKind::Root, "root", std::nullopt, 0},
      {WidgetKind::FunctionGroup, "function-group", std::nullopt, 0},
      {WidgetKind::AudioOutput, "audio-output", 0x0, 0x405},
      {WidgetKind::AudioInput, "audio-input", 0x1, 0x503},
      {WidgetKind::AudioMixer, "audio-mixer", 0x2, 0x10B},
      {WidgetKind::AudioSelector, "audio-selector", 0x3, 0x100},
      {WidgetKind::Pin, "pin", 0x4, 0x58D},
      {WidgetKind::Power, "power", 0x5, 0x0},
      {WidgetKind::VolumeKnob, "volume-knob", 0x6, 0x0},
      {WidgetKind::BeepGenerator, "beep-generator", 0x7, 0x0},
      {WidgetKind::VendorDefined, "vendor-defined", 0xF, 0x0},
      {WidgetKind::Reserved, "reserved", std::nullopt, 0x0},
    }};

    const KindInfo& info(WidgetKind kind)
    {
      return kind_table[static_cast<size_t>(kind)];
    }

    constexpr uint32_t audio_function_group = 0x01;
    constexpr uint32_t beep_present_bit = 1u << 16;

    // Amp verb payload fields.
    constexpr uint16_t amp_set_output = 1u << 15;
    constexpr uint16_t amp_set_input = 1u << 14;
    constexpr uint16_t amp_set_left = 1u << 13;
    constexpr uint16_t amp_set_right = 1u << 12;
    constexpr uint16_t amp_get_output = 1u << 15;
    constexpr uint16_t amp_get_left = 1u << 13;
    constexpr uint16_t amp_mute = 1u << 7;
    constexpr uint16_t amp_gain_mask = 0x7F;
  }

  std::string_view to_string(WidgetKind kind)
  {
    return info(kind).name;
  }

  std::optional<WidgetKind> widget_kind_from_string(std::string_view name)
  {
    for (const auto& k : kind_table)
      if (k.name == name)
        return k.kind;
    return std::nullopt;
  }

  WidgetKind widget_kind_from_caps(uint32_t caps)
  {
    unsigned type = (caps >> 20) & 0xF;
    for (const auto& k : kind_table)
      if (k.type_field && *k.type_field == type)
        return k.kind;
    return WidgetKind::Reserved;
  }

  std::optional<unsigned> widget_type_field(WidgetKind kind)
  {
    return info(kind).type_field;
  }

  void CodecProfile::validate() const
  {
    std::set<unsigned> declared;
    for (const auto& n : nodes)
      if (!declared.insert(n.nid.value()).second)
        throw ParseError("nodes: duplicate nid " + hex32(n.nid.value()));

    auto root = std::find_if(nodes.begin(), nodes.end(),
                             [](const WidgetSpec& n) { return n.kind == WidgetKind::Root; });
    if (root == nodes.end() || root->nid.value() != 0)
      throw ParseError("nodes: root node must be declared at nid 0");

    for (const auto& n : nodes)
      {
        if (!is_grouping(n.kind))
          {
            if (n.subordinates.count != 0)
              throw ParseError("nodes: widget " + hex32(n.nid.value()) + " has subordinates");
            continue;
          }
        unsigned end = unsigned(n.subordinates.start) + n.subordinates.count;
        for (unsigned child = n.subordinates.start; child < end; ++child)
          if (child > 0xFF || !declared.count(child) || child == n.nid.value())
            throw ParseError("nodes: subordinate range of " + hex32(n.nid.value())
                             + " covers undeclared node " + hex32(child));
      }
  }

  CodecProfile default_codec_profile()
  {
    CodecProfile p;
    p.name = "cx-default";
    p.vendor_response = 0x14F1510F;
    p.revision_response = 0x00100100;

    p.nodes.push_back({NodeId(0x00), WidgetKind::Root, {}, {0x01, 1}});
    p.nodes.push_back({NodeId(0x01), WidgetKind::FunctionGroup, {}, {0x10, 10}});
    p.nodes.push_back({NodeId(0x10), WidgetKind::AudioOutput, {}, {}});
    p.nodes.push_back({NodeId(0x11), WidgetKind::AudioOutput, {}, {}});
    p.nodes.push_back({NodeId(0x12), WidgetKind::BeepGenerator, {}, {}});
    p.nodes.push_back({NodeId(0x13), WidgetKind::AudioInput, {}, {}});
    p.nodes.push_back({NodeId(0x14), WidgetKind::AudioInput, {}, {}});
    p.nodes.push_back({NodeId(0x15), WidgetKind::AudioMixer, {}, {}});
    for (unsigned nid = 0x16; nid <= 0x19; ++nid)
      p.nodes.push_back({NodeId(nid), WidgetKind::Pin, {}, {}});
    return p;
  }

  CodecModel::CodecModel(CodecProfile profile)
    : profile_(std::move(profile))
  {
    profile_.validate();

    for (const auto& spec : profile_.nodes)
      {
        WidgetNode node;
        node.nid = spec.nid;
        node.kind = spec.kind;

        switch (spec.kind)
          {
          case WidgetKind::Root:
            node.params[params::vendor_id] = profile_.vendor_response;
            node.params[params::revision_id] = profile_.revision_response;
            node.params[params::subordinate_node_count] = spec.subordinates.encode();
            break;
          case WidgetKind::FunctionGroup:
            {
              node.params[params::subordinate_node_count] = spec.subordinates.encode();
              node.params[params::function_group_type] = audio_function_group;
              bool has_beep = std::any_of(profile_.nodes.begin(), profile_.nodes.end(),
                                          [&](const WidgetSpec& w) {
                unsigned v = w.nid.value();
                return w.kind == WidgetKind::BeepGenerator
                  && v >= spec.subordinates.start
                  && v < unsigned(spec.subordinates.start) + spec.subordinates.count;
              });
              node.params[params::audio_group_caps] = has_beep ? beep_present_bit : 0;
              break;
            }
          default:
            {
              const auto& k = info(spec.kind);
              node.params[params::widget_caps] = (k.type_field.value_or(0) << 20) | k.default_caps;
              break;
            }
          }

        for (const auto& [param, value] : spec.params)
          node.params[param] = value;

        nodes_.emplace(spec.nid.value(), std::move(node));
      }
  }

  const WidgetNode* CodecModel::node(NodeId nid) const
  {
    auto it = nodes_.find(nid.value());
    return it == nodes_.end() ? nullptr : &it->second;
  }

  WidgetNode* CodecModel::mutable_node(NodeId nid)
  {
    auto it = nodes_.find(nid.value());
    return it == nodes_.end() ? nullptr : &it->second;
  }

  uint32_t CodecModel::get_parameter(NodeId nid, uint8_t param) const
  {
    const WidgetNode* n = node(nid);
    if (!n)
      return 0;
    auto it = n->params.find(param);
    return it == n->params.end() ? 0 : it->second;
  }

  VerbResponse CodecModel::execute_verb(const VerbCommand& cmd, double at_ms)
  {
    ++verbs_executed_;
    WidgetNode* n = mutable_node(cmd.nid);
    if (!n)
      return {0};

    if (cmd.verb == verbs::get_parameter)
      return {get_parameter(cmd.nid, static_cast<uint8_t>(cmd.payload))};
    if (cmd.verb == verbs::set_beep_control || cmd.verb == verbs::get_beep_control)
      return {beep_control(*n, cmd, at_ms)};
    if (cmd.verb == verbs::set_amp_gain_mute || cmd.verb == verbs::get_amp_gain_mute)
      return {amp_gain_mute(*n, cmd)};
    return {0};
  }

  uint32_t CodecModel::beep_control(WidgetNode& node, const VerbCommand& cmd, double at_ms)
  {
    if (node.kind != WidgetKind::BeepGenerator)
      return 0;
    if (cmd.verb == verbs::get_beep_control)
      return node.beep_divider;

    node.beep_divider = static_cast<uint8_t>(cmd.payload);
    auto& tl = node.beep_timeline;
    // Two changes at the same instant collapse into the later one.
    if (!tl.empty() && at_ms <= tl.back().t_ms)
      tl.back().divider = node.beep_divider;
    else
      tl.push_back({at_ms, node.beep_divider});
    return 0;
  }

  uint32_t CodecModel::amp_gain_mute(WidgetNode& node, const VerbCommand& cmd)
  {
    if (is_grouping(node.kind))
      return 0;

    if (cmd.verb == verbs::get_amp_gain_mute)
      {
        bool output = cmd.payload & amp_get_output;
        AmpKey key{output, bool(cmd.payload & amp_get_left),
                   output ? uint8_t(0) : uint8_t(cmd.payload & 0xF)};
        auto it = node.amps.find(key);
        if (it == node.amps.end())
          return 0;
        return (it->second.mute ? amp_mute : 0u) | it->second.gain;
      }

    AmpState state{bool(cmd.payload & amp_mute), uint8_t(cmd.payload & amp_gain_mask)};
    uint8_t index = (cmd.payload >> 8) & 0xF;
    for (bool output : {true, false})
      {
        if (!(cmd.payload & (output ? amp_set_output : amp_set_input)))
          continue;
        for (bool left : {true, false})
          if (cmd.payload & (left ? amp_set_left : amp_set_right))
            node.amps[AmpKey{output, left, output ? uint8_t(0) : index}] = state;
      }
    return 0;
  }

  const BeepTimeline& CodecModel::beep_timeline(NodeId nid) const
  {
    const WidgetNode* n = node(nid);
    if (!n || n->kind != WidgetKind::BeepGenerator)
      throw std::invalid_argument("node " + hex32(nid.value()) + " is not a beep generator");
    return n->beep_timeline;
  }

  void CodecModel::reset()
  {
    for (auto& [nid, n] : nodes_)
      {
        n.amps.clear();
        n.beep_divider = 0;
        n.beep_timeline.clear();
      }
    verbs_executed_ = 0;
  }

}

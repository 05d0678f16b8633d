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
#include <functional>
#include <vector>

#include "hdaccess/codec.hpp"
#include "hdaccess/controller.hpp"
#include "hdaccess/pci.hpp"
#include "hdaccess/verb.hpp"

namespace hdaccess::hda
{

  inline constexpr unsigned default_max_polls = 1000;

  /// Where the driver found the controller and how it reaches it.
  struct ControllerBinding
  {
    pci::PciAddress pci;
    uint32_t bar_base = 0;
    ControllerModel* controller = nullptr;
  };

  struct TopologyNode
  {
    NodeId nid;
    WidgetKind kind;
    /// Vendor id for the root, group type for function groups, widget
    /// capabilities for everything else.
    uint32_t raw = 0;

    bool operator==(const TopologyNode&) const = default;
  };

  struct CodecTopology
  {
    CodecAddress cad;
    std::vector<TopologyNode> nodes;   // discovery order
  };

  /// Advances the simulated controller once per poll.
  using Stepper = std::function<void()>;

  /// First function whose class code is multimedia/audio; failing that,
  /// whatever answers at 0:27:0. Throws ControllerNotFound.
  pci::PciAddress locate_controller(const pci::PciScanner& scanner);

  /// HDBARL with the flag nibble masked off. Throws BarUnassigned when
  /// the register is zero.
  uint32_t resolve_bar(const pci::PciConfigSpace& config);

  /// Locate the controller on `machine`, read its config space through
  /// config_read and resolve the BAR.
  ControllerBinding bind_controller(SimulatedMachine& machine);

  /// Release controller reset and return the STATESTS presence mask.
  uint16_t bring_up(const ControllerBinding& binding);

  void write_controller_register32(const ControllerBinding& binding, unsigned offset, uint32_t value);
  uint32_t read_controller_register32(const ControllerBinding& binding, unsigned offset);

  /// Immediate-command round trip: wait for ICB clear, write ICOI, set
  /// ICB, poll ICIS until IRV, read ICII, clear IRV. Each poll calls
  /// `stepper` once and then reads ICIS, so a command with latency L
  /// completes iff L <= max_polls. Throws BusyTimeout or ResponseTimeout.
  VerbResponse send_verb(const ControllerBinding& binding, const VerbCommand& cmd,
                         unsigned max_polls, const Stepper& stepper);

  /// send_verb with one controller step per poll.
  VerbResponse send_verb(const ControllerBinding& binding, const VerbCommand& cmd,
                         unsigned max_polls = default_max_polls);

  uint32_t get_parameter(const ControllerBinding& binding, CodecAddress cad,
                         NodeId nid, uint8_t param);

  /// Walk root -> function groups -> widgets with GetParameter.
  CodecTopology discover_topology(const ControllerBinding& binding, CodecAddress cad);

  /// Throws NoBeepGenerator.
  NodeId find_beep_generator(const CodecTopology& topology);

}

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

#include "hdaccess/client.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hdaccess/error.hpp"

namespace hdaccess::hda
{

  namespace
  {
    const pci::PciAddress hda_fixed_location{0, 27, 0};

    ControllerModel& model(const ControllerBinding& binding)
    {
      if (!binding.controller)
        throw std::invalid_argument("controller binding is not attached");
      return *binding.controller;
    }
  }

  pci::PciAddress locate_controller(const pci::PciScanner& scanner)
  {
    for (const auto& fn : scanner.scan())
      if (fn.config.is_hda_function())
        return fn.address;
    if (scanner.probe(hda_fixed_location))
      return hda_fixed_location;
    throw ControllerNotFound();
  }

  uint32_t resolve_bar(const pci::PciConfigSpace& config)
  {
    uint32_t hdbarl = config.hdbarl();
    if (hdbarl == 0)
      throw BarUnassigned();
    return hdbarl & 0xFFFFFFF0u;
  }

  ControllerBinding bind_controller(SimulatedMachine& machine)
  {
    pci::PciAddress addr = locate_controller(machine);
    ControllerModel& ctl = machine.controller();

    // Copy the header out through config_read the way firmware would
    // walk it dword by dword.
    pci::PciConfigSpace space;
    for (unsigned off = 0; off < 0x40; off += 4)
      space.write(off, 4, ctl.config_read(addr, off, 4));

    return {addr, resolve_bar(space), &ctl};
  }

  void write_controller_register32(const ControllerBinding& binding, unsigned offset, uint32_t value)
  {
    // The model is addressed by offset; bar_base + offset is the address
    // real hardware would decode.
    model(binding).mmio_write(offset, 4, value);
  }

  uint32_t read_controller_register32(const ControllerBinding& binding, unsigned offset)
  {
    return model(binding).mmio_read(offset, 4);
  }

  uint16_t bring_up(const ControllerBinding& binding)
  {
    uint32_t gctl = read_controller_register32(binding, reg::gctl);
    if (!(gctl & gctl_crst))
      write_controller_register32(binding, reg::gctl, gctl | gctl_crst);
    // STATESTS is the upper half of the dword at 0x0C.
    return uint16_t(read_controller_register32(binding, reg::statests - 2) >> 16);
  }

  VerbResponse send_verb(const ControllerBinding& binding, const VerbCommand& cmd,
                         unsigned max_polls, const Stepper& stepper)
  {
    if (max_polls < 1)
      throw std::invalid_argument("max_polls must be at least 1");
    uint32_t word = encode_command(cmd);

    uint32_t status = read_controller_register32(binding, reg::icis);
    for (unsigned poll = 0; (status & icis_icb) && poll < max_polls; ++poll)
      {
        stepper();
        status = read_controller_register32(binding, reg::icis);
      }
    if (status & icis_icb)
      throw BusyTimeout("ICB still set after " + std::to_string(max_polls) + " polls");

    // Someone left a result unconsumed; drop it before arming.
    if (status & icis_irv)
      write_controller_register32(binding, reg::icis, icis_irv);

    write_controller_register32(binding, reg::icoi, word);
    write_controller_register32(binding, reg::icis, icis_icb);

    status = 0;
    for (unsigned poll = 0; !(status & icis_irv) && poll < max_polls; ++poll)
      {
        stepper();
        status = read_controller_register32(binding, reg::icis);
      }
    if (!(status & icis_irv))
      throw ResponseTimeout("no response to " + hex32(word) + " after "
                            + std::to_string(max_polls) + " polls");

    uint32_t response = read_controller_register32(binding, reg::icii);
    write_controller_register32(binding, reg::icis, icis_irv);
    return {response};
  }

  VerbResponse send_verb(const ControllerBinding& binding, const VerbCommand& cmd,
                         unsigned max_polls)
  {
    ControllerModel& ctl = model(binding);
    return send_verb(binding, cmd, max_polls, [&ctl] { ctl.step(1); });
  }

  uint32_t get_parameter(const ControllerBinding& binding, CodecAddress cad,
                         NodeId nid, uint8_t param)
  {
    return send_verb(binding, {cad, nid, verbs::get_parameter, param}).raw;
  }

  CodecTopology discover_topology(const ControllerBinding& binding, CodecAddress cad)
  {
    CodecTopology topo{cad, {}};
    std::set<unsigned> visited{0};

    auto children = [&](unsigned nid) {
      uint32_t word = get_parameter(binding, cad, NodeId(nid), params::subordinate_node_count);
      unsigned start = (word >> 16) & 0xFF;
      unsigned end = std::min(start + (word & 0xFF), 0x100u);
      std::vector<unsigned> out;
      for (unsigned n = start; n < end; ++n)
        if (visited.insert(n).second)
          out.push_back(n);
      return out;
    };

    topo.nodes.push_back({NodeId(0), WidgetKind::Root,
                          get_parameter(binding, cad, NodeId(0), params::vendor_id)});

    for (unsigned group : children(0))
      {
        uint32_t type = get_parameter(binding, cad, NodeId(group), params::function_group_type);
        topo.nodes.push_back({NodeId(group), WidgetKind::FunctionGroup, type});

        for (unsigned widget : children(group))
          {
            uint32_t caps = get_parameter(binding, cad, NodeId(widget), params::widget_caps);
            topo.nodes.push_back({NodeId(widget), widget_kind_from_caps(caps), caps});
          }
      }
    return topo;
  }

  NodeId find_beep_generator(const CodecTopology& topology)
  {
    for (const auto& n : topology.nodes)
      if (n.kind == WidgetKind::BeepGenerator)
        return n.nid;
    throw NoBeepGenerator();
  }

}

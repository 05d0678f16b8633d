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

#include "hdaccess/controller.hpp"

#include <cmath>
#include <utility>
#include <stdexcept>

#include "hdaccess/error.hpp"

namespace hdaccess::hda
{

  namespace
  {
    struct NamedRegister
    {
      unsigned offset;
      unsigned width;
    };

    // Only these bytes of the window hold state; everything else,
    // including the CORB/RIRB block, reads as zero.
    constexpr NamedRegister named_registers[] = {
      {reg::gcap, 2}, {reg::vmin, 1}, {reg::vmaj, 1}, {reg::gctl, 4},
      {reg::statests, 2}, {reg::icoi, 4}, {reg::icii, 4}, {reg::icis, 2},
    };

    constexpr uint16_t gcap_value = 0x4401;   // 4 in, 4 out, 64-bit ok
    constexpr uint8_t vmaj_value = 1;
    constexpr uint8_t vmin_value = 0;

    void check_mmio(unsigned offset, unsigned width)
    {
      if (width != 1 && width != 2 && width != 4)
        throw std::invalid_argument("MMIO width must be 1, 2 or 4");
      if (offset + width > reg::window_size)
        throw std::out_of_range("MMIO access outside the register window");
    }
  }

  std::string_view to_string(FaultKind kind)
  {
    switch (kind)
      {
      case FaultKind::IcoiWriteWhileBusy: return "ICOI written while ICB set";
      case FaultKind::ArmWhileBusy: return "ICB armed while already busy";
      case FaultKind::ArmWithoutCommand: return "ICB armed with no staged command";
      case FaultKind::ArmWhileResultValid: return "ICB armed with IRV still set";
      case FaultKind::ArmInReset: return "command armed while controller in reset";
      case FaultKind::AbsentCodec: return "command addressed to absent codec";
      }
    return "unknown fault";
  }

  ControllerModel::ControllerModel(ControllerConfig config)
    : config_(config),
      pci_(pci::make_hda_config(config.vendor_id, config.device_id, config.bar_base)),
      catalog_(default_catalog())
  {
    set_latency_steps(config.latency_steps);
    reset();
  }

  void ControllerModel::set_latency_steps(unsigned steps)
  {
    if (steps < 1)
      throw std::invalid_argument("latency_steps must be at least 1");
    config_.latency_steps = steps;
  }

  uint32_t ControllerModel::config_read(pci::PciAddress addr, unsigned offset, unsigned width) const
  {
    if (addr != config_.pci)
      throw NoSuchDevice("no such device at " + addr.to_string());
    return pci_.read(offset, width);
  }

  uint32_t ControllerModel::get(unsigned offset, unsigned width) const
  {
    uint32_t value = 0;
    for (unsigned i = 0; i < width; ++i)
      value |= uint32_t(regs_[offset + i]) << (8 * i);
    return value;
  }

  void ControllerModel::put(unsigned offset, unsigned width, uint32_t value)
  {
    for (unsigned i = 0; i < width; ++i)
      regs_[offset + i] = uint8_t(value >> (8 * i));
  }

  bool ControllerModel::busy() const
  {
    return get(reg::icis, 2) & icis_icb;
  }

  bool ControllerModel::result_valid() const
  {
    return get(reg::icis, 2) & icis_irv;
  }

  uint32_t ControllerModel::mmio_read(unsigned offset, unsigned width)
  {
    check_mmio(offset, width);
    uint32_t value = get(offset, width);
    if (tracing_)
      trace_.push_back({RegisterAccess::Op::Read, offset, width, value});
    return value;
  }

  void ControllerModel::mmio_write(unsigned offset, unsigned width, uint32_t value)
  {
    check_mmio(offset, width);
    if (width < 4)
      value &= (1u << (8 * width)) - 1;
    if (tracing_)
      trace_.push_back({RegisterAccess::Op::Write, offset, width, value});

    // Split the access into per-register pieces with byte enables.
    for (const auto& r : named_registers)
      {
        uint32_t piece = 0;
        uint32_t mask = 0;
        for (unsigned i = 0; i < width; ++i)
          {
            unsigned addr = offset + i;
            if (addr < r.offset || addr >= r.offset + r.width)
              continue;
            unsigned shift = 8 * (addr - r.offset);
            piece |= ((value >> (8 * i)) & 0xFF) << shift;
            mask |= 0xFFu << shift;
          }
        if (mask)
          write_register(r.offset, piece, mask);
      }
  }

  void ControllerModel::write_register(unsigned offset, uint32_t value, uint32_t mask)
  {
    switch (offset)
      {
      case reg::gctl:
        {
          uint32_t old = get(reg::gctl, 4);
          uint32_t now = (old & ~mask) | (value & mask);
          put(reg::gctl, 4, now);
          if (!(old & gctl_crst) && (now & gctl_crst))
            {
              uint16_t present = 0;
              for (const auto& [cad, codec] : codecs_)
                present |= uint16_t(1u << cad);
              put(reg::statests, 2, present);
            }
          else if ((old & gctl_crst) && !(now & gctl_crst))
            {
              put(reg::statests, 2, 0);
              put(reg::icis, 2, 0);
              pending_.reset();
              staged_ = false;
            }
          break;
        }
      case reg::statests:
        put(reg::statests, 2, get(reg::statests, 2) & ~(value & mask));
        break;
      case reg::icoi:
        {
          uint32_t word = (get(reg::icoi, 4) & ~mask) | (value & mask);
          put(reg::icoi, 4, word);
          ++icoi_writes_;
          if (busy())
            fault(FaultKind::IcoiWriteWhileBusy, word);   // last writer wins
          staged_ = true;
          break;
        }
      case reg::icis:
        write_icis(uint16_t(value & mask));
        break;
      default:
        // GCAP, VMIN, VMAJ and ICII are read-only.
        break;
      }
  }

  void ControllerModel::write_icis(uint16_t value)
  {
    uint16_t status = uint16_t(get(reg::icis, 2));
    if (value & icis_irv)
      status &= uint16_t(~icis_irv);

    if (value & icis_icb)
      {
        uint32_t word = get(reg::icoi, 4);
        if (status & icis_icb)
          fault(FaultKind::ArmWhileBusy, word);
        else if (!staged_)
          fault(FaultKind::ArmWithoutCommand, word);
        else
          {
            if (status & icis_irv)
              {
                fault(FaultKind::ArmWhileResultValid, word);
                status &= uint16_t(~icis_irv);
              }
            if (!(get(reg::gctl, 4) & gctl_crst))
              fault(FaultKind::ArmInReset, word);
            status |= icis_icb;
            pending_ = config_.latency_steps;
            ++commands_armed_;
          }
      }
    put(reg::icis, 2, status);
  }

  void ControllerModel::step(unsigned n)
  {
    if (n == 0)
      throw std::invalid_argument("step count must be positive");
    for (unsigned i = 0; i < n && pending_; ++i)
      if (--*pending_ == 0)
        complete_command();
  }

  void ControllerModel::complete_command()
  {
    uint32_t word = get(reg::icoi, 4);
    VerbCommand cmd = decode_command(word, catalog_);

    uint32_t response = 0;
    auto it = codecs_.find(cmd.cad.value());
    if (it != codecs_.end())
      {
        response = it->second.execute_verb(cmd, clock_ms_).raw;
        ++responses_written_;
      }
    else
      fault(FaultKind::AbsentCodec, word);

    put(reg::icii, 4, response);
    uint16_t status = uint16_t(get(reg::icis, 2));
    put(reg::icis, 2, uint16_t((status & ~icis_icb) | icis_irv));
    pending_.reset();
    staged_ = false;
  }

  void ControllerModel::advance_clock(double delta_ms)
  {
    if (!(delta_ms > 0) || !std::isfinite(delta_ms))
      throw std::invalid_argument("clock delta must be positive");
    clock_ms_ += delta_ms;
  }

  CodecModel& ControllerModel::attach_codec(CodecAddress cad, CodecModel codec)
  {
    auto [it, inserted] = codecs_.emplace(cad.value(), std::move(codec));
    if (!inserted)
      throw std::invalid_argument("codec address " + std::to_string(cad.value()) + " occupied");
    if (get(reg::gctl, 4) & gctl_crst)
      put(reg::statests, 2, get(reg::statests, 2) | (1u << cad.value()));
    return it->second;
  }

  CodecModel* ControllerModel::codec(CodecAddress cad)
  {
    auto it = codecs_.find(cad.value());
    return it == codecs_.end() ? nullptr : &it->second;
  }

  const CodecModel* ControllerModel::codec(CodecAddress cad) const
  {
    auto it = codecs_.find(cad.value());
    return it == codecs_.end() ? nullptr : &it->second;
  }

  void ControllerModel::reset()
  {
    regs_.fill(0);
    put(reg::gcap, 2, gcap_value);
    put(reg::vmin, 1, vmin_value);
    put(reg::vmaj, 1, vmaj_value);
    staged_ = false;
    pending_.reset();
    clock_ms_ = 0;
    faults_.clear();
    icoi_writes_ = commands_armed_ = responses_written_ = 0;
    for (auto& [cad, codec] : codecs_)
      codec.reset();
  }

  void ControllerModel::fault(FaultKind kind, uint32_t word)
  {
    faults_.push_back({kind, clock_ms_, word});
  }

  void ControllerModel::start_trace()
  {
    tracing_ = true;
    trace_.clear();
  }

  std::vector<RegisterAccess> ControllerModel::take_trace()
  {
    tracing_ = false;
    return std::exchange(trace_, {});
  }

  ControllerModel::State ControllerModel::state() const
  {
    return {regs_, pending_, clock_ms_, faults_};
  }

  SimulatedMachine::SimulatedMachine(ControllerConfig config)
    : controller_(config)
  {
    pci::PciAddress host_bridge(0, 0, 0);
    pci::PciAddress isa_bridge(0, 31, 0);
    if (config.pci != host_bridge)
      others_[host_bridge] = pci::make_config(0x8086, 0x1904, 0x06, 0x00);
    if (config.pci != isa_bridge)
      others_[isa_bridge] = pci::make_config(0x8086, 0x9D48, 0x06, 0x01);
  }

  void SimulatedMachine::add_function(pci::PciAddress address, pci::PciConfigSpace config)
  {
    if (address == controller_.pci_address() || others_.count(address))
      throw std::invalid_argument("PCI address " + address.to_string() + " occupied");
    others_[address] = config;
  }

  std::vector<pci::PciFunction> SimulatedMachine::scan() const
  {
    std::map<pci::PciAddress, pci::PciConfigSpace> all = others_;
    all[controller_.pci_address()] = controller_.config_space();
    std::vector<pci::PciFunction> out;
    for (const auto& [addr, space] : all)
      out.push_back({addr, space});
    return out;
  }

  std::optional<pci::PciConfigSpace> SimulatedMachine::probe(pci::PciAddress address) const
  {
    if (address == controller_.pci_address())
      return controller_.config_space();
    auto it = others_.find(address);
    if (it == others_.end())
      return std::nullopt;
    return it->second;
  }

}

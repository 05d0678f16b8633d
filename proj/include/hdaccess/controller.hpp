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

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hdaccess/codec.hpp"
#include "hdaccess/pci.hpp"
#include "hdaccess/verb.hpp"

namespace hdaccess::hda
{

  /// MMIO register offsets relative to the controller BAR.
  namespace reg
  {
    inline constexpr unsigned gcap = 0x00;
    inline constexpr unsigned vmin = 0x02;
    inline constexpr unsigned vmaj = 0x03;
    inline constexpr unsigned gctl = 0x08;
    inline constexpr unsigned statests = 0x0E;
    inline constexpr unsigned corblbase = 0x40;
    inline constexpr unsigned rirbsts = 0x5D;
    inline constexpr unsigned icoi = 0x60;
    inline constexpr unsigned icii = 0x64;
    inline constexpr unsigned icis = 0x68;

    inline constexpr unsigned window_size = 0x80;
  }

  inline constexpr uint32_t gctl_crst = 1u << 0;
  inline constexpr uint16_t icis_icb = 1u << 0;
  inline constexpr uint16_t icis_irv = 1u << 1;

  struct ControllerConfig
  {
    pci::PciAddress pci{0, 27, 0};
    uint16_t vendor_id = 0x8086;
    uint16_t device_id = 0x1D20;
    uint32_t bar_base = 0xFEB00000;
    unsigned latency_steps = 1;

    bool operator==(const ControllerConfig&) const = default;
  };

  enum class FaultKind : uint8_t
  {
    IcoiWriteWhileBusy,
    ArmWhileBusy,
    ArmWithoutCommand,
    ArmWhileResultValid,
    ArmInReset,
    AbsentCodec,
  };

  std::string_view to_string(FaultKind kind);

  /// A protocol violation the controller tolerated.
  struct Fault
  {
    FaultKind kind;
    double at_ms = 0;
    uint32_t word = 0;

    bool operator==(const Fault&) const = default;
  };

  struct RegisterAccess
  {
    enum class Op : uint8_t { Read, Write };
    Op op;
    unsigned offset;
    unsigned width;
    uint32_t value;

    bool operator==(const RegisterAccess&) const = default;
  };

  /// Simulated HDA controller: PCI function, MMIO register window,
  /// immediate command interface and a virtual clock. Codecs attached at
  /// link addresses answer the commands the controller issues.
  ///
  /// Protocol violations never trap; they are appended to fault_log()
  /// and the access completes the way permissive silicon would.
  class ControllerModel
  {
  public:
    explicit ControllerModel(ControllerConfig config = {});

    const ControllerConfig& config() const
    { return config_; }

    pci::PciAddress pci_address() const
    { return config_.pci; }

    const pci::PciConfigSpace& config_space() const
    { return pci_; }

    /// Throws NoSuchDevice unless `addr` is this controller's address.
    uint32_t config_read(pci::PciAddress addr, unsigned offset, unsigned width) const;

    /// Width 1, 2 or 4 inside the register window; std::out_of_range
    /// otherwise. Unmapped bytes read as zero and ignore writes.
    uint32_t mmio_read(unsigned offset, unsigned width);
    void mmio_write(unsigned offset, unsigned width, uint32_t value);

    /// Advance the immediate command engine by n steps (n >= 1).
    void step(unsigned n = 1);

    void advance_clock(double delta_ms);

    double clock_ms() const
    { return clock_ms_; }

    unsigned latency_steps() const
    { return config_.latency_steps; }

    void set_latency_steps(unsigned steps);

    /// Throws std::invalid_argument if `cad` is already occupied.
    CodecModel& attach_codec(CodecAddress cad, CodecModel codec);

    CodecModel* codec(CodecAddress cad);
    const CodecModel* codec(CodecAddress cad) const;

    /// Controller and link reset: registers to power-on values, pending
    /// command dropped, fault log and clock cleared, codec state reset.
    void reset();

    bool busy() const;
    bool result_valid() const;

    /// Steps left on the armed command, if any.
    std::optional<unsigned> pending_steps() const
    { return pending_; }

    const std::vector<Fault>& fault_log() const
    { return faults_; }

    const VerbCatalog& catalog() const
    { return catalog_; }

    uint64_t icoi_writes() const { return icoi_writes_; }
    uint64_t commands_armed() const { return commands_armed_; }
    /// Responses latched from present codecs.
    uint64_t responses_written() const { return responses_written_; }

    /// Register access recording for protocol checks.
    void start_trace();
    std::vector<RegisterAccess> take_trace();

    /// Everything observable through the register interface.
    struct State
    {
      std::array<uint8_t, reg::window_size> regs;
      std::optional<unsigned> pending;
      double clock_ms;
      std::vector<Fault> faults;

      bool operator==(const State&) const = default;
    };

    State state() const;

  private:
    uint32_t get(unsigned offset, unsigned width) const;
    void put(unsigned offset, unsigned width, uint32_t value);
    void write_register(unsigned offset, uint32_t value, uint32_t byte_mask);
    void write_icis(uint16_t value);
    void complete_command();
    void fault(FaultKind kind, uint32_t word);

    ControllerConfig config_;
    pci::PciConfigSpace pci_;
    VerbCatalog catalog_;
    std::array<uint8_t, reg::window_size> regs_{};
    bool staged_ = false;
    std::optional<unsigned> pending_;
    double clock_ms_ = 0;
    std::map<unsigned, CodecModel> codecs_;
    std::vector<Fault> faults_;
    uint64_t icoi_writes_ = 0;
    uint64_t commands_armed_ = 0;
    uint64_t responses_written_ = 0;
    bool tracing_ = false;
    std::vector<RegisterAccess> trace_;
  };

  /// A small platform: host bridge at 0:0:0, the HDA controller at its
  /// configured address and an ISA bridge at 0:31:0 (unless the
  /// controller sits there).
  class SimulatedMachine : public pci::PciScanner
  {
  public:
    explicit SimulatedMachine(ControllerConfig config = {});

    ControllerModel& controller() { return controller_; }
    const ControllerModel& controller() const { return controller_; }

    void add_function(pci::PciAddress address, pci::PciConfigSpace config);

    std::vector<pci::PciFunction> scan() const override;
    std::optional<pci::PciConfigSpace> probe(pci::PciAddress address) const override;

  private:
    ControllerModel controller_;
    std::map<pci::PciAddress, pci::PciConfigSpace> others_;
  };

}

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
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hdaccess::pci
{

  /// bus:device.function location of a PCI function.
  class PciAddress
  {
  public:
    constexpr PciAddress() = default;
    PciAddress(unsigned bus, unsigned device, unsigned function);

    constexpr unsigned bus() const { return bus_; }
    constexpr unsigned device() const { return device_; }
    constexpr unsigned function() const { return function_; }

    /// "0:27:0"
    std::string to_string() const;

    /// Accepts "B:D:F" or "B:D.F" in decimal.
    static std::optional<PciAddress> parse(std::string_view text);

    auto operator<=>(const PciAddress&) const = default;

  private:
    uint8_t bus_ = 0;
    uint8_t device_ = 0;
    uint8_t function_ = 0;
  };

  /// Type-0 configuration header offsets.
  namespace cfg
  {
    inline constexpr unsigned vendor_id = 0x00;
    inline constexpr unsigned device_id = 0x02;
    inline constexpr unsigned command = 0x04;
    inline constexpr unsigned revision = 0x08;
    inline constexpr unsigned prog_if = 0x09;
    inline constexpr unsigned subclass = 0x0A;
    inline constexpr unsigned class_code = 0x0B;
    inline constexpr unsigned hdbarl = 0x10;
    inline constexpr unsigned hdbaru = 0x14;
  }

  inline constexpr uint8_t class_multimedia = 0x04;
  inline constexpr uint8_t subclass_audio_device = 0x03;

  /// 256 bytes of configuration space, little-endian.
  class PciConfigSpace
  {
  public:
    PciConfigSpace() { raw_.fill(0); }

    /// width is 1, 2 or 4 and offset + width must stay inside the
    /// 256-byte space; std::out_of_range otherwise.
    uint32_t read(unsigned offset, unsigned width) const;
    void write(unsigned offset, unsigned width, uint32_t value);

    uint16_t vendor_id() const { return uint16_t(read(cfg::vendor_id, 2)); }
    uint16_t device_id() const { return uint16_t(read(cfg::device_id, 2)); }
    uint8_t base_class() const { return uint8_t(read(cfg::class_code, 1)); }
    uint8_t sub_class() const { return uint8_t(read(cfg::subclass, 1)); }
    uint32_t hdbarl() const { return read(cfg::hdbarl, 4); }
    uint32_t hdbaru() const { return read(cfg::hdbaru, 4); }

    bool is_hda_function() const
    { return base_class() == class_multimedia && sub_class() == subclass_audio_device; }

    const std::array<uint8_t, 256>& raw() const { return raw_; }

    bool operator==(const PciConfigSpace&) const = default;

  private:
    std::array<uint8_t, 256> raw_;
  };

  /// Header for an HDA function: class 04/03, memory BAR at bar_base
  /// with the given low flag bits.
  PciConfigSpace make_hda_config(uint16_t vendor, uint16_t device,
                                 uint32_t bar_base, uint32_t bar_flags = 0x4);

  /// Plain header with the given class, no BARs.
  PciConfigSpace make_config(uint16_t vendor, uint16_t device,
                             uint8_t base_class, uint8_t sub_class);

  struct PciFunction
  {
    PciAddress address;
    PciConfigSpace config;
  };

  /// Source of configuration spaces for controller discovery.
  class PciScanner
  {
  public:
    virtual ~PciScanner() = default;

    /// Every populated function in ascending address order.
    virtual std::vector<PciFunction> scan() const = 0;

    /// Direct probe of one address.
    virtual std::optional<PciConfigSpace> probe(PciAddress address) const = 0;
  };

}

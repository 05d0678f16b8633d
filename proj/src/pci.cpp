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

#include "hdaccess/pci.hpp"

#include <stdexcept>

#include "hdaccess/text.hpp"

namespace hdaccess::pci
{

  PciAddress::PciAddress(unsigned bus, unsigned device, unsigned function)
  {
    if (bus > 255 || device > 31 || function > 7)
      throw std::out_of_range("PCI address out of range");
    bus_ = uint8_t(bus);
    device_ = uint8_t(device);
    function_ = uint8_t(function);
  }

  std::string PciAddress::to_string() const
  {
    return std::to_string(bus_) + ":" + std::to_string(device_) + ":" + std::to_string(function_);
  }

  std::optional<PciAddress> PciAddress::parse(std::string_view text)
  {
    auto first = text.find(':');
    if (first == std::string_view::npos)
      return std::nullopt;
    auto second = text.find_first_of(":.", first + 1);
    if (second == std::string_view::npos)
      return std::nullopt;

    auto bus = parse_decimal(text.substr(0, first), 255);
    auto dev = parse_decimal(text.substr(first + 1, second - first - 1), 31);
    auto fn = parse_decimal(text.substr(second + 1), 7);
    if (!bus || !dev || !fn)
      return std::nullopt;
    return PciAddress(*bus, *dev, *fn);
  }

  namespace
  {
    void check_access(unsigned offset, unsigned width)
    {
      if (width != 1 && width != 2 && width != 4)
        throw std::invalid_argument("config access width must be 1, 2 or 4");
      if (offset + width > 256)
        throw std::out_of_range("config access beyond 256 bytes");
    }
  }

  uint32_t PciConfigSpace::read(unsigned offset, unsigned width) const
  {
    check_access(offset, width);
    uint32_t value = 0;
    for (unsigned i = 0; i < width; ++i)
      value |= uint32_t(raw_[offset + i]) << (8 * i);
    return value;
  }

  void PciConfigSpace::write(unsigned offset, unsigned width, uint32_t value)
  {
    check_access(offset, width);
    for (unsigned i = 0; i < width; ++i)
      raw_[offset + i] = uint8_t(value >> (8 * i));
  }

  PciConfigSpace make_config(uint16_t vendor, uint16_t device,
                             uint8_t base_class, uint8_t sub_class)
  {
    PciConfigSpace c;
    c.write(cfg::vendor_id, 2, vendor);
    c.write(cfg::device_id, 2, device);
    c.write(cfg::subclass, 1, sub_class);
    c.write(cfg::class_code, 1, base_class);
    return c;
  }

  PciConfigSpace make_hda_config(uint16_t vendor, uint16_t device,
                                 uint32_t bar_base, uint32_t bar_flags)
  {
    PciConfigSpace c = make_config(vendor, device, class_multimedia, subclass_audio_device);
    c.write(cfg::command, 2, 0x0006);   // memory space + bus master
    c.write(cfg::hdbarl, 4, (bar_base & 0xFFFFFFF0u) | (bar_flags & 0xFu));
    return c;
  }

}

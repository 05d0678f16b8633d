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

#include <doctest.h>

#include <random>

#include "hdaccess/error.hpp"
#include "hdaccess/profile.hpp"
#include "hdaccess/text.hpp"

using namespace hdaccess;
using namespace hdaccess::hda;

namespace
{
  std::string minimal(const std::string& nodes_extra = "", const std::string& controller = "{}")
  {
    return R"({"name": "t", "identity": {"vendor_response": "0x11112222", "revision_response": 5},
               "controller": )" + controller + R"(,
               "nodes": [{"nid": 0, "kind": "root", "subordinates": {"start": 1, "count": 1}},
                         {"nid": "0x01", "kind": "function-group",
                          "subordinates": {"start": "0x02", "count": 1}},
                         {"nid": "0x02", "kind": "beep-generator")" + nodes_extra + "}]}";
  }

  std::string message_of(const std::string& doc)
  {
    try
      {
        load_profile(doc);
      }
    catch (const ParseError& e)
      {
        return e.what();
      }
    return "";
  }
}

TEST_CASE("shipped profile file equals the built-in profile")
{
  auto file = load_profile_file(HDACCESS_SOURCE_DIR "/profiles/cx-default.json");
  CHECK(file == default_profile());
  CHECK(read_file(HDACCESS_SOURCE_DIR "/profiles/cx-default.json") == dump_profile(default_profile()));
}

TEST_CASE("minimal profile with defaults")
{
  Profile p = load_profile(minimal());
  CHECK(p.codec.name == "t");
  CHECK(p.codec.vendor_response == 0x11112222u);
  CHECK(p.codec.revision_response == 5u);
  CHECK(p.controller == ControllerConfig{});
  REQUIRE(p.codec.nodes.size() == 3);
  CHECK(p.codec.nodes[2].kind == WidgetKind::BeepGenerator);
}

TEST_CASE("controller overrides")
{
  Profile p = load_profile(minimal("", R"({"pci": "0:14.2", "vendor_id": "0x1022",
    "device_id": 5, "bar_base": "0xD0000000", "latency_steps": 4})"));
  CHECK(p.controller.pci == pci::PciAddress(0, 14, 2));
  CHECK(p.controller.vendor_id == 0x1022);
  CHECK(p.controller.device_id == 5);
  CHECK(p.controller.bar_base == 0xD0000000u);
  CHECK(p.controller.latency_steps == 4u);
}

TEST_CASE("errors name the offending key")
{
  CHECK(message_of("{") .find("profile:") == 0);
  CHECK(message_of(minimal(R"(, "colour": 1)")).find("nodes[2].colour") != std::string::npos);
  CHECK(message_of(minimal(R"(, "params": {"zz": 1})")).find("nodes[2].params.zz") != std::string::npos);
  CHECK(message_of(minimal("", R"({"latency_steps": 0})")).find("controller.latency_steps") == 0);
  CHECK(message_of(minimal("", R"({"bar_base": "0xFEB00004"})")).find("controller.bar_base") == 0);
  CHECK(message_of(minimal("", R"({"pci": "zero"})")).find("controller.pci") == 0);
  CHECK(message_of(R"({"nodes": []})").find("identity") == 0);

  std::string dup = minimal();
  dup.replace(dup.find(R"("nid": "0x02")"), 13, R"("nid": "0x01")");
  CHECK(message_of(dup).find("duplicate nid 0x01") != std::string::npos);

  std::string bad_kind = minimal();
  bad_kind.replace(bad_kind.find("beep-generator"), 14, "speaker");
  CHECK(message_of(bad_kind).find("nodes[2].kind") != std::string::npos);

  std::string bad_range = minimal();
  bad_range.replace(bad_range.find(R"("start": "0x02", "count": 1)"), 27, R"("start": "0x02", "count": 2)");
  CHECK_THROWS_AS(load_profile(bad_range), ParseError);
}

TEST_CASE("dump/load fidelity over random profiles")
{
  std::mt19937 rng(21);
  const WidgetKind kinds[] = {WidgetKind::AudioOutput, WidgetKind::AudioInput, WidgetKind::AudioMixer,
                              WidgetKind::AudioSelector, WidgetKind::Pin, WidgetKind::Power,
                              WidgetKind::VolumeKnob, WidgetKind::BeepGenerator,
                              WidgetKind::VendorDefined};
  for (int i = 0; i < 200; ++i)
    {
      Profile p;
      p.codec.name = "p" + std::to_string(i);
      p.codec.vendor_response = rng();
      p.codec.revision_response = rng();
      p.controller.latency_steps = 1 + rng() % 50;
      p.controller.bar_base = rng() & 0xFFFFFFF0u;
      p.controller.vendor_id = uint16_t(rng());
      unsigned start = 2 + rng() % 100;
      unsigned count = 1 + rng() % 40;
      p.codec.nodes.push_back({NodeId(0), WidgetKind::Root, {}, {1, 1}});
      p.codec.nodes.push_back({NodeId(1), WidgetKind::FunctionGroup, {}, {uint8_t(start), uint8_t(count)}});
      for (unsigned n = start; n < start + count; ++n)
        {
          WidgetSpec w{NodeId(n), kinds[rng() % std::size(kinds)], {}, {}};
          if (rng() % 4 == 0)
            w.params[uint8_t(rng())] = rng();
          p.codec.nodes.push_back(w);
        }
      std::string text = dump_profile(p);
      Profile back = load_profile(text);
      REQUIRE(back == p);
      REQUIRE(dump_profile(back) == text);
    }
}

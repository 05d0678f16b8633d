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

#include "hdaccess/profile.hpp"

#include <cstdio>
#include <initializer_list>
#include <set>

#include <json.hpp>

#include "hdaccess/error.hpp"
#include "hdaccess/text.hpp"

namespace hdaccess::hda
{

  using nlohmann::json;

  namespace
  {
    [[noreturn]] void fail(const std::string& path, const std::string& what)
    {
      throw ParseError(path + ": " + what);
    }

    uint32_t number(const json& j, const std::string& path, uint32_t max)
    {
      if (j.is_number_unsigned() || (j.is_number_integer() && j.get<int64_t>() >= 0))
        {
          auto v = j.get<uint64_t>();
          if (v > max)
            fail(path, "value out of range");
          return uint32_t(v);
        }
      if (j.is_string())
        {
          auto v = parse_hex(j.get<std::string>(), max);
          if (!v)
            fail(path, "expected a hex number, got \"" + j.get<std::string>() + "\"");
          return *v;
        }
      fail(path, "expected a number or hex string");
    }

    const json& object(const json& j, const std::string& path,
                       std::initializer_list<std::string_view> allowed)
    {
      if (!j.is_object())
        fail(path, "expected an object");
      for (const auto& [key, value] : j.items())
        {
          bool known = false;
          for (auto a : allowed)
            known = known || a == key;
          if (!known)
            fail(path + "." + key, "unknown key");
        }
      return j;
    }

    std::string hex(uint32_t v, int digits)
    {
      char buf[16];
      std::snprintf(buf, sizeof buf, "0x%0*X", digits, v);
      return buf;
    }

    WidgetSpec parse_node(const json& j, const std::string& path)
    {
      object(j, path, {"nid", "kind", "params", "subordinates"});
      WidgetSpec spec;

      if (!j.contains("nid"))
        fail(path + ".nid", "missing");
      spec.nid = NodeId(number(j["nid"], path + ".nid", 0xFF));

      if (!j.contains("kind") || !j["kind"].is_string())
        fail(path + ".kind", "missing or not a string");
      auto kind = widget_kind_from_string(j["kind"].get<std::string>());
      if (!kind)
        fail(path + ".kind", "unknown kind \"" + j["kind"].get<std::string>() + "\"");
      spec.kind = *kind;

      if (j.contains("params") && !j["params"].is_object())
        fail(path + ".params", "expected an object");
      return spec;
    }
  }

  Profile load_profile(std::string_view document)
  {
    json doc;
    try
      {
        doc = json::parse(document);
      }
    catch (const json::parse_error& e)
      {
        throw ParseError(std::string("profile: ") + e.what());
      }

    object(doc, "profile", {"name", "identity", "controller", "nodes"});
    Profile p;

    if (doc.contains("name"))
      {
        if (!doc["name"].is_string())
          fail("name", "expected a string");
        p.codec.name = doc["name"].get<std::string>();
      }

    if (!doc.contains("identity"))
      fail("identity", "missing");
    const auto& id = object(doc["identity"], "identity", {"vendor_response", "revision_response"});
    if (!id.contains("vendor_response"))
      fail("identity.vendor_response", "missing");
    if (!id.contains("revision_response"))
      fail("identity.revision_response", "missing");
    p.codec.vendor_response = number(id["vendor_response"], "identity.vendor_response", 0xFFFFFFFF);
    p.codec.revision_response = number(id["revision_response"], "identity.revision_response", 0xFFFFFFFF);

    if (doc.contains("controller"))
      {
        const auto& c = object(doc["controller"], "controller",
                               {"pci", "vendor_id", "device_id", "bar_base", "latency_steps"});
        if (c.contains("pci"))
          {
            if (!c["pci"].is_string())
              fail("controller.pci", "expected \"bus:device:function\"");
            auto addr = pci::PciAddress::parse(c["pci"].get<std::string>());
            if (!addr)
              fail("controller.pci", "bad PCI address \"" + c["pci"].get<std::string>() + "\"");
            p.controller.pci = *addr;
          }
        if (c.contains("vendor_id"))
          p.controller.vendor_id = uint16_t(number(c["vendor_id"], "controller.vendor_id", 0xFFFF));
        if (c.contains("device_id"))
          p.controller.device_id = uint16_t(number(c["device_id"], "controller.device_id", 0xFFFF));
        if (c.contains("bar_base"))
          {
            uint32_t base = number(c["bar_base"], "controller.bar_base", 0xFFFFFFFF);
            if (base & 0xF)
              fail("controller.bar_base", "low 4 bits must be zero");
            p.controller.bar_base = base;
          }
        if (c.contains("latency_steps"))
          {
            uint32_t steps = number(c["latency_steps"], "controller.latency_steps", 1000000);
            if (steps < 1)
              fail("controller.latency_steps", "must be at least 1");
            p.controller.latency_steps = steps;
          }
      }

    if (!doc.contains("nodes") || !doc["nodes"].is_array())
      fail("nodes", "missing or not an array");

    std::set<unsigned> seen;
    const auto& nodes = doc["nodes"];
    for (size_t i = 0; i < nodes.size(); ++i)
      {
        std::string path = "nodes[" + std::to_string(i) + "]";
        WidgetSpec spec = parse_node(nodes[i], path);
        if (!seen.insert(spec.nid.value()).second)
          fail(path + ".nid", "duplicate nid " + hex(spec.nid.value(), 2));

        if (nodes[i].contains("params"))
          for (const auto& [key, value] : nodes[i]["params"].items())
            {
              auto param = parse_hex(key, 0xFF);
              if (!param)
                fail(path + ".params." + key, "parameter id must be a hex byte");
              spec.params[uint8_t(*param)] = number(value, path + ".params." + key, 0xFFFFFFFF);
            }

        if (nodes[i].contains("subordinates"))
          {
            std::string sp = path + ".subordinates";
            if (!is_grouping(spec.kind))
              fail(sp, "only root and function-group nodes have subordinates");
            const auto& s = object(nodes[i]["subordinates"], sp, {"start", "count"});
            if (!s.contains("start") || !s.contains("count"))
              fail(sp, "needs start and count");
            spec.subordinates.start = uint8_t(number(s["start"], sp + ".start", 0xFF));
            spec.subordinates.count = uint8_t(number(s["count"], sp + ".count", 0xFF));
          }
        p.codec.nodes.push_back(std::move(spec));
      }

    p.codec.validate();
    return p;
  }

  Profile load_profile_file(const std::string& path)
  {
    return load_profile(read_file(path));
  }

  std::string dump_profile(const Profile& p)
  {
    json doc = json::object();
    doc["name"] = p.codec.name;
    doc["identity"] = {
      {"vendor_response", hex(p.codec.vendor_response, 8)},
      {"revision_response", hex(p.codec.revision_response, 8)},
    };
    doc["controller"] = {
      {"pci", p.controller.pci.to_string()},
      {"vendor_id", hex(p.controller.vendor_id, 4)},
      {"device_id", hex(p.controller.device_id, 4)},
      {"bar_base", hex(p.controller.bar_base, 8)},
      {"latency_steps", p.controller.latency_steps},
    };
    json nodes = json::array();
    for (const auto& n : p.codec.nodes)
      {
        json node = {{"nid", hex(n.nid.value(), 2)}, {"kind", std::string(to_string(n.kind))}};
        if (is_grouping(n.kind))
          node["subordinates"] = {{"start", hex(n.subordinates.start, 2)},
                                  {"count", n.subordinates.count}};
        if (!n.params.empty())
          {
            json params = json::object();
            for (const auto& [param, value] : n.params)
              params[hex(param, 2)] = hex(value, 8);
            node["params"] = params;
          }
        nodes.push_back(node);
      }
    doc["nodes"] = nodes;
    return doc.dump(2) + "\n";
  }

  Profile default_profile()
  {
    return Profile{ControllerConfig{}, default_codec_profile()};
  }

}

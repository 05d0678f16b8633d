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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hdaccess/audio.hpp"
#include "hdaccess/client.hpp"
#include "hdaccess/error.hpp"
#include "hdaccess/profile.hpp"
#include "hdaccess/screenreader.hpp"

namespace py = pybind11;
using namespace hdaccess;
using namespace hdaccess::hda;

namespace
{
  VerbId verb_id(unsigned id, bool long_form)
  {
    return long_form ? VerbId::long4(id) : VerbId::short12(id);
  }

  py::bytes to_bytes(const std::vector<uint8_t>& v)
  {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
  }

  audio::PcmBuffer from_bytes(const py::bytes& b)
  {
    std::string s = b;
    return audio::read_wav(std::span(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
  }

  // A simulated machine with the driver bound and the link out of reset.
  class Machine
  {
  public:
    explicit Machine(const Profile& profile)
      : machine_(profile.controller)
    {
      machine_.controller().attach_codec(CodecAddress(0), CodecModel(profile.codec));
      binding_ = bind_controller(machine_);
      codec_mask_ = bring_up(binding_);
    }

    uint32_t send_verb(unsigned cad, unsigned nid, unsigned verb, unsigned payload, bool long_form)
    {
      VerbCommand cmd{CodecAddress(cad), NodeId(nid), verb_id(verb, long_form), uint16_t(payload)};
      if (payload > cmd.verb.payload_max())
        throw EncodeError("payload does not fit the verb form");
      return hda::send_verb(binding_, cmd).raw;
    }

    std::vector<std::tuple<unsigned, std::string, uint32_t>> enumerate(unsigned cad)
    {
      std::vector<std::tuple<unsigned, std::string, uint32_t>> out;
      for (const auto& n : discover_topology(binding_, CodecAddress(cad)).nodes)
        out.emplace_back(n.nid.value(), std::string(to_string(n.kind)), n.raw);
      return out;
    }

    void advance_clock(double ms) { machine_.controller().advance_clock(ms); }
    double clock_ms() const { return machine_.controller().clock_ms(); }
    uint16_t codec_mask() const { return codec_mask_; }
    uint32_t bar_base() const { return binding_.bar_base; }
    size_t fault_count() const { return machine_.controller().fault_log().size(); }

    std::vector<std::pair<double, unsigned>> beep_timeline(unsigned nid) const
    {
      std::vector<std::pair<double, unsigned>> out;
      for (const auto& e : machine_.controller().codec(CodecAddress(0))->beep_timeline(NodeId(nid)))
        out.emplace_back(e.t_ms, e.divider);
      return out;
    }

    py::bytes render_wav(unsigned nid, double end_ms) const
    {
      return to_bytes(audio::write_wav(audio::timeline_to_pcm(
        machine_.controller().codec(CodecAddress(0))->beep_timeline(NodeId(nid)), end_ms)));
    }

  private:
    SimulatedMachine machine_;
    ControllerBinding binding_;
    uint16_t codec_mask_ = 0;
  };
}

PYBIND11_MODULE(_hdaccess, m)
{
  m.doc() = "Simulated HDA controller, codec and beep-tone screen reader";

  py::register_exception<Error>(m, "Error");

  m.def("encode_command",
        [](unsigned cad, unsigned nid, unsigned verb, unsigned payload, bool long_form) {
          return encode_command({CodecAddress(cad), NodeId(nid), verb_id(verb, long_form),
                                 uint16_t(payload)});
        },
        py::arg("cad"), py::arg("nid"), py::arg("verb"), py::arg("payload"),
        py::arg("long_form") = false);

  m.def("decode_command", [](uint32_t word) {
    VerbCommand c = decode_command(word, default_catalog());
    return py::make_tuple(c.cad.value(), c.nid.value(), c.verb.id, c.payload,
                          c.verb.form == VerbForm::Long4);
  });

  m.def("decode_trace", [](const std::string& text) { return decode_trace(text, default_catalog()); });

  m.def("resolve_bar", [](uint32_t hdbarl) {
    pci::PciConfigSpace c;
    c.write(pci::cfg::hdbarl, 4, hdbarl);
    return resolve_bar(c);
  });

  m.def("default_profile_json", [] { return dump_profile(default_profile()); });

  m.def("render_beep", [](unsigned divider, double ms) {
    if (divider > 255)
      throw py::value_error("divider must be 0-255");
    return to_bytes(audio::write_wav(audio::timeline_to_pcm({{0, uint8_t(divider)}}, ms)));
  });

  m.def("measure_frequency",
        [](const py::bytes& wav, double window_ms, double start_ms) {
          return audio::measure_frequency(from_bytes(wav), window_ms, start_ms);
        },
        py::arg("wav"), py::arg("window_ms"), py::arg("start_ms") = 0.0);

  m.def("divider_for", &reader::divider_for);

  py::class_<Machine>(m, "Machine")
    .def(py::init([](const std::string& profile_json) {
           return std::make_unique<Machine>(profile_json.empty() ? default_profile()
                                                                 : load_profile(profile_json));
         }),
         py::arg("profile_json") = "")
    .def("send_verb", &Machine::send_verb, py::arg("cad"), py::arg("nid"), py::arg("verb"),
         py::arg("payload"), py::arg("long_form") = false)
    .def("enumerate", &Machine::enumerate, py::arg("cad") = 0)
    .def("advance_clock", &Machine::advance_clock)
    .def("beep_timeline", &Machine::beep_timeline, py::arg("nid") = 0x12)
    .def("render_wav", &Machine::render_wav, py::arg("nid"), py::arg("end_ms"))
    .def_property_readonly("clock_ms", &Machine::clock_ms)
    .def_property_readonly("codec_mask", &Machine::codec_mask)
    .def_property_readonly("bar_base", &Machine::bar_base)
    .def_property_readonly("fault_count", &Machine::fault_count);
}

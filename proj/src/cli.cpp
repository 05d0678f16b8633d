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

#include "hdaccess/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "hdaccess/error.hpp"
#include "hdaccess/http_service.hpp"
#include "hdaccess/session.hpp"
#include "hdaccess/text.hpp"

namespace hdaccess::service
{

  namespace
  {
    struct GlobalOptions
    {
      std::string profile_path;
      unsigned latency_steps = 0;
    };

    hda::Profile resolve_profile(const GlobalOptions& g)
    {
      std::string path = g.profile_path;
      if (path.empty())
        if (const char* env = std::getenv("ACCESS_PROFILE"); env && *env)
          path = env;
      hda::Profile profile = path.empty() ? hda::default_profile() : hda::load_profile_file(path);
      if (g.latency_steps > 0)
        profile.controller.latency_steps = g.latency_steps;
      return profile;
    }

    reader::Form resolve_form(const std::string& path)
    {
      return path.empty() ? reader::demo_form() : reader::load_form_file(path);
    }

    uint32_t hex_arg(const std::string& text, uint32_t max, const char* what)
    {
      auto v = parse_hex(text, max);
      if (!v)
        throw CLI::ValidationError(what, "expected a hex value, got " + text);
      return *v;
    }

    std::string hex(uint32_t v, int digits)
    {
      char buf[16];
      std::snprintf(buf, sizeof buf, "0x%0*X", digits, v);
      return buf;
    }

    void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes)
    {
      write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    }

    hda::VerbId parse_verb(const std::string& text, const hda::VerbCatalog& catalog)
    {
      if (auto* e = catalog.find(text))
        return e->id;
      uint32_t id = hex_arg(text, 0xFFF, "VERB");
      if (id <= 0xF && catalog.is_long_id(id))
        return hda::VerbId::long4(id);
      return hda::VerbId::short12(id);
    }

    int cmd_info(const GlobalOptions& g, std::ostream& out)
    {
      Rig rig(resolve_profile(g));
      const auto& space = rig.controller().config_space();
      out << "controller " << rig.binding().pci.to_string()
          << " vendor " << hex(space.vendor_id(), 4)
          << " device " << hex(space.device_id(), 4)
          << " class " << hex(space.base_class(), 2) << "/" << hex(space.sub_class(), 2) << "\n";
      out << "bar " << hda::hex32(rig.binding().bar_base) << "\n";
      out << "codecs " << hex(rig.codec_mask(), 4) << "\n";
      for (unsigned cad = 0; cad < 16; ++cad)
        {
          if (!(rig.codec_mask() & (1u << cad)))
            continue;
          hda::CodecAddress addr(cad);
          out << "codec " << cad
              << " vendor " << hda::hex32(hda::get_parameter(rig.binding(), addr, hda::NodeId(0),
                                                        hda::params::vendor_id))
              << " revision " << hda::hex32(hda::get_parameter(rig.binding(), addr, hda::NodeId(0),
                                                          hda::params::revision_id))
              << "\n";
        }
      return exit_ok;
    }

    int cmd_enumerate(const GlobalOptions& g, std::ostream& out)
    {
      Rig rig(resolve_profile(g));
      out << "codec " << rig.topology().cad.value() << "\n";
      for (const auto& n : rig.topology().nodes)
        out << hex(n.nid.value(), 2) << " " << hda::to_string(n.kind) << " " << hda::hex32(n.raw) << "\n";
      return exit_ok;
    }

    int cmd_verb(const GlobalOptions& g, const std::vector<std::string>& a, std::ostream& out)
    {
      Rig rig(resolve_profile(g));
      const auto& catalog = rig.controller().catalog();
      hda::VerbCommand cmd;
      cmd.cad = hda::CodecAddress(hex_arg(a[0], 0xF, "CAD"));
      cmd.nid = hda::NodeId(hex_arg(a[1], 0xFF, "NID"));
      cmd.verb = parse_verb(a[2], catalog);
      cmd.payload = uint16_t(hex_arg(a[3], cmd.verb.payload_max(), "PAYLOAD"));
      out << hda::hex32(hda::send_verb(rig.binding(), cmd).raw) << "\n";
      return exit_ok;
    }

    int cmd_beep(const GlobalOptions& g, unsigned divider, double ms,
                 const std::string& out_path, std::ostream& out)
    {
      if (!(ms > 0))
        throw CLI::ValidationError("MS", "duration must be positive");
      Rig rig(resolve_profile(g));
      hda::NodeId beep = rig.beep_nid();
      hda::send_verb(rig.binding(), {hda::CodecAddress(0), beep, hda::verbs::set_beep_control,
                                     uint16_t(divider)});
      rig.controller().advance_clock(ms);
      hda::send_verb(rig.binding(), {hda::CodecAddress(0), beep, hda::verbs::set_beep_control, 0});

      auto wav = audio::write_wav(audio::timeline_to_pcm(rig.beep_timeline(), ms));
      write_bytes(out_path, wav);
      out << "wrote " << out_path << " (" << wav.size() << " bytes, "
          << audio::divider_frequency(uint8_t(divider)) << " Hz)\n";
      return exit_ok;
    }

    int cmd_demo(const GlobalOptions& g, const std::string& script_path, const std::string& form_path,
                 const std::string& out_path, std::string transcript_path, std::ostream& out)
    {
      auto keys = reader::parse_key_script(read_file(script_path));
      SessionOptions options;
      options.profile = resolve_profile(g);
      options.form = resolve_form(form_path);
      Session session(std::move(options));
      for (auto key : keys)
        session.apply_key(key);

      if (transcript_path.empty())
        transcript_path = std::filesystem::path(out_path).replace_extension(".txt").string();
      auto wav = session.session_wav();
      write_bytes(out_path, wav);
      write_file(transcript_path, session.transcript());
      out << session.transcript();
      out << "wrote " << out_path << " and " << transcript_path << "\n";
      return exit_ok;
    }

    int cmd_serve(const GlobalOptions& g, const std::string& host, int port,
                  const std::string& form_path, const std::string& static_dir, std::ostream& out)
    {
      SessionOptions options;
      options.profile = resolve_profile(g);
      options.form = resolve_form(form_path);
      HttpService service(std::move(options), static_dir);
      int bound = service.bind(host, port);
      if (bound < 0)
        throw Error("cannot listen on " + host + ":" + std::to_string(port));
      out << "listening on http://" << host << ":" << bound << "\n" << std::flush;
      return service.run() ? exit_ok : exit_error;
    }

    int cmd_decode_trace(const std::string& path, std::ostream& out)
    {
      for (const auto& line : hda::decode_trace(read_file(path), hda::default_catalog()))
        out << line << "\n";
      return exit_ok;
    }
  }

  int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
  {
    CLI::App app{"Simulated HDA beep stack and pre-OS screen reader", "hda-access"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--profile", g.profile_path, "Machine profile (JSON); default $ACCESS_PROFILE or built-in");
    app.add_option("--latency-steps", g.latency_steps, "Override the controller command latency")
      ->check(CLI::PositiveNumber);

    auto* info = app.add_subcommand("info", "Print controller PCI identity, BAR and codec identity");
    auto* enumerate = app.add_subcommand("enumerate", "Print the discovered codec topology");

    auto* verb = app.add_subcommand("verb", "Send one verb and print the response");
    std::vector<std::string> verb_args(4);
    verb->add_option("CAD", verb_args[0], "Codec address (hex)")->required();
    verb->add_option("NID", verb_args[1], "Node id (hex)")->required();
    verb->add_option("VERB", verb_args[2], "Verb id (hex) or catalog name")->required();
    verb->add_option("PAYLOAD", verb_args[3], "Payload (hex)")->required();

    auto* beep = app.add_subcommand("beep", "Render a beep-generator tone to WAV");
    unsigned divider = 0;
    double beep_ms = 0;
    std::string out_path;
    beep->add_option("DIVIDER", divider, "Beep divider 0-255")->required()->check(CLI::Range(0, 255));
    beep->add_option("MS", beep_ms, "Duration in ms")->required();
    beep->add_option("--out", out_path, "Output WAV")->required();

    auto* demo = app.add_subcommand("demo", "Replay a key script through the screen reader");
    std::string script_path, form_path, transcript_path;
    demo->add_option("--script", script_path, "Key script, one key per line")->required();
    demo->add_option("--out", out_path, "Output WAV")->required();
    demo->add_option("--transcript", transcript_path, "Transcript output (default: --out with .txt)");
    demo->add_option("--form", form_path, "Form definition (JSON); default demo-bios");

    auto* serve = app.add_subcommand("serve", "Start the HTTP service");
    int port = 8080;
    std::string host = "127.0.0.1", static_dir;
    serve->add_option("--port", port, "TCP port (0 picks one)")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Listen address");
    serve->add_option("--form", form_path, "Form definition (JSON); default demo-bios");
    serve->add_option("--static", static_dir, "Directory served at /");

    auto* decode = app.add_subcommand("decode-trace", "Decode a file of hex verb words");
    std::string trace_path;
    decode->add_option("FILE", trace_path, "Trace file")->required();

    std::vector<const char*> argv;
    for (const auto& a : args)
      argv.push_back(a.c_str());
    if (argv.empty())
      argv.push_back("hda-access");

    try
      {
        app.parse(int(argv.size()), argv.data());
      }
    catch (const CLI::CallForHelp& e)
      {
        out << app.help();
        return exit_ok;
      }
    catch (const CLI::CallForAllHelp& e)
      {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
      }
    catch (const CLI::ParseError& e)
      {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
      }

    try
      {
        if (info->parsed())
          return cmd_info(g, out);
        if (enumerate->parsed())
          return cmd_enumerate(g, out);
        if (verb->parsed())
          return cmd_verb(g, verb_args, out);
        if (beep->parsed())
          return cmd_beep(g, divider, beep_ms, out_path, out);
        if (demo->parsed())
          return cmd_demo(g, script_path, form_path, out_path, transcript_path, out);
        if (serve->parsed())
          return cmd_serve(g, host, port, form_path, static_dir, out);
        if (decode->parsed())
          return cmd_decode_trace(trace_path, out);
      }
    catch (const CLI::ValidationError& e)
      {
        err << "error: " << e.what() << "\n";
        return exit_usage;
      }
    catch (const std::exception& e)
      {
        err << "error: " << e.what() << "\n";
        return exit_error;
      }
    err << app.help();
    return exit_usage;
  }

}

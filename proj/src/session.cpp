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

#include "hdaccess/session.hpp"

#include <json.hpp>

namespace hdaccess::service
{

  using nlohmann::json;

  Rig::Rig(const hda::Profile& profile)
    : machine_(std::make_unique<hda::SimulatedMachine>(profile.controller))
  {
    machine_->controller().attach_codec(hda::CodecAddress(0), hda::CodecModel(profile.codec));
    binding_ = hda::bind_controller(*machine_);
    codec_mask_ = hda::bring_up(binding_);
    topology_ = hda::discover_topology(binding_, hda::CodecAddress(0));
  }

  hda::NodeId Rig::beep_nid() const
  {
    return hda::find_beep_generator(topology_);
  }

  const hda::BeepTimeline& Rig::beep_timeline() const
  {
    return machine_->controller().codec(hda::CodecAddress(0))->beep_timeline(beep_nid());
  }

  Session::Session(SessionOptions options)
    : options_(std::move(options)),
      rig_(options_.profile),
      beep_(rig_.beep_nid()),
      form_(options_.form)
  {
    form_.validate();
  }

  KeyOutcome Session::apply_key(reader::Key key)
  {
    KeyOutcome out;
    if (form_.fields.empty())
      return out;

    auto [next, events] = reader::handle_key(form_, key);
    form_ = std::move(next);

    out.start_ms = rig_.controller().clock_ms();
    for (auto& ev : events)
      {
        const reader::Field* field = form_.find(ev.field_id);
        LoggedEvent logged{log_.size(), rig_.controller().clock_ms(), ev};
        auto plan = reader::plan_announcement(ev, *field, options_.tones);
        reader::speak(plan, rig_.binding(), beep_);
        log_.push_back(logged);
        out.events.push_back(std::move(logged));
        out.plans.push_back(std::move(plan));
      }
    out.end_ms = rig_.controller().clock_ms();

    if (!out.events.empty())
      {
        auto slice = audio::slice_timeline(rig_.beep_timeline(), out.start_ms, out.end_ms);
        last_wav_ = audio::write_wav(
          audio::timeline_to_pcm(slice, out.end_ms - out.start_ms, options_.render));
      }
    return out;
  }

  std::string Session::transcript() const
  {
    std::string text;
    for (const auto& e : log_)
      text += e.event.transcript + "\n";
    return text;
  }

  std::vector<uint8_t> Session::session_wav() const
  {
    return audio::write_wav(audio::timeline_to_pcm(rig_.beep_timeline(),
                                                   rig_.controller().clock_ms(), options_.render));
  }

  std::string form_snapshot_json(const reader::Form& form)
  {
    json fields = json::array();
    for (const auto& f : form.fields)
      {
        json j = {
          {"id", f.id},
          {"label", f.label},
          {"kind", std::string(reader::to_string(f.kind))},
          {"value", f.value_text()},
        };
        if (f.kind == reader::FieldKind::Selection || f.kind == reader::FieldKind::Toggle)
          j["options"] = f.options;
        if (f.kind == reader::FieldKind::Numeric)
          {
            j["min"] = f.min;
            j["max"] = f.max;
            j["step"] = f.step;
          }
        fields.push_back(std::move(j));
      }
    json doc = {{"title", form.title}, {"focus", form.focus_index}, {"fields", fields}};
    return doc.dump();
  }

  std::string event_json(const LoggedEvent& e)
  {
    json j = {
      {"seq", e.seq},
      {"at_ms", e.at_ms},
      {"kind", std::string(reader::to_string(e.event.kind))},
      {"field_id", e.event.field_id},
      {"transcript", e.event.transcript},
    };
    return j.dump();
  }

}

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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hdaccess/audio.hpp"
#include "hdaccess/client.hpp"
#include "hdaccess/profile.hpp"
#include "hdaccess/screenreader.hpp"

namespace hdaccess::service
{

  /// A simulated machine with the driver already bound and the codec at
  /// cad 0 enumerated.
  class Rig
  {
  public:
    explicit Rig(const hda::Profile& profile);

    Rig(const Rig&) = delete;
    Rig& operator=(const Rig&) = delete;

    hda::SimulatedMachine& machine() { return *machine_; }
    const hda::SimulatedMachine& machine() const { return *machine_; }
    hda::ControllerModel& controller() { return machine_->controller(); }
    const hda::ControllerModel& controller() const { return machine_->controller(); }
    const hda::ControllerBinding& binding() const { return binding_; }
    const hda::CodecTopology& topology() const { return topology_; }
    uint16_t codec_mask() const { return codec_mask_; }

    /// Throws NoBeepGenerator.
    hda::NodeId beep_nid() const;

    const hda::BeepTimeline& beep_timeline() const;

  private:
    std::unique_ptr<hda::SimulatedMachine> machine_;
    hda::ControllerBinding binding_;
    uint16_t codec_mask_ = 0;
    hda::CodecTopology topology_;
  };

  struct SessionOptions
  {
    hda::Profile profile = hda::default_profile();
    reader::Form form = reader::demo_form();
    reader::ToneTable tones;
    audio::RenderConfig render;
  };

  struct LoggedEvent
  {
    uint64_t seq = 0;
    double at_ms = 0;
    reader::UiEvent event;
  };

  struct KeyOutcome
  {
    std::vector<LoggedEvent> events;
    std::vector<reader::AnnouncementPlan> plans;
    double start_ms = 0;
    double end_ms = 0;
  };

  /// One user at one simulated setup screen. Not thread-safe; the HTTP
  /// layer serialises every call.
  class Session
  {
  public:
    explicit Session(SessionOptions options = {});

    /// Navigate, announce every resulting event through the beep
    /// generator and, if anything was spoken, render it as the new last
    /// WAV.
    KeyOutcome apply_key(reader::Key key);

    const reader::Form& form() const { return form_; }
    const std::vector<LoggedEvent>& events() const { return log_; }
    const std::optional<std::vector<uint8_t>>& last_wav() const { return last_wav_; }

    /// Transcript of every event so far, one line each.
    std::string transcript() const;

    /// The whole beep timeline of the session rendered from time 0.
    std::vector<uint8_t> session_wav() const;

    Rig& rig() { return rig_; }

  private:
    SessionOptions options_;
    Rig rig_;
    hda::NodeId beep_;
    reader::Form form_;
    std::vector<LoggedEvent> log_;
    std::optional<std::vector<uint8_t>> last_wav_;
  };

  /// JSON form snapshot: title, focus index and per-field id, label,
  /// kind, value text (plus options or range).
  std::string form_snapshot_json(const reader::Form& form);

  std::string event_json(const LoggedEvent& e);

}

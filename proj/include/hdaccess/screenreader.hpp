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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdaccess/client.hpp"

namespace hdaccess::reader
{

  enum class FieldKind : uint8_t { Selection, Toggle, Numeric, Action };

  std::string_view to_string(FieldKind kind);
  std::optional<FieldKind> field_kind_from_string(std::string_view name);

  /// One control on a setup screen. `value` indexes `options` for
  /// selection and toggle fields and is the number itself for numeric
  /// fields; action fields carry no value.
  struct Field
  {
    std::string id;
    std::string label;
    FieldKind kind = FieldKind::Action;
    std::vector<std::string> options;
    int min = 0;
    int max = 0;
    int step = 1;
    int value = 0;

    std::string value_text() const;

    /// Step the value forward (+1) or back (-1) with wraparound.
    void cycle(int direction);

    /// Throws std::invalid_argument if the value is out of range.
    void validate() const;

    bool operator==(const Field&) const = default;
  };

  Field selection_field(std::string id, std::string label,
                        std::vector<std::string> options, int selected = 0);
  Field toggle_field(std::string id, std::string label, bool on);
  Field numeric_field(std::string id, std::string label, int min, int max, int value, int step = 1);
  Field action_field(std::string id, std::string label);

  struct Form
  {
    std::string title;
    std::vector<Field> fields;
    size_t focus_index = 0;

    const Field& focused() const
    { return fields.at(focus_index); }

    const Field* find(std::string_view id) const;

    void validate() const;

    bool operator==(const Form&) const = default;
  };

  /// Parse a JSON form:
  ///
  ///   {"title": "...", "fields": [
  ///     {"id": "boot", "label": "Boot Order", "kind": "selection",
  ///      "options": ["A", "B"], "value": "A"},
  ///     {"id": "sb", "label": "SecureBoot", "kind": "toggle", "value": "on"},
  ///     {"id": "hr", "label": "RTC Hour", "kind": "numeric",
  ///      "min": 0, "max": 23, "step": 1, "value": 12},
  ///     {"id": "save", "label": "Save & Exit", "kind": "action"}]}
  ///
  /// Throws ParseError naming the offending key.
  Form load_form(std::string_view document);
  Form load_form_file(const std::string& path);

  /// The shipped "demo-bios" setup screen.
  Form demo_form();

  enum class Key : uint8_t { Tab, ShiftTab, Up, Down, Left, Right, Enter };

  std::string_view to_string(Key key);
  std::optional<Key> parse_key(std::string_view name);

  /// One key name per line; blank lines and '#' comments skipped.
  /// Throws ParseError on an unknown key.
  std::vector<Key> parse_key_script(std::string_view text);

  enum class EventKind : uint8_t { FocusChanged, ValueChanged, Activated };

  std::string_view to_string(EventKind kind);

  struct UiEvent
  {
    EventKind kind;
    std::string field_id;
    std::string transcript;

    bool operator==(const UiEvent&) const = default;
  };

  /// Apply one key. Tab/Down move focus forward, ShiftTab/Up back, both
  /// wrapping; Left/Right cycle the focused value; Enter activates an
  /// action field. Keys that change nothing emit nothing. Throws
  /// std::invalid_argument for an empty form.
  std::pair<Form, std::vector<UiEvent>> handle_key(const Form& form, Key key);

  struct ToneSegment
  {
    double frequency_hz = 0;   // 0 is a silent gap
    double duration_ms = 0;

    bool operator==(const ToneSegment&) const = default;
  };

  struct AnnouncementPlan
  {
    std::vector<ToneSegment> segments;
    std::string transcript;

    double duration_ms() const;

    bool operator==(const AnnouncementPlan&) const = default;
  };

  /// Earcon and letter-tone constants. Letters map to
  /// letter_base_hz + letter_step_hz * (index in a..z).
  struct ToneTable
  {
    double selection_hz = 880;
    double toggle_hz = 660;
    double numeric_hz = 550;
    double action_hz = 440;
    double earcon_ms = 120;
    double letter_base_hz = 300;
    double letter_step_hz = 25;
    double other_hz = 200;
    double char_ms = 60;
    double gap_ms = 20;

    double earcon_hz(FieldKind kind) const;
  };

  /// Kind earcon, then (if the label is non-empty) a gap and one tone
  /// plus gap per character of the lowercased label.
  AnnouncementPlan plan_announcement(const UiEvent& event, const Field& field,
                                     const ToneTable& tones = {});

  /// Beep divider realising `frequency_hz`: 0 for silence, otherwise
  /// round(12000 / f) clamped to 1..255.
  uint8_t divider_for(double frequency_hz);

  struct SpeakResult
  {
    double start_ms = 0;
    double end_ms = 0;
  };

  /// Play a plan on the beep generator: one SetBeepControl per segment
  /// followed by a clock advance of the segment's duration, then a final
  /// SetBeepControl(0). If a send fails the final silence is still
  /// attempted and the original error rethrown.
  SpeakResult speak(const AnnouncementPlan& plan, const hda::ControllerBinding& binding,
                    hda::NodeId beep_nid, hda::CodecAddress cad = hda::CodecAddress(0),
                    unsigned max_polls = hda::default_max_polls);

}

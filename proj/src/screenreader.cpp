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

#include "hdaccess/screenreader.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "hdaccess/audio.hpp"
#include "hdaccess/error.hpp"
#include "hdaccess/text.hpp"

namespace hdaccess::reader
{

  using nlohmann::json;

  std::string_view to_string(FieldKind kind)
  {
    switch (kind)
      {
      case FieldKind::Selection: return "selection";
      case FieldKind::Toggle: return "toggle";
      case FieldKind::Numeric: return "numeric";
      case FieldKind::Action: return "action";
      }
    return "?";
  }

  std::optional<FieldKind> field_kind_from_string(std::string_view name)
  {
    for (auto k : {FieldKind::Selection, FieldKind::Toggle, FieldKind::Numeric, FieldKind::Action})
      if (to_string(k) == name)
        return k;
    return std::nullopt;
  }

  std::string Field::value_text() const
  {
    switch (kind)
      {
      case FieldKind::Selection:
      case FieldKind::Toggle:
        return options.at(size_t(value));
      case FieldKind::Numeric:
        return std::to_string(value);
      case FieldKind::Action:
        return "button";
      }
    return {};
  }

  void Field::cycle(int direction)
  {
    switch (kind)
      {
      case FieldKind::Selection:
      case FieldKind::Toggle:
        {
          int n = int(options.size());
          value = ((value + direction) % n + n) % n;
          break;
        }
      case FieldKind::Numeric:
        value += direction * step;
        if (value > max)
          value = min;
        else if (value < min)
          value = max;
        break;
      case FieldKind::Action:
        break;
      }
  }

  void Field::validate() const
  {
    if (id.empty())
      throw std::invalid_argument("field id is empty");
    switch (kind)
      {
      case FieldKind::Selection:
      case FieldKind::Toggle:
        if (options.empty())
          throw std::invalid_argument("field " + id + " has no options");
        if (value < 0 || size_t(value) >= options.size())
          throw std::invalid_argument("field " + id + " value out of range");
        break;
      case FieldKind::Numeric:
        if (min > max || step < 1)
          throw std::invalid_argument("field " + id + " has an empty range");
        if (value < min || value > max)
          throw std::invalid_argument("field " + id + " value out of range");
        break;
      case FieldKind::Action:
        break;
      }
  }

  Field selection_field(std::string id, std::string label,
                        std::vector<std::string> options, int selected)
  {
    Field f{std::move(id), std::move(label), FieldKind::Selection, std::move(options)};
    f.value = selected;
    f.validate();
    return f;
  }

  Field toggle_field(std::string id, std::string label, bool on)
  {
    Field f{std::move(id), std::move(label), FieldKind::Toggle, {"off", "on"}};
    f.value = on ? 1 : 0;
    return f;
  }

  Field numeric_field(std::string id, std::string label, int min, int max, int value, int step)
  {
    Field f{std::move(id), std::move(label), FieldKind::Numeric, {}, min, max, step, value};
    f.validate();
    return f;
  }

  Field action_field(std::string id, std::string label)
  {
    Field f;
    f.id = std::move(id);
    f.label = std::move(label);
    f.kind = FieldKind::Action;
    return f;
  }

  const Field* Form::find(std::string_view id) const
  {
    for (const auto& f : fields)
      if (f.id == id)
        return &f;
    return nullptr;
  }

  void Form::validate() const
  {
    std::set<std::string> ids;
    for (const auto& f : fields)
      {
        f.validate();
        if (!ids.insert(f.id).second)
          throw std::invalid_argument("duplicate field id " + f.id);
      }
    if (!fields.empty() && focus_index >= fields.size())
      throw std::invalid_argument("focus index out of range");
  }

  namespace
  {
    [[noreturn]] void fail(const std::string& path, const std::string& what)
    {
      throw ParseError(path + ": " + what);
    }

    std::string string_at(const json& j, const std::string& key, const std::string& path)
    {
      if (!j.contains(key) || !j[key].is_string())
        fail(path + "." + key, "missing or not a string");
      return j[key].get<std::string>();
    }

    int int_at(const json& j, const std::string& key, const std::string& path, int fallback)
    {
      if (!j.contains(key))
        return fallback;
      if (!j[key].is_number_integer())
        fail(path + "." + key, "expected an integer");
      return j[key].get<int>();
    }

    Field parse_field(const json& j, const std::string& path)
    {
      if (!j.is_object())
        fail(path, "expected an object");
      Field f;
      f.id = string_at(j, "id", path);
      f.label = string_at(j, "label", path);
      auto kind = field_kind_from_string(string_at(j, "kind", path));
      if (!kind)
        fail(path + ".kind", "unknown field kind");
      f.kind = *kind;

      switch (f.kind)
        {
        case FieldKind::Selection:
        case FieldKind::Toggle:
          {
            if (f.kind == FieldKind::Toggle && !j.contains("options"))
              f.options = {"off", "on"};
            else
              {
                if (!j.contains("options") || !j["options"].is_array())
                  fail(path + ".options", "missing or not an array");
                for (const auto& o : j["options"])
                  {
                    if (!o.is_string())
                      fail(path + ".options", "options must be strings");
                    f.options.push_back(o.get<std::string>());
                  }
              }
            if (j.contains("value"))
              {
                if (!j["value"].is_string())
                  fail(path + ".value", "expected one of the options");
                auto it = std::find(f.options.begin(), f.options.end(), j["value"].get<std::string>());
                if (it == f.options.end())
                  fail(path + ".value", "not one of the options");
                f.value = int(it - f.options.begin());
              }
            break;
          }
        case FieldKind::Numeric:
          f.min = int_at(j, "min", path, 0);
          f.max = int_at(j, "max", path, 0);
          f.step = int_at(j, "step", path, 1);
          f.value = int_at(j, "value", path, f.min);
          break;
        case FieldKind::Action:
          break;
        }

      try
        {
          f.validate();
        }
      catch (const std::invalid_argument& e)
        {
          fail(path, e.what());
        }
      return f;
    }
  }

  Form load_form(std::string_view document)
  {
    json doc;
    try
      {
        doc = json::parse(document);
      }
    catch (const json::parse_error& e)
      {
        throw ParseError(std::string("form: ") + e.what());
      }
    if (!doc.is_object())
      fail("form", "expected an object");

    Form form;
    form.title = string_at(doc, "title", "form");
    if (!doc.contains("fields") || !doc["fields"].is_array())
      fail("fields", "missing or not an array");
    std::set<std::string> ids;
    for (size_t i = 0; i < doc["fields"].size(); ++i)
      {
        std::string path = "fields[" + std::to_string(i) + "]";
        Field f = parse_field(doc["fields"][i], path);
        if (!ids.insert(f.id).second)
          fail(path + ".id", "duplicate field id " + f.id);
        form.fields.push_back(std::move(f));
      }
    return form;
  }

  Form load_form_file(const std::string& path)
  {
    return load_form(read_file(path));
  }

  Form demo_form()
  {
    Form form;
    form.title = "Setup Utility";
    form.fields.push_back(selection_field("boot-order", "Boot Order",
                                          {"Windows Boot Manager", "ubuntu", "UEFI Shell"}));
    form.fields.push_back(toggle_field("secure-boot", "SecureBoot", true));
    form.fields.push_back(numeric_field("rtc-hour", "RTC Hour", 0, 23, 12));
    form.fields.push_back(action_field("save-exit", "Save & Exit"));
    return form;
  }

  std::string_view to_string(Key key)
  {
    switch (key)
      {
      case Key::Tab: return "Tab";
      case Key::ShiftTab: return "ShiftTab";
      case Key::Up: return "Up";
      case Key::Down: return "Down";
      case Key::Left: return "Left";
      case Key::Right: return "Right";
      case Key::Enter: return "Enter";
      }
    return "?";
  }

  std::optional<Key> parse_key(std::string_view name)
  {
    for (auto k : {Key::Tab, Key::ShiftTab, Key::Up, Key::Down, Key::Left, Key::Right, Key::Enter})
      if (to_string(k) == name)
        return k;
    return std::nullopt;
  }

  std::vector<Key> parse_key_script(std::string_view text)
  {
    std::vector<Key> keys;
    unsigned line_no = 0;
    for (auto line : split_lines(text))
      {
        ++line_no;
        line = strip_comment(line);
        if (line.empty())
          continue;
        auto key = parse_key(line);
        if (!key)
          throw ParseError("line " + std::to_string(line_no) + ": unknown key \""
                           + std::string(line) + "\"");
        keys.push_back(*key);
      }
    return keys;
  }

  std::string_view to_string(EventKind kind)
  {
    switch (kind)
      {
      case EventKind::FocusChanged: return "FocusChanged";
      case EventKind::ValueChanged: return "ValueChanged";
      case EventKind::Activated: return "Activated";
      }
    return "?";
  }

  namespace
  {
    UiEvent describe(EventKind kind, const Field& f)
    {
      if (kind == EventKind::Activated)
        return {kind, f.id, f.label + " activated"};
      return {kind, f.id, f.label + ": " + f.value_text()};
    }
  }

  std::pair<Form, std::vector<UiEvent>> handle_key(const Form& form, Key key)
  {
    if (form.fields.empty())
      throw std::invalid_argument("form has no fields");

    Form next = form;
    std::vector<UiEvent> events;
    const size_t n = next.fields.size();

    switch (key)
      {
      case Key::Tab:
      case Key::Down:
        next.focus_index = (next.focus_index + 1) % n;
        events.push_back(describe(EventKind::FocusChanged, next.focused()));
        break;
      case Key::ShiftTab:
      case Key::Up:
        next.focus_index = (next.focus_index + n - 1) % n;
        events.push_back(describe(EventKind::FocusChanged, next.focused()));
        break;
      case Key::Left:
      case Key::Right:
        {
          Field& f = next.fields[next.focus_index];
          if (f.kind == FieldKind::Action)
            break;
          f.cycle(key == Key::Right ? 1 : -1);
          events.push_back(describe(EventKind::ValueChanged, f));
          break;
        }
      case Key::Enter:
        if (next.focused().kind == FieldKind::Action)
          events.push_back(describe(EventKind::Activated, next.focused()));
        break;
      }
    return {std::move(next), std::move(events)};
  }

  double AnnouncementPlan::duration_ms() const
  {
    double total = 0;
    for (const auto& s : segments)
      total += s.duration_ms;
    return total;
  }

  double ToneTable::earcon_hz(FieldKind kind) const
  {
    switch (kind)
      {
      case FieldKind::Selection: return selection_hz;
      case FieldKind::Toggle: return toggle_hz;
      case FieldKind::Numeric: return numeric_hz;
      case FieldKind::Action: return action_hz;
      }
    return action_hz;
  }

  AnnouncementPlan plan_announcement(const UiEvent& event, const Field& field,
                                     const ToneTable& tones)
  {
    AnnouncementPlan plan;
    plan.transcript = event.transcript;
    plan.segments.push_back({tones.earcon_hz(field.kind), tones.earcon_ms});
    if (field.label.empty())
      return plan;

    plan.segments.push_back({0, tones.gap_ms});
    for (unsigned char c : field.label)
      {
        if (c >= 'A' && c <= 'Z')
          c = static_cast<unsigned char>(c - 'A' + 'a');
        double hz = (c >= 'a' && c <= 'z')
          ? tones.letter_base_hz + tones.letter_step_hz * (c - 'a')
          : tones.other_hz;
        plan.segments.push_back({hz, tones.char_ms});
        plan.segments.push_back({0, tones.gap_ms});
      }
    return plan;
  }

  uint8_t divider_for(double frequency_hz)
  {
    if (!(frequency_hz > 0))
      return 0;
    double d = std::round(audio::beep_base_hz / frequency_hz);
    return uint8_t(std::clamp(d, 1.0, 255.0));
  }

  SpeakResult speak(const AnnouncementPlan& plan, const hda::ControllerBinding& binding,
                    hda::NodeId beep_nid, hda::CodecAddress cad, unsigned max_polls)
  {
    if (!binding.controller)
      throw std::invalid_argument("controller binding is not attached");
    hda::ControllerModel& ctl = *binding.controller;

    auto set_beep = [&](uint8_t divider) {
      hda::send_verb(binding, {cad, beep_nid, hda::verbs::set_beep_control, divider}, max_polls);
    };

    SpeakResult result{ctl.clock_ms(), ctl.clock_ms()};
    try
      {
        for (const auto& seg : plan.segments)
          {
            set_beep(divider_for(seg.frequency_hz));
            ctl.advance_clock(seg.duration_ms);
          }
        set_beep(0);
      }
    catch (...)
      {
        try
          {
            set_beep(0);
          }
        catch (...)
          {
          }
        throw;
      }
    result.end_ms = ctl.clock_ms();
    return result;
  }

}

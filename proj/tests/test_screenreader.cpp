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
#include <stdexcept>

#include "hdaccess/error.hpp"
#include "hdaccess/screenreader.hpp"

using namespace hdaccess;
using namespace hdaccess::reader;

namespace
{
  Form two_fields()
  {
    Form f;
    f.title = "t";
    f.fields.push_back(toggle_field("a", "Ab", false));
    f.fields.push_back(action_field("go", "Go"));
    return f;
  }

  struct Bench
  {
    hda::SimulatedMachine machine;
    hda::ControllerBinding binding;

    Bench()
    {
      machine.controller().attach_codec(hda::CodecAddress(0),
                                        hda::CodecModel(hda::default_codec_profile()));
      binding = hda::bind_controller(machine);
      hda::bring_up(binding);
    }

    const hda::BeepTimeline& timeline() const
    {
      return machine.controller().codec(hda::CodecAddress(0))->beep_timeline(hda::NodeId(0x12));
    }
  };
}

TEST_CASE("field value text")
{
  CHECK(selection_field("b", "Boot", {"x", "y"}, 1).value_text() == "y");
  CHECK(toggle_field("s", "S", true).value_text() == "on");
  CHECK(toggle_field("s", "S", false).value_text() == "off");
  CHECK(numeric_field("h", "H", 0, 23, 7).value_text() == "7");
  CHECK(action_field("g", "Go").value_text() == "button");
}

TEST_CASE("cycling wraps in both directions")
{
  auto sel = selection_field("b", "Boot", {"x", "y", "z"});
  sel.cycle(-1);
  CHECK(sel.value == 2);
  sel.cycle(1);
  CHECK(sel.value == 0);

  auto num = numeric_field("h", "H", 0, 23, 23);
  num.cycle(1);
  CHECK(num.value == 0);
  num.cycle(-1);
  CHECK(num.value == 23);

  auto stepped = numeric_field("v", "V", 0, 10, 8, 5);
  stepped.cycle(1);
  CHECK(stepped.value == 0);
}

TEST_CASE("field validation")
{
  CHECK_THROWS_AS(selection_field("b", "B", {}), std::invalid_argument);
  CHECK_THROWS_AS(selection_field("b", "B", {"x"}, 1), std::invalid_argument);
  CHECK_THROWS_AS(numeric_field("h", "H", 5, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(numeric_field("h", "H", 0, 4, 9), std::invalid_argument);
  Form dup = two_fields();
  dup.fields[1].id = "a";
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
}

TEST_CASE("navigation from a fresh demo form")
{
  Form f = demo_form();
  auto [after_tab, events] = handle_key(f, Key::Tab);
  CHECK(after_tab.focus_index == 1);
  REQUIRE(events.size() == 1);
  CHECK(events[0] == UiEvent{EventKind::FocusChanged, "secure-boot", "SecureBoot: on"});

  auto [wrapped, back] = handle_key(f, Key::ShiftTab);
  CHECK(wrapped.focus_index == 3);
  CHECK(back[0].transcript == "Save & Exit: button");
  CHECK(handle_key(f, Key::Up).first.focus_index == 3);
  CHECK(handle_key(f, Key::Down).first.focus_index == 1);
}

TEST_CASE("value keys and enter")
{
  Form f = demo_form();
  auto [changed, ev] = handle_key(f, Key::Right);
  CHECK(changed.fields[0].value == 1);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0] == UiEvent{EventKind::ValueChanged, "boot-order", "Boot Order: ubuntu"});

  CHECK(handle_key(f, Key::Enter).second.empty());

  f.focus_index = 3;
  CHECK(handle_key(f, Key::Left).second.empty());
  auto [same, act] = handle_key(f, Key::Enter);
  CHECK(same == f);
  REQUIRE(act.size() == 1);
  CHECK(act[0] == UiEvent{EventKind::Activated, "save-exit", "Save & Exit activated"});

  CHECK_THROWS_AS(handle_key(Form{}, Key::Tab), std::invalid_argument);
}

TEST_CASE("single field form still announces focus")
{
  Form f;
  f.fields.push_back(action_field("go", "Go"));
  auto [next, ev] = handle_key(f, Key::Tab);
  CHECK(next.focus_index == 0);
  CHECK(ev.size() == 1);
}

TEST_CASE("focus stays valid under random keys")
{
  std::mt19937 rng(44);
  for (int trial = 0; trial < 50; ++trial)
    {
      Form f;
      size_t n = 1 + rng() % 8;
      for (size_t i = 0; i < n; ++i)
        {
          std::string id = "f" + std::to_string(i);
          switch (rng() % 4)
            {
            case 0: f.fields.push_back(selection_field(id, id, {"a", "b", "c"})); break;
            case 1: f.fields.push_back(toggle_field(id, id, rng() % 2)); break;
            case 2: f.fields.push_back(numeric_field(id, id, -3, 3, 0)); break;
            default: f.fields.push_back(action_field(id, id)); break;
            }
        }
      for (int k = 0; k < 500; ++k)
        {
          Key key = Key(rng() % 7);
          auto [next, events] = handle_key(f, key);
          REQUIRE(next.focus_index < next.fields.size());
          REQUIRE_NOTHROW(next.validate());
          REQUIRE(events.size() <= 1);
          for (const auto& e : events)
            REQUIRE(e.field_id == next.focused().id);
          f = std::move(next);
        }
    }
}

TEST_CASE("key script parsing")
{
  auto keys = parse_key_script("# demo\nTab\n\n  Right # flip\nEnter\n");
  CHECK(keys == std::vector<Key>{Key::Tab, Key::Right, Key::Enter});
  CHECK_FALSE(parse_key("tab"));
  try
    {
      parse_key_script("Tab\nSpace\n");
      FAIL("expected a parse error");
    }
  catch (const ParseError& e)
    {
      CHECK(std::string(e.what()).find("line 2") == 0);
    }
}

TEST_CASE("form documents")
{
  Form f = load_form_file(HDACCESS_SOURCE_DIR "/forms/demo-bios.json");
  CHECK(f == demo_form());
  CHECK_THROWS_AS(load_form("[]"), ParseError);
  CHECK_THROWS_AS(load_form(R"({"title": "x", "fields": [{"id": "a", "label": "A", "kind": "dial"}]})"),
                  ParseError);
  CHECK_THROWS_AS(load_form(R"({"title": "x", "fields": [{"id": "a", "label": "A",
    "kind": "selection", "options": ["p"], "value": "q"}]})"), ParseError);
  CHECK_THROWS_AS(load_form(R"({"title": "x", "fields": [{"id": "a", "label": "A", "kind": "action"},
    {"id": "a", "label": "B", "kind": "action"}]})"), ParseError);
}

TEST_CASE("announcement plan layout")
{
  Field f = toggle_field("sb", "Ab1", true);
  auto plan = plan_announcement({EventKind::FocusChanged, "sb", "Ab1: on"}, f);
  std::vector<ToneSegment> expect{
    {660, 120}, {0, 20},
    {300, 60}, {0, 20},
    {325, 60}, {0, 20},
    {200, 60}, {0, 20},
  };
  CHECK(plan.segments == expect);
  CHECK(plan.transcript == "Ab1: on");
  CHECK(plan.duration_ms() == 120 + 20 + 3 * 80);

  Field unlabeled = action_field("x", "");
  auto bare = plan_announcement({EventKind::Activated, "x", " activated"}, unlabeled);
  CHECK(bare.segments == std::vector<ToneSegment>{{440, 120}});
}

TEST_CASE("duration property: 140 + 80 per character")
{
  std::mt19937 rng(2);
  for (int i = 0; i < 500; ++i)
    {
      std::string label;
      size_t n = 1 + rng() % 30;
      for (size_t k = 0; k < n; ++k)
        label += char(32 + rng() % 95);
      Field f = action_field("a", label);
      auto plan = plan_announcement({EventKind::Activated, "a", label}, f);
      REQUIRE(plan.duration_ms() == doctest::Approx(140.0 + 80.0 * n));
    }
}

TEST_CASE("divider mapping")
{
  CHECK(divider_for(0) == 0);
  CHECK(divider_for(880) == 14);
  CHECK(divider_for(300) == 40);
  CHECK(divider_for(12000) == 1);
  CHECK(divider_for(24000) == 1);
  CHECK(divider_for(10) == 255);
}

TEST_CASE("speak writes one divider per segment and ends silent")
{
  Bench b;
  Field f = action_field("go", "Go");
  auto plan = plan_announcement({EventKind::Activated, "go", "Go activated"}, f);
  auto r = speak(plan, b.binding, hda::NodeId(0x12));
  CHECK(r.start_ms == 0);
  CHECK(r.end_ms == doctest::Approx(plan.duration_ms()));

  const auto& tl = b.timeline();
  REQUIRE(tl.size() == plan.segments.size() + 1);
  double t = 0;
  for (size_t i = 0; i < plan.segments.size(); ++i)
    {
      CHECK(tl[i].t_ms == doctest::Approx(t));
      CHECK(tl[i].divider == divider_for(plan.segments[i].frequency_hz));
      t += plan.segments[i].duration_ms;
    }
  CHECK(tl.back() == hda::BeepEntry{t, 0});
  CHECK(b.machine.controller().fault_log().empty());
}

TEST_CASE("speak silences the generator when a send fails")
{
  Bench b;
  Field f = action_field("go", "Go");
  auto plan = plan_announcement({EventKind::Activated, "go", "Go activated"}, f);
  b.machine.controller().set_latency_steps(3);
  CHECK_THROWS_AS(speak(plan, b.binding, hda::NodeId(0x12), hda::CodecAddress(0), 2),
                  ResponseTimeout);
  CHECK_THROWS_AS(speak(plan, {}, hda::NodeId(0x12)), std::invalid_argument);
}

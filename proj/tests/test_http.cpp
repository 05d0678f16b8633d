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

#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "hdaccess/audio.hpp"
#include "hdaccess/http_service.hpp"

using namespace hdaccess;
using namespace hdaccess::service;
using nlohmann::json;

namespace
{
  struct Server
  {
    HttpService service;
    int port = -1;
    std::thread thread;

    Server()
    {
      port = service.bind("127.0.0.1", 0);
      REQUIRE(port > 0);
      thread = std::thread([this] { service.run(); });
    }

    ~Server()
    {
      service.stop();
      thread.join();
    }

    httplib::Client client() const
    {
      httplib::Client c("127.0.0.1", port);
      c.set_read_timeout(5, 0);
      return c;
    }

    json post_key(const std::string& key) const
    {
      auto res = client().Post("/api/key", json{{"key", key}}.dump(), "application/json");
      REQUIRE(res);
      REQUIRE(res->status == 200);
      return json::parse(res->body);
    }

    // Collect `want` frames from the event stream, then hang up.
    std::vector<json> read_events(size_t want, const std::string& query = "") const
    {
      std::vector<json> frames;
      std::string buffer;
      auto c = client();
      c.Get("/api/events" + query, [&](const char* data, size_t len) {
        buffer.append(data, len);
        size_t end;
        while ((end = buffer.find("\n\n")) != std::string::npos)
          {
            std::string frame = buffer.substr(0, end);
            buffer.erase(0, end + 2);
            auto at = frame.find("data: ");
            if (at != std::string::npos)
              frames.push_back(json::parse(frame.substr(at + 6)));
          }
        return frames.size() < want;
      });
      return frames;
    }
  };
}

TEST_CASE("form snapshot")
{
  Server s;
  auto res = s.client().Get("/api/form");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Content-Type") == "application/json");
  auto j = json::parse(res->body);
  CHECK(j["focus"] == 0);
  CHECK(j["fields"].size() == 4);
  CHECK(j["fields"][3]["label"] == "Save & Exit");
}

TEST_CASE("audio before any key is 404")
{
  Server s;
  auto res = s.client().Get("/api/audio/last");
  REQUIRE(res);
  CHECK(res->status == 404);
}

TEST_CASE("tab on a fresh form emits one focus change and a matching clip")
{
  Server s;
  auto reply = s.post_key("Tab");
  REQUIRE(reply["events"].size() == 1);
  CHECK(reply["events"][0]["kind"] == "FocusChanged");
  CHECK(reply["events"][0]["transcript"] == "SecureBoot: on");
  CHECK(reply["focus"] == 1);
  double audio_ms = reply["audio_ms"];
  CHECK(audio_ms == doctest::Approx(140 + 80 * 10));

  auto res = s.client().Get("/api/audio/last");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Content-Type") == "audio/wav");
  auto pcm = audio::read_wav(std::vector<uint8_t>(res->body.begin(), res->body.end()));
  CHECK(std::abs(double(pcm.samples.size()) - audio_ms * 48) <= 1.0);

  auto form = json::parse(s.client().Get("/api/form")->body);
  CHECK(form["focus"] == 1);
}

TEST_CASE("bad key requests are 400")
{
  Server s;
  auto c = s.client();
  auto unknown = c.Post("/api/key", R"({"key": "Space"})", "application/json");
  REQUIRE(unknown);
  CHECK(unknown->status == 400);
  auto junk = c.Post("/api/key", "{", "application/json");
  REQUIRE(junk);
  CHECK(junk->status == 400);
  auto wrong = c.Post("/api/key", R"({"key": 3})", "application/json");
  REQUIRE(wrong);
  CHECK(wrong->status == 400);
  CHECK(c.Get("/api/transcript")->body.empty());
}

TEST_CASE("transcript accumulates")
{
  Server s;
  s.post_key("Tab");
  s.post_key("Right");
  auto res = s.client().Get("/api/transcript");
  REQUIRE(res);
  CHECK(res->body == "SecureBoot: on\nSecureBoot: off\n");
}

TEST_CASE("event stream replays POST replies in order")
{
  Server s;
  std::vector<json> posted;
  for (const char* k : {"Tab", "Right", "Enter", "Tab", "Tab", "Enter", "ShiftTab", "Left"})
    {
      json reply = s.post_key(k);
      for (const auto& e : reply["events"])
        posted.push_back(e);
    }
  REQUIRE(posted.size() == 7);

  auto streamed = s.read_events(posted.size());
  REQUIRE(streamed.size() == posted.size());
  for (size_t i = 0; i < posted.size(); ++i)
    CHECK(streamed[i] == posted[i]);

  auto tail = s.read_events(2, "?from=5");
  REQUIRE(tail.size() == 2);
  CHECK(tail[0]["seq"] == 5);
}

TEST_CASE("live subscriber sees events posted after it connects")
{
  Server s;
  std::vector<json> seen;
  std::thread reader([&] { seen = s.read_events(3); });
  std::vector<json> posted;
  for (const char* k : {"Down", "Down", "Down"})
    {
      std::this_thread::sleep_for(std::chrono::milliseconds(30));
      json reply = s.post_key(k);
      for (const auto& e : reply["events"])
        posted.push_back(e);
    }
  reader.join();
  CHECK(seen == posted);
}

TEST_CASE("concurrent posts are applied one at a time")
{
  Server s;
  std::vector<std::thread> workers;
  for (int i = 0; i < 4; ++i)
    workers.emplace_back([&] {
      for (int k = 0; k < 5; ++k)
        s.post_key("Tab");
    });
  for (auto& w : workers)
    w.join();
  auto form = json::parse(s.client().Get("/api/form")->body);
  CHECK(form["focus"] == 20 % 4);
  auto events = s.read_events(20);
  REQUIRE(events.size() == 20);
  for (size_t i = 0; i < events.size(); ++i)
    CHECK(events[i]["seq"] == i);
  for (size_t i = 1; i < events.size(); ++i)
    CHECK(events[i]["at_ms"].get<double>() > events[i - 1]["at_ms"].get<double>());
}

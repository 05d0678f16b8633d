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

#include "hdaccess/http_service.hpp"

#include <chrono>

#include <httplib.h>
#include <json.hpp>

#include "hdaccess/error.hpp"
#include "hdaccess/text.hpp"

namespace hdaccess::service
{

  using nlohmann::json;

  namespace
  {
    void json_error(httplib::Response& res, int status, const std::string& message)
    {
      res.status = status;
      res.set_content(json{{"error", message}}.dump(), "application/json");
    }

    std::string sse_frame(const LoggedEvent& e)
    {
      return "id: " + std::to_string(e.seq) + "\nevent: ui\ndata: " + event_json(e) + "\n\n";
    }
  }

  HttpService::HttpService(SessionOptions options, std::string static_dir)
    : session_(std::move(options)),
      static_dir_(std::move(static_dir)),
      server_(std::make_unique<httplib::Server>())
  {
    routes();
  }

  HttpService::~HttpService()
  {
    stop();
  }

  void HttpService::routes()
  {
    auto& svr = *server_;
    svr.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

    svr.Get("/api/form", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      res.set_content(form_snapshot_json(session_.form()), "application/json");
    });

    svr.Post("/api/key", [this](const httplib::Request& req, httplib::Response& res) {
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object() || !body.contains("key")
          || !body["key"].is_string())
        return json_error(res, 400, "expected {\"key\": <name>}");
      auto key = reader::parse_key(body["key"].get<std::string>());
      if (!key)
        return json_error(res, 400, "unknown key " + body["key"].get<std::string>());

      json reply;
      {
        std::lock_guard lock(mutex_);
        try
          {
            KeyOutcome outcome = session_.apply_key(*key);
            json events = json::array();
            for (const auto& e : outcome.events)
              events.push_back(json::parse(event_json(e)));
            reply = {{"events", events},
                     {"focus", session_.form().focus_index},
                     {"audio_ms", outcome.end_ms - outcome.start_ms}};
          }
        catch (const Error& e)
          {
            return json_error(res, 500, e.what());
          }
      }
      changed_.notify_all();
      res.set_content(reply.dump(), "application/json");
    });

    svr.Get("/api/events", [this](const httplib::Request& req, httplib::Response& res) {
      size_t from = 0;
      if (req.has_param("from"))
        from = parse_decimal(req.get_param_value("from"), 0xFFFFFFFF).value_or(0);
      else if (req.has_header("Last-Event-ID"))
        if (auto last = parse_decimal(req.get_header_value("Last-Event-ID"), 0xFFFFFFFE))
          from = *last + 1;

      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
        "text/event-stream",
        [this, cursor = from](size_t, httplib::DataSink& sink) mutable {
          std::string chunk;
          {
            std::unique_lock lock(mutex_);
            changed_.wait_for(lock, std::chrono::milliseconds(500), [&] {
              return stopping_ || session_.events().size() > cursor;
            });
            if (stopping_)
              {
                sink.done();
                return true;
              }
            const auto& log = session_.events();
            for (; cursor < log.size(); ++cursor)
              chunk += sse_frame(log[cursor]);
          }
          if (chunk.empty())
            chunk = ": keep-alive\n\n";
          return sink.write(chunk.data(), chunk.size());
        });
    });

    svr.Get("/api/audio/last", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      const auto& wav = session_.last_wav();
      if (!wav)
        return json_error(res, 404, "no audio yet");
      res.set_content(reinterpret_cast<const char*>(wav->data()), wav->size(), "audio/wav");
    });

    svr.Get("/api/transcript", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      res.set_content(session_.transcript(), "text/plain; charset=utf-8");
    });

    if (!static_dir_.empty())
      svr.set_mount_point("/", static_dir_);
  }

  int HttpService::bind(const std::string& host, int port)
  {
    if (port == 0)
      return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
  }

  bool HttpService::run()
  {
    return server_->listen_after_bind();
  }

  void HttpService::stop()
  {
    {
      std::lock_guard lock(mutex_);
      stopping_ = true;
    }
    changed_.notify_all();
    if (server_)
      server_->stop();
  }

}

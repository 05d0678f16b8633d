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

#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>

#include "hdaccess/session.hpp"

namespace httplib
{
  class Server;
}

namespace hdaccess::service
{

  /// HTTP front end for one Session.
  ///
  ///   GET  /api/form         form snapshot (JSON)
  ///   POST /api/key          {"key": "Tab"} -> events emitted by that key
  ///   GET  /api/events       server-sent events, replayed from the start
  ///                          (or from ?from=N / Last-Event-ID)
  ///   GET  /api/audio/last   most recent announcement as audio/wav
  ///   GET  /api/transcript   session transcript, text/plain
  ///
  /// Requests may arrive concurrently; session mutations are applied one
  /// at a time under a single lock.
  class HttpService
  {
  public:
    explicit HttpService(SessionOptions options = {}, std::string static_dir = {});
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    /// Bind to host:port (port 0 picks a free one) and return the port,
    /// or -1 on failure.
    int bind(const std::string& host, int port);

    /// Serve until stop(). Call after bind().
    bool run();

    void stop();

  private:
    void routes();

    std::mutex mutex_;
    std::condition_variable changed_;
    bool stopping_ = false;
    Session session_;
    std::string static_dir_;
    std::unique_ptr<httplib::Server> server_;
  };

}

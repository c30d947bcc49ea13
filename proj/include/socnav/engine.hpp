// Copyright 2026 The socnav Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy of
// the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations under
// the License.

#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "socnav/community.hpp"
#include "socnav/config.hpp"
#include "socnav/haptics.hpp"
#include "socnav/recommender.hpp"

namespace socnav {

/// Single worker thread running submitted tasks in FIFO order.
class CommandQueue {
 public:
  CommandQueue();
  ~CommandQueue();
  CommandQueue(const CommandQueue&) = delete;
  CommandQueue& operator=(const CommandQueue&) = delete;

  /// Runs `task` on the worker and blocks until it finishes; exceptions
  /// propagate to the caller.
  template <typename F>
  auto run(F&& task) -> decltype(task()) {
    using R = decltype(task());
    auto packaged = std::make_shared<std::packaged_task<R()>>(std::forward<F>(task));
    auto result = packaged->get_future();
    enqueue([packaged] { (*packaged)(); });
    return result.get();
  }

 private:
  void enqueue(std::function<void()> task);
  void loop();

  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<std::function<void()>> tasks_;
  bool stopping_ = false;
  std::thread worker_;
};

struct ApiResponse {
  int status = 200;
  std::string body;
};

/// Optional fields of a member status update.
struct StatusUpdate {
  std::optional<std::optional<Vec3>> current_location;  ///< inner nullopt clears it
  std::optional<bool> reachable;
};

/// Hosts one community. Reads work on immutable snapshots; every mutation is
/// applied to a copy on the command queue, persisted if a data path is
/// configured, and then published. A read issued after a mutation returns
/// sees its effect.
class Engine {
 public:
  Engine(Community community, EngineConfig config);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  std::shared_ptr<const Community> snapshot() const;
  std::uint64_t version() const;
  const EngineConfig& config() const { return config_; }

  /// Returns the new tick.
  std::uint64_t submit_ratings(const std::vector<RatingInput>& batch);
  /// Returns true when the call completed a mutual certification.
  bool certify(MemberId from, MemberId to);
  void declare_friend(MemberId declarer, MemberId target);
  void update_status(MemberId id, const StatusUpdate& update);

  /// Runs a recommendation on the current snapshot. A non-empty query id
  /// stores the gather trace under that id.
  recommender::Recommendation recommend(const recommender::UserContext& ctx,
                                        const std::string& query_id = {});
  std::optional<std::string> trace(const std::string& query_id) const;

  /// Scene for a context; without one, nobody is recommended.
  haptics::TactileScene scene(const std::optional<recommender::UserContext>& ctx);

  /// Dispatches one API request and returns a JSON body.
  ApiResponse handle(std::string_view method, std::string_view path,
                     std::string_view body);

  /// Binds the HTTP listener; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); bind() must have succeeded.
  void listen();
  void serve(const std::string& host, int port) {
    bind(host, port);
    listen();
  }
  void stop();

 private:
  template <typename F>
  auto mutate(F&& apply);

  struct Session {
    explicit Session(haptics::ProbeSession p) : probe(std::move(p)) {}
    std::mutex mutex;
    haptics::ProbeSession probe;
  };

  ApiResponse route(std::string_view method, const std::vector<std::string>& parts,
                    std::string_view body);

  EngineConfig config_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Community> current_;
  std::uint64_t version_ = 0;

  mutable std::mutex traces_mutex_;
  std::map<std::string, std::string> traces_;

  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;

  struct Server;
  std::unique_ptr<Server> server_;

  CommandQueue queue_;  // declared last so it drains first on destruction
};

}  // namespace socnav

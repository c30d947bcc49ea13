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

#include "socnav/engine.hpp"

#include <charconv>

#include <httplib.h>

#include "json_io.hpp"
#include "socnav/document.hpp"
#include "wire.hpp"

namespace socnav {

using json_io::json;

CommandQueue::CommandQueue() : worker_([this] { loop(); }) {}

CommandQueue::~CommandQueue() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  ready_.notify_all();
  worker_.join();
}

void CommandQueue::enqueue(std::function<void()> task) {
  {
    std::lock_guard lock(mutex_);
    if (stopping_) fail(ErrorCode::internal, "command queue is shut down");
    tasks_.push_back(std::move(task));
  }
  ready_.notify_one();
}

void CommandQueue::loop() {
  for (;;) {
    std::function<void()> task;
    {
      std::unique_lock lock(mutex_);
      ready_.wait(lock, [this] { return stopping_ || !tasks_.empty(); });
      if (tasks_.empty()) return;
      task = std::move(tasks_.front());
      tasks_.pop_front();
    }
    task();
  }
}

struct Engine::Server {
  httplib::Server http;
};

Engine::Engine(Community community, EngineConfig config)
    : config_(std::move(config)),
      current_(std::make_shared<const Community>(std::move(community))) {
  config_.validate();
  current_->validate();
}

Engine::~Engine() { stop(); }

std::shared_ptr<const Community> Engine::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

std::uint64_t Engine::version() const {
  std::lock_guard lock(snapshot_mutex_);
  return version_;
}

template <typename F>
auto Engine::mutate(F&& apply) {
  return queue_.run([this, &apply] {
    // Only the queue worker replaces current_, so this copy cannot go stale.
    Community next = *snapshot();
    auto result = apply(next);
    if (config_.data_path) write_file_atomic(*config_.data_path, save_community(next));
    auto published = std::make_shared<const Community>(std::move(next));
    std::lock_guard lock(snapshot_mutex_);
    current_ = std::move(published);
    ++version_;
    return result;
  });
}

std::uint64_t Engine::submit_ratings(const std::vector<RatingInput>& batch) {
  return mutate([&](Community& c) {
    c.submit_ratings(batch, config_.trust);
    return c.tick();
  });
}

bool Engine::certify(MemberId from, MemberId to) {
  return mutate([&](Community& c) { return c.certify(from, to); });
}

void Engine::declare_friend(MemberId declarer, MemberId target) {
  mutate([&](Community& c) {
    c.declare_friend(declarer, target);
    return true;
  });
}

void Engine::update_status(MemberId id, const StatusUpdate& update) {
  mutate([&](Community& c) {
    c.member(id);
    if (update.current_location) c.set_current_location(id, *update.current_location);
    if (update.reachable) c.set_reachable(id, *update.reachable);
    return true;
  });
}

recommender::Recommendation Engine::recommend(const recommender::UserContext& ctx,
                                              const std::string& query_id) {
  const auto snap = snapshot();
  auto rec = recommender::recommend(ctx, *snap, config_.recommender_config(), query_id);
  if (!query_id.empty()) {
    std::lock_guard lock(traces_mutex_);
    traces_[query_id] = json_io::dump(wire::gather_json(rec.trace));
  }
  return rec;
}

std::optional<std::string> Engine::trace(const std::string& query_id) const {
  std::lock_guard lock(traces_mutex_);
  auto it = traces_.find(query_id);
  if (it == traces_.end()) return std::nullopt;
  return it->second;
}

haptics::TactileScene Engine::scene(const std::optional<recommender::UserContext>& ctx) {
  const auto snap = snapshot();
  haptics::SceneGeometry geometry = config_.tactile;
  geometry.bounds = snap->bounds().box;
  recommender::Recommendation rec;
  if (ctx) {
    rec = recommender::recommend(*ctx, *snap, config_.recommender_config());
  } else if (!snap->members().empty()) {
    rec.origin = snap->members().begin()->first;
  }
  return haptics::map_social_to_tactile(*snap, rec, geometry,
                                        config_.field.trust_threshold);
}

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::validation:
    case ErrorCode::invalid_argument: return 400;
    case ErrorCode::not_found: return 404;
    case ErrorCode::inconsistent: return 409;
    case ErrorCode::io:
    case ErrorCode::internal: break;
  }
  return 500;
}

ApiResponse error_response(ErrorCode code, const std::string& message) {
  return {status_for(code),
          json_io::dump(json{{"error", {{"code", to_string(code)}, {"message", message}}}})};
}

ApiResponse ok(const json& body, int status = 200) { return {status, json_io::dump(body)}; }

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const std::size_t next = path.find('/', pos);
    const std::size_t end = next == std::string_view::npos ? path.size() : next;
    if (end > pos) parts.emplace_back(path.substr(pos, end - pos));
    pos = end + 1;
  }
  return parts;
}

MemberId path_member(const std::string& s) {
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(ErrorCode::not_found, "no member '" + s + "'");
  return MemberId{v};
}

json body_object(std::string_view body) {
  json j = json_io::parse(body.empty() ? std::string_view("{}") : body, "request body");
  if (!j.is_object()) fail(ErrorCode::parse, "request body must be an object");
  return j;
}

std::string optional_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  return json_io::get_string(j, key, where);
}

json member_detail(const Community& c, MemberId id) {
  json m = json_io::member_json(c.member(id));
  m["friendliness"] = c.friendliness(id);
  m["socializability"] = c.socializability(id);
  json neighbors = json::array();
  for (MemberId n : c.graph().neighbors(id))
    neighbors.push_back(json{{"member", n.value},
                             {"trust_state", c.graph().trust_state(id, n)},
                             {"trust", trust::trust_value(c.graph().trust_state(id, n))}});
  m["neighbors"] = neighbors;
  json rated = json::object();
  for (const auto& cat : c.categories()) {
    json list = json::array();
    for (const auto& [subject, value] : c.ratings_by(id, cat.id))
      list.push_back(json{{"subject", subject.value}, {"value", value}});
    if (!list.empty()) rated[cat.id] = list;
  }
  m["ratings_given"] = rated;
  return m;
}

std::vector<RatingInput> parse_ratings(const json& body) {
  json_io::expect_keys(body, {"ratings"}, "ratings request");
  const json& list = json_io::require(body, "ratings", "ratings request");
  if (!list.is_array()) fail(ErrorCode::parse, "ratings must be an array");
  std::vector<RatingInput> batch;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "ratings[" + std::to_string(i) + "]";
    const json& r = list[i];
    json_io::expect_keys(r, {"rater", "subject", "category", "value"}, where);
    RatingInput in;
    in.rater = json_io::to_member_id(json_io::require(r, "rater", where), where + ".rater");
    in.subject =
        json_io::to_member_id(json_io::require(r, "subject", where), where + ".subject");
    in.category = json_io::get_string(r, "category", where);
    const auto value = json_io::get_int(r, "value", where);
    if (value != 1 && value != -1)
      fail(ErrorCode::validation, where + ": value must be -1 or +1");
    in.value = static_cast<int>(value);
    batch.push_back(std::move(in));
  }
  return batch;
}

}  // namespace

ApiResponse Engine::handle(std::string_view method, std::string_view path,
                           std::string_view body) {
  try {
    return route(method, split_path(path), body);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return error_response(ErrorCode::internal, e.what());
  }
}

ApiResponse Engine::route(std::string_view method, const std::vector<std::string>& p,
                          std::string_view body) {
  const bool get = method == "GET";
  const bool post = method == "POST";
  const bool del = method == "DELETE";
  if (p.size() < 2 || p[0] != "v1") fail(ErrorCode::not_found, "unknown endpoint");
  const std::string& res = p[1];
  const std::size_t n = p.size();

  if (get && n == 2 && res == "config")
    return {200, engine_config_to_text(config_)};

  if (get && n == 2 && res == "community") return {200, save_community(*snapshot())};

  if (get && n == 2 && res == "members") {
    const auto snap = snapshot();
    json members = json::array();
    for (const auto& [id, m] : snap->members()) {
      json entry = json_io::member_json(m);
      entry["friendliness"] = snap->friendliness(id);
      entry["socializability"] = snap->socializability(id);
      members.push_back(std::move(entry));
    }
    return ok(json{{"members", members}, {"version", version()}, {"tick", snap->tick()}});
  }

  if (get && n == 3 && res == "members") {
    const MemberId id = path_member(p[2]);
    return ok(member_detail(*snapshot(), id));
  }

  if (get && n == 2 && res == "categories") {
    json cats = json::array();
    for (const auto& c : snapshot()->categories())
      cats.push_back(json{{"id", c.id}, {"label", c.label}});
    return ok(json{{"categories", cats}});
  }

  if (get && n == 3 && res == "traces") {
    auto t = trace(p[2]);
    if (!t) fail(ErrorCode::not_found, "no trace for query id '" + p[2] + "'");
    return {200, *t};
  }

  if (post && n == 2 && res == "ratings") {
    const auto batch = parse_ratings(body_object(body));
    const auto tick = submit_ratings(batch);
    return ok(json{{"tick", tick}, {"accepted", batch.size()}});
  }

  if (post && n == 2 && res == "certifications") {
    const json b = body_object(body);
    json_io::expect_keys(b, {"from", "to"}, "certification");
    const MemberId from = json_io::to_member_id(json_io::require(b, "from", "certification"),
                                                "certification.from");
    const MemberId to =
        json_io::to_member_id(json_io::require(b, "to", "certification"), "certification.to");
    const bool created = certify(from, to);
    return ok(json{{"edge_created", created},
                   {"edge_exists", snapshot()->graph().has_edge(from, to)}});
  }

  if (post && n == 2 && res == "friends") {
    const json b = body_object(body);
    json_io::expect_keys(b, {"declarer", "target"}, "friend declaration");
    const MemberId declarer = json_io::to_member_id(
        json_io::require(b, "declarer", "friend declaration"), "friend declaration.declarer");
    const MemberId target = json_io::to_member_id(
        json_io::require(b, "target", "friend declaration"), "friend declaration.target");
    declare_friend(declarer, target);
    return ok(json{{"target", target.value},
                   {"friendliness", snapshot()->friendliness(target)}});
  }

  if (post && n == 4 && res == "members" && p[3] == "status") {
    const MemberId id = path_member(p[2]);
    const json b = body_object(body);
    json_io::expect_keys(b, {"current_location", "reachable"}, "status update");
    StatusUpdate u;
    if (b.contains("current_location")) {
      const json& loc = b.at("current_location");
      u.current_location = loc.is_null() ? std::optional<Vec3>{}
                                         : std::optional(json_io::to_vec3(
                                               loc, "status update.current_location"));
    }
    if (b.contains("reachable")) u.reachable = json_io::get_bool(b, "reachable", "status update");
    update_status(id, u);
    return ok(member_detail(*snapshot(), id));
  }

  if (post && n == 2 && res == "recommendations") {
    const json b = body_object(body);
    json_io::expect_keys(b, {"query_id", "context"}, "recommendation request");
    const auto ctx =
        wire::parse_context(json_io::require(b, "context", "recommendation request"), "context");
    const auto rec = recommend(ctx, optional_string(b, "query_id", "recommendation request"));
    return ok(wire::recommendation_json(rec));
  }

  if (post && n == 2 && res == "field") {
    const json b = body_object(body);
    json_io::expect_keys(b, {"context", "grid", "hip"}, "field request");
    std::optional<recommender::UserContext> ctx;
    if (b.contains("context") && !b.at("context").is_null())
      ctx = wire::parse_context(b.at("context"), "context");
    const auto grid = wire::parse_grid(json_io::require(b, "grid", "field request"), "grid");
    const auto sc = scene(ctx);
    std::optional<haptics::PoleAssignment> poles;
    if (b.contains("hip") && !b.at("hip").is_null())
      poles = haptics::select_pole(sc, json_io::to_vec3(b.at("hip"), "field request.hip"));
    json out = wire::field_json(haptics::sample_field(sc, poles, config_.field, grid));
    out["scene"] = wire::scene_json(sc);
    return ok(out);
  }

  if (n >= 2 && res == "sessions") {
    if (post && n == 2) {
      const json b = body_object(body);
      json_io::expect_keys(b, {"session_id", "context", "hip"}, "session request");
      const std::string id = json_io::get_string(b, "session_id", "session request");
      if (id.empty()) fail(ErrorCode::validation, "session_id must not be empty");
      std::optional<recommender::UserContext> ctx;
      if (b.contains("context") && !b.at("context").is_null())
        ctx = wire::parse_context(b.at("context"), "context");
      const Vec3 hip = json_io::to_vec3(json_io::require(b, "hip", "session request"),
                                        "session request.hip");
      auto session = std::make_shared<Session>(haptics::ProbeSession(scene(ctx), config_.field, hip));
      const auto first = session->probe.observe(hip);
      {
        std::lock_guard lock(sessions_mutex_);
        if (!sessions_.emplace(id, session).second)
          fail(ErrorCode::inconsistent, "session '" + id + "' already exists");
      }
      return ok(json{{"session_id", id},
                     {"scene", wire::scene_json(session->probe.scene())},
                     {"record", wire::record_json(first)}},
                201);
    }
    if (n < 3) fail(ErrorCode::not_found, "unknown endpoint");
    std::shared_ptr<Session> session;
    {
      std::lock_guard lock(sessions_mutex_);
      auto it = sessions_.find(p[2]);
      if (it == sessions_.end()) fail(ErrorCode::not_found, "no session '" + p[2] + "'");
      session = it->second;
      if (del && n == 3) {
        sessions_.erase(it);
        return ok(json{{"session_id", p[2]}, {"deleted", true}});
      }
    }
    if (post && n == 4 && p[3] == "step") {
      const json b = body_object(body);
      json_io::expect_keys(b, {"hip", "hip_velocity", "dt", "steps"}, "step request");
      const Vec3 hip =
          json_io::to_vec3(json_io::require(b, "hip", "step request"), "step request.hip");
      Vec3 velocity;
      if (b.contains("hip_velocity"))
        velocity = json_io::to_vec3(b.at("hip_velocity"), "step request.hip_velocity");
      const double dt = json_io::get_number(b, "dt", "step request");
      std::int64_t steps = 1;
      if (b.contains("steps")) steps = json_io::get_int(b, "steps", "step request");
      if (steps < 1 || steps > 100000)
        fail(ErrorCode::invalid_argument, "steps must lie in 1..100000");
      json records = json::array();
      std::lock_guard lock(session->mutex);
      session->probe.observe(hip, velocity);
      for (std::int64_t s = 0; s < steps; ++s) {
        session->probe.advance(dt);
        records.push_back(wire::record_json(session->probe.observe(hip, velocity)));
      }
      return ok(json{{"session_id", p[2]}, {"records", records}});
    }
  }

  fail(ErrorCode::not_found, "unknown endpoint " + std::string(method));
}

int Engine::bind(const std::string& host, int port) {
  if (server_) fail(ErrorCode::invalid_argument, "listener already bound");
  server_ = std::make_unique<Server>();
  auto respond = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server_->http.Get(".*", respond);
  server_->http.Post(".*", respond);
  server_->http.Delete(".*", respond);
  const int bound = port == 0 ? server_->http.bind_to_any_port(host)
                              : (server_->http.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    server_.reset();
    fail(ErrorCode::io, "cannot listen on " + host + ":" + std::to_string(port));
  }
  return bound;
}

void Engine::listen() {
  if (!server_) fail(ErrorCode::invalid_argument, "bind() has not been called");
  server_->http.listen_after_bind();
}

void Engine::stop() {
  if (server_) server_->http.stop();
}

}  // namespace socnav

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

#include "socnav/socnav.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "socnav/config.hpp"
#include "socnav/document.hpp"
#include "socnav/engine.hpp"
#include "socnav/haptics.hpp"
#include "socnav/scenario.hpp"
#include "wire.hpp"

struct socnav_engine {
  std::unique_ptr<socnav::Engine> engine;
};

namespace {

thread_local std::string last_error;

socnav_status record(socnav_status status, const char* message) {
  last_error = message;
  return status;
}

template <typename F>
socnav_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return SOCNAV_OK;
  } catch (const socnav::Error& e) {
    return record(static_cast<socnav_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(SOCNAV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(SOCNAV_ERR_INTERNAL, e.what());
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) socnav::fail(socnav::ErrorCode::invalid_argument, what);
}

socnav::EngineConfig config_from(const char* config_json) {
  return config_json ? socnav::parse_engine_config(config_json) : socnav::EngineConfig{};
}

}  // namespace

extern "C" {

const char* socnav_status_string(socnav_status status) {
  switch (status) {
    case SOCNAV_OK: return "ok";
    case SOCNAV_ERR_PARSE: return "parse error";
    case SOCNAV_ERR_VALIDATION: return "validation error";
    case SOCNAV_ERR_NOT_FOUND: return "not found";
    case SOCNAV_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SOCNAV_ERR_INCONSISTENT: return "inconsistent state";
    case SOCNAV_ERR_IO: return "i/o error";
    case SOCNAV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* socnav_last_error(void) { return last_error.c_str(); }

void socnav_free(char* text) { std::free(text); }

socnav_status socnav_generate(const char* spec_json, char** out_document) {
  return guarded([&] {
    require(spec_json && out_document, "spec_json and out_document are required");
    const auto spec = socnav::scenario::parse_scenario_spec(spec_json);
    *out_document = copy_out(socnav::save_community(socnav::scenario::generate_community(spec)));
  });
}

socnav_status socnav_canonicalize(const char* document, char** out_document) {
  return guarded([&] {
    require(document && out_document, "document and out_document are required");
    *out_document = copy_out(socnav::save_community(socnav::load_community(document)));
  });
}

socnav_status socnav_engine_create(const char* document, const char* config_json,
                                   socnav_engine** out_engine) {
  return guarded([&] {
    require(document && out_engine, "document and out_engine are required");
    auto handle = std::make_unique<socnav_engine>();
    handle->engine = std::make_unique<socnav::Engine>(socnav::load_community(document),
                                                      config_from(config_json));
    *out_engine = handle.release();
  });
}

socnav_status socnav_engine_create_from_file(const char* path, const char* config_json,
                                             socnav_engine** out_engine) {
  return guarded([&] {
    require(path && out_engine, "path and out_engine are required");
    auto handle = std::make_unique<socnav_engine>();
    handle->engine = std::make_unique<socnav::Engine>(socnav::load_community_file(path),
                                                      config_from(config_json));
    *out_engine = handle.release();
  });
}

void socnav_engine_destroy(socnav_engine* engine) { delete engine; }

socnav_status socnav_engine_call(socnav_engine* engine, const char* method, const char* path,
                                 const char* body, int* out_http_status, char** out_body) {
  return guarded([&] {
    require(engine && method && path && out_http_status && out_body,
            "engine, method, path and outputs are required");
    const auto r = engine->engine->handle(method, path, body ? body : "");
    *out_body = copy_out(r.body);
    *out_http_status = r.status;
  });
}

socnav_status socnav_engine_simulate(socnav_engine* engine, const char* context_json,
                                     const char* trajectory_csv, char** out_csv) {
  return guarded([&] {
    require(engine && trajectory_csv && out_csv, "engine, trajectory and output are required");
    std::optional<socnav::recommender::UserContext> ctx;
    if (context_json)
      ctx = socnav::wire::parse_context(socnav::json_io::parse(context_json, "context"),
                                        "context");
    const auto scene = engine->engine->scene(ctx);
    const auto trajectory = socnav::haptics::parse_trajectory_csv(trajectory_csv);
    const auto records =
        socnav::haptics::simulate(scene, trajectory, engine->engine->config().field);
    *out_csv = copy_out(socnav::haptics::format_simulation_csv(records));
  });
}

socnav_status socnav_engine_snapshot(socnav_engine* engine, char** out_document) {
  return guarded([&] {
    require(engine && out_document, "engine and out_document are required");
    *out_document = copy_out(socnav::save_community(*engine->engine->snapshot()));
  });
}

socnav_status socnav_engine_bind(socnav_engine* engine, const char* host, int port,
                                 int* out_port) {
  return guarded([&] {
    require(engine && host, "engine and host are required");
    const int bound = engine->engine->bind(host, port);
    if (out_port) *out_port = bound;
  });
}

socnav_status socnav_engine_listen(socnav_engine* engine) {
  return guarded([&] {
    require(engine != nullptr, "engine is required");
    engine->engine->listen();
  });
}

void socnav_engine_stop(socnav_engine* engine) {
  if (engine) engine->engine->stop();
}

}  // extern "C"

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "socnav/socnav.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  socnav_free(s);
  return out;
}

}  // namespace

TEST_CASE("generate and canonicalize") {
  char* doc = nullptr;
  REQUIRE(socnav_generate("{\"seed\": 3, \"member_count\": 12}", &doc) == SOCNAV_OK);
  const std::string text = take(doc);
  char* again = nullptr;
  REQUIRE(socnav_canonicalize(text.c_str(), &again) == SOCNAV_OK);
  CHECK(take(again) == text);
  CHECK(std::strlen(socnav_last_error()) == 0);
}

TEST_CASE("errors carry codes and messages") {
  char* out = nullptr;
  CHECK(socnav_generate("{\"member_count\": -1}", &out) == SOCNAV_ERR_INVALID_ARGUMENT);
  CHECK(socnav_canonicalize("{broken", &out) == SOCNAV_ERR_PARSE);
  CHECK(std::strlen(socnav_last_error()) > 0);
  CHECK(socnav_generate(nullptr, &out) == SOCNAV_ERR_INVALID_ARGUMENT);
  socnav_engine* e = nullptr;
  CHECK(socnav_engine_create_from_file("/nonexistent/community.json", nullptr, &e) ==
        SOCNAV_ERR_IO);
  CHECK(e == nullptr);
  CHECK(std::string(socnav_status_string(SOCNAV_ERR_NOT_FOUND)) == "not found");
  socnav_free(nullptr);
  socnav_engine_destroy(nullptr);
}

TEST_CASE("engine calls, snapshot and simulation") {
  char* doc = nullptr;
  REQUIRE(socnav_generate("{\"seed\": 1, \"all_feasible\": true}", &doc) == SOCNAV_OK);
  const std::string text = take(doc);
  socnav_engine* e = nullptr;
  REQUIRE(socnav_engine_create(text.c_str(), nullptr, &e) == SOCNAV_OK);

  int status = 0;
  char* body = nullptr;
  REQUIRE(socnav_engine_call(e, "GET", "/v1/members/1", nullptr, &status, &body) == SOCNAV_OK);
  CHECK(status == 200);
  CHECK(take(body).find("\"socializability\"") != std::string::npos);
  REQUIRE(socnav_engine_call(e, "GET", "/v1/members/0", nullptr, &status, &body) == SOCNAV_OK);
  CHECK(status == 404);
  take(body);

  char* snap = nullptr;
  REQUIRE(socnav_engine_snapshot(e, &snap) == SOCNAV_OK);
  CHECK(take(snap) == text);

  char* csv = nullptr;
  REQUIRE(socnav_engine_simulate(e, nullptr, "0,5,5,1\n0.01,5,5,1\n", &csv) == SOCNAV_OK);
  const std::string out = take(csv);
  CHECK(out.rfind("t,rho_x", 0) == 0);
  CHECK(socnav_engine_simulate(e, nullptr, "0,5,5\n", &csv) == SOCNAV_ERR_PARSE);
  const char* ctx = R"({"user":{"member":2},"category":"c01"})";
  CHECK(socnav_engine_simulate(e, ctx, "0,5,5,1\n0.01,5,5,1\n", &csv) == SOCNAV_OK);
  take(csv);
  socnav_engine_destroy(e);
}

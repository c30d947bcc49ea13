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

#include <doctest.h>

#include "socnav/community.hpp"
#include "socnav/error.hpp"
#include "test_support.hpp"

using namespace socnav;
using socnav::testing::basic_member;
using socnav::testing::mid;

namespace {

Community members(std::uint32_t n) {
  Community c;
  for (std::uint32_t i = 1; i <= n; ++i) c.add_member(basic_member(i));
  c.add_category(Category{"c01", "Math"});
  c.add_category(Category{"c02", "Events"});
  return c;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

}  // namespace

TEST_CASE("mutual certification creates one neutral edge") {
  Community c = members(3);
  CHECK_FALSE(c.certify(mid(1), mid(2)));
  CHECK_FALSE(c.graph().has_edge(mid(1), mid(2)));
  CHECK_FALSE(c.certify(mid(1), mid(2)));
  CHECK(c.pending_intents().size() == 1);
  CHECK(c.certify(mid(2), mid(1)));
  CHECK(c.graph().has_edge(mid(1), mid(2)));
  CHECK(c.graph().trust_state(mid(1), mid(2)) == 0.0);
  CHECK(c.graph().edges().size() == 1);
  CHECK(c.pending_intents().empty());
  CHECK_FALSE(c.certify(mid(1), mid(2)));
  CHECK(c.graph().edges().size() == 1);
}

TEST_CASE("certification errors") {
  Community c = members(2);
  CHECK(code_of([&] { c.certify(mid(1), mid(1)); }) == ErrorCode::validation);
  CHECK(code_of([&] { c.certify(mid(1), mid(9)); }) == ErrorCode::not_found);
}

TEST_CASE("graph rejects self-loops, dangling and duplicate edges") {
  Community c = members(3);
  CHECK(code_of([&] { c.graph_mut().add_edge(mid(2), mid(2)); }) == ErrorCode::validation);
  CHECK(code_of([&] { c.graph_mut().add_edge(mid(2), mid(7)); }) == ErrorCode::validation);
  c.graph_mut().add_edge(mid(1), mid(2));
  CHECK(code_of([&] { c.graph_mut().add_edge(mid(2), mid(1)); }) == ErrorCode::validation);
  CHECK(code_of([&] { c.graph_mut().add_edge(mid(1), mid(3), 1.5); }) == ErrorCode::validation);
}

TEST_CASE("friendliness counts distinct declarers") {
  Community c = members(7);
  CHECK(c.friendliness(mid(1)) == 0);
  for (std::uint32_t i = 2; i <= 6; ++i) c.declare_friend(mid(i), mid(1));
  CHECK(c.friendliness(mid(1)) == 5);
  c.declare_friend(mid(2), mid(1));
  CHECK(c.friendliness(mid(1)) == 5);
  c.declare_friend(mid(7), mid(1));
  CHECK(c.friendliness(mid(1)) == 6);
  CHECK(code_of([&] { c.declare_friend(mid(1), mid(1)); }) == ErrorCode::validation);
}

TEST_CASE("socializability is the degree") {
  Community c = members(4);
  CHECK(c.socializability(mid(4)) == 0);
  for (auto [a, b] : {std::pair{1u, 2u}, {2u, 3u}, {1u, 3u}}) {
    c.certify(mid(a), mid(b));
    c.certify(mid(b), mid(a));
  }
  CHECK(c.socializability(mid(1)) == 2);
  c.certify(mid(1), mid(4));
  CHECK(c.socializability(mid(1)) == 2);
  c.certify(mid(4), mid(1));
  CHECK(c.socializability(mid(1)) == 3);
  CHECK(c.socializability(mid(4)) == 1);
}

TEST_CASE("rating batches tick once and update co-rating edges") {
  Community c = members(4);
  c.graph_mut().add_edge(mid(1), mid(2));
  c.graph_mut().add_edge(mid(2), mid(3));
  const trust::TrustParams p;

  c.submit_ratings({{mid(1), mid(4), "c01", 1}}, p);
  CHECK(c.tick() == 1);
  CHECK(c.graph().trust_state(mid(1), mid(2)) == 0.0);

  // 2 agrees with 1.
  c.submit_ratings({{mid(2), mid(4), "c01", 1}}, p);
  CHECK(c.tick() == 2);
  CHECK(c.graph().trust_state(mid(1), mid(2)) == doctest::Approx(0.3));
  CHECK(c.graph().trust_state(mid(2), mid(3)) == 0.0);

  c.submit_ratings({{mid(3), mid(4), "c01", -1}}, p);
  CHECK(c.graph().trust_state(mid(2), mid(3)) == doctest::Approx(-0.7));
  CHECK(c.graph().trust_state(mid(1), mid(2)) == doctest::Approx(0.3));

  // Same subject in another category is a separate co-rating.
  c.submit_ratings({{mid(1), mid(4), "c02", 1}, {mid(2), mid(4), "c02", 1}}, p);
  CHECK(c.graph().trust_state(mid(1), mid(2)) == doctest::Approx(0.7 * 0.3 + 0.3));
  CHECK(c.tick() == 4);

  c.submit_ratings({}, p);
  CHECK(c.tick() == 5);
  for (const auto& [key, r] : c.ratings()) CHECK(r.tick <= c.tick());
}

TEST_CASE("rating batch is all or nothing") {
  Community c = members(5);
  const trust::TrustParams p;
  const Community before = c;
  CHECK(code_of([&] {
          c.submit_ratings({{mid(1), mid(2), "c01", 1}, {mid(1), mid(3), "c01", 0}}, p);
        }) == ErrorCode::validation);
  CHECK(c == before);
  CHECK(code_of([&] {
          c.submit_ratings({{mid(1), mid(2), "c01", 1},
                            {mid(1), mid(3), "c01", 1},
                            {mid(1), mid(4), "c01", 1},
                            {mid(1), mid(5), "c01", 1}},
                           p);
        }) == ErrorCode::validation);
  CHECK(c == before);
  CHECK(code_of([&] { c.submit_ratings({{mid(1), mid(1), "c01", 1}}, p); }) ==
        ErrorCode::validation);
  CHECK(code_of([&] { c.submit_ratings({{mid(1), mid(2), "zz", 1}}, p); }) ==
        ErrorCode::validation);
  CHECK(c == before);
}

TEST_CASE("a re-rate replaces the old value") {
  Community c = members(3);
  const trust::TrustParams p;
  c.submit_ratings({{mid(1), mid(2), "c01", 1}}, p);
  c.submit_ratings({{mid(1), mid(2), "c01", -1}}, p);
  const auto held = c.ratings_by(mid(1), "c01");
  REQUIRE(held.size() == 1);
  CHECK(held[0].second == -1);
  CHECK(c.ratings().begin()->second.tick == 2);
}

TEST_CASE("trust states stay in range under random batches") {
  testing::TestRng rng(8);
  Community c = testing::random_community(4, 10, 0.4, 0.0);
  const trust::TrustParams p;
  for (int round = 0; round < 200; ++round) {
    const auto rater = mid(static_cast<std::uint32_t>(1 + rng.below(10)));
    auto subject = mid(static_cast<std::uint32_t>(1 + rng.below(10)));
    if (subject == rater) continue;
    const auto held = c.ratings_by(rater, "c01");
    bool already = false;
    for (const auto& [s, v] : held) already |= s == subject;
    if (held.size() >= 3 && !already) continue;
    c.submit_ratings({{rater, subject, "c01", rng.chance(0.5) ? 1 : -1}}, p);
    for (const auto& [key, state] : c.graph().edges()) {
      REQUIRE(state >= -1.0);
      REQUIRE(state <= 1.0);
    }
  }
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("location updates must lie in the scene") {
  Community c = members(2);
  c.set_current_location(mid(1), Vec3{3, 3, 1});
  CHECK(c.member(mid(1)).current_location == Vec3{3, 3, 1});
  CHECK(code_of([&] { c.set_current_location(mid(1), Vec3{30, 3, 1}); }) ==
        ErrorCode::validation);
  c.set_current_location(mid(1), std::nullopt);
  CHECK(c.member(mid(1)).position() == c.member(mid(1)).permanent_location);
  c.set_reachable(mid(2), false);
  CHECK_FALSE(c.member(mid(2)).reachable);
  CHECK(code_of([&] { c.set_reachable(mid(5), true); }) == ErrorCode::not_found);
}

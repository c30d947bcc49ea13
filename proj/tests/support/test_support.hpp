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

// Fixtures and reference implementations shared by the unit and acceptance
// tests. The reference code is written independently of the library: it never
// calls gather(), recommend() or the trust helpers it is checked against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socnav/community.hpp"
#include "socnav/routing.hpp"

namespace socnav::testing {

/// splitmix64; deliberately unrelated to the generator's engine.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  bool chance(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

inline MemberId mid(std::uint32_t v) { return MemberId{v}; }

inline MemberProfile basic_member(std::uint32_t id) {
  MemberProfile m;
  m.id = MemberId{id};
  m.name = "m" + std::to_string(id);
  m.permanent_location = Vec3{1.0 + id % 10, 1.0 + id / 10, 1.1};
  m.current_location = m.permanent_location;
  m.reachable = true;
  m.channels = {Channel::face_to_face, Channel::instant_message, Channel::email};
  m.languages = {"ja"};
  return m;
}

/// n members, one category "c01", Erdos-Renyi edges with random trust states;
/// each member holds ratings with probability `holder_p`.
inline Community random_community(std::uint64_t seed, std::size_t n, double edge_p,
                                  double holder_p) {
  TestRng rng(seed);
  Community c;
  for (std::uint32_t i = 1; i <= n; ++i) c.add_member(basic_member(i));
  c.add_category(Category{"c01", "Math"});
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = i + 1; j <= n; ++j)
      if (rng.chance(edge_p)) c.graph_mut().add_edge(mid(i), mid(j), rng.uniform(-1.0, 1.0));
  for (std::uint32_t i = 1; i <= n && n > 1; ++i) {
    if (!rng.chance(holder_p)) continue;
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, n - 1));
    std::set<std::uint32_t> chosen;
    while (chosen.size() < k) {
      const auto s = static_cast<std::uint32_t>(1 + rng.below(n));
      if (s != i) chosen.insert(s);
    }
    for (auto s : chosen)
      c.add_rating(Rating{mid(i), mid(s), "c01", rng.chance(0.6) ? 1 : -1, 0});
  }
  return c;
}

/// What a flood should deliver, computed by enumerating simple paths.
struct FloodOracle {
  /// Responder -> fewest hops over paths whose interior avoids holders.
  std::map<MemberId, std::size_t> responder_hops;
  std::set<std::pair<MemberId, MemberId>> responder_subject;
  std::set<MemberId> holders;
};

inline FloodOracle flood_oracle(const Community& c, MemberId origin, const CategoryId& cat) {
  FloodOracle o;
  for (const auto& [key, r] : c.ratings())
    if (r.category == cat) o.holders.insert(r.rater);
  std::vector<MemberId> path{origin};
  std::set<MemberId> on_path{origin};
  std::function<void(MemberId)> walk = [&](MemberId at) {
    for (MemberId n : c.graph().neighbors(at)) {
      if (on_path.contains(n)) continue;
      const std::size_t hops = path.size();
      if (o.holders.contains(n)) {
        auto [it, fresh] = o.responder_hops.emplace(n, hops);
        if (!fresh) it->second = std::min(it->second, hops);
        continue;  // a holder answers and does not pass the query on
      }
      path.push_back(n);
      on_path.insert(n);
      walk(n);
      on_path.erase(n);
      path.pop_back();
    }
  };
  walk(origin);
  for (const auto& [key, r] : c.ratings())
    if (r.category == cat && o.responder_hops.contains(r.rater))
      o.responder_subject.emplace(r.rater, r.subject);
  return o;
}

/// Product of (1 + state) / 2 along a path, computed without library helpers.
inline double reference_path_trust(const Community& c, const std::vector<MemberId>& path) {
  double t = 1.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    t *= (1.0 + c.graph().trust_state(path[i], path[i + 1])) / 2.0;
  return t;
}

}  // namespace socnav::testing

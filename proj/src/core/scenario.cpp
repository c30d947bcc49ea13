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

#include "socnav/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "socnav/error.hpp"

namespace socnav::scenario {

namespace {

// std::mt19937_64 output is fixed by the standard; the distributions are not,
// so draws are derived from raw engine output for cross-platform stability.
__extension__ using Uint128 = unsigned __int128;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<Uint128>(engine_()) * n) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::array<const char*, 19> kLabels = {
    "Math",           "Physics",        "English",         "Networking",
    "Java programming", "C programming", "Databases",      "Algorithms",
    "Operating systems", "Statistics",  "Signal processing", "Computer graphics",
    "Machine learning", "Thesis writing", "Job hunting",   "Part-time jobs",
    "Events",         "Housing",        "Club activities",
};

constexpr std::array<const char*, 6> kGivenNames = {"Aki", "Ren", "Yui",
                                                    "Sora", "Kai", "Mio"};

void add_edge(Community& c, MemberId a, MemberId b) {
  if (a == b || c.graph().has_edge(a, b)) return;
  c.certify(a, b);
  c.certify(b, a);
}

void build_graph(Community& c, const ScenarioSpec& spec, Rng& rng) {
  const std::size_t n = spec.member_count;
  auto id = [](std::size_t i) { return MemberId{static_cast<std::uint32_t>(i + 1)}; };
  switch (spec.model) {
    case GraphModel::small_world: {
      // Ring lattice with each lattice edge rewired with the given probability.
      const std::size_t half = std::min(spec.ring_neighbors / 2, n > 0 ? (n - 1) / 2 : 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 1; k <= half; ++k) {
          std::size_t j = (i + k) % n;
          if (rng.bernoulli(spec.rewire_probability)) {
            const std::size_t target = rng.below(n);
            if (target != i && !c.graph().has_edge(id(i), id(target))) j = target;
          }
          add_edge(c, id(i), id(j));
        }
      }
      break;
    }
    case GraphModel::random:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (rng.bernoulli(spec.edge_probability)) add_edge(c, id(i), id(j));
      break;
    case GraphModel::clustered: {
      std::vector<std::size_t> cluster(n);
      for (std::size_t i = 0; i < n; ++i) cluster[i] = i % spec.clusters;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (rng.bernoulli(cluster[i] == cluster[j] ? spec.p_in : spec.p_out))
            add_edge(c, id(i), id(j));
      break;
    }
  }
}

}  // namespace

std::string_view graph_model_name(GraphModel m) {
  switch (m) {
    case GraphModel::small_world: return "small_world";
    case GraphModel::random: return "random";
    case GraphModel::clustered: break;
  }
  return "clustered";
}

CategoryId category_id(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "c%02zu", index + 1);
  return buf;
}

std::string default_category_label(std::size_t index) {
  if (index < kLabels.size()) return kLabels[index];
  return "Topic " + std::to_string(index + 1);
}

void ScenarioSpec::validate() const {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
      fail(ErrorCode::invalid_argument, std::string(name) + " must lie in [0, 1]");
  };
  probability(rewire_probability, "rewire_probability");
  probability(edge_probability, "edge_probability");
  probability(p_in, "p_in");
  probability(p_out, "p_out");
  probability(rater_fraction, "rater_fraction");
  probability(positive_rate, "positive_rate");
  probability(friend_probability, "friend_probability");
  probability(presence_probability, "presence_probability");
  probability(reachable_probability, "reachable_probability");
  if (ring_neighbors % 2 != 0)
    fail(ErrorCode::invalid_argument, "ring_neighbors must be even");
  if (clusters == 0) fail(ErrorCode::invalid_argument, "clusters must be positive");
  if (rating_rounds == 0)
    fail(ErrorCode::invalid_argument, "rating_rounds must be positive");
  trust.validate();
  for (const auto& [cat, expert] : planted_experts) {
    bool known = false;
    for (std::size_t i = 0; i < category_count; ++i) known |= category_id(i) == cat;
    if (!known)
      fail(ErrorCode::invalid_argument, "planted expert names unknown category '" + cat + "'");
    if (expert.value < 1 || expert.value > member_count)
      fail(ErrorCode::invalid_argument,
           "planted expert " + to_string(expert) + " is out of range 1.." +
               std::to_string(member_count));
  }
  if ((plant_every_category || !planted_experts.empty()) && member_count < 2)
    fail(ErrorCode::invalid_argument, "planting an expert needs at least two members");
}

Community generate_community(const ScenarioSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Community c;
  const std::size_t n = spec.member_count;

  // Members sit at desks on a jittered grid filling the room.
  const Box room = c.bounds().box;
  const double width = room.max.x - room.min.x - 2.0;
  const double depth = room.max.y - room.min.y - 2.0;
  const auto cols = static_cast<std::size_t>(
      std::max(1.0, std::ceil(std::sqrt(static_cast<double>(n) * width / depth))));
  const std::size_t rows = n == 0 ? 1 : (n + cols - 1) / cols;
  for (std::size_t i = 0; i < n; ++i) {
    MemberProfile m;
    m.id = MemberId{static_cast<std::uint32_t>(i + 1)};
    m.name = std::string(kGivenNames[i % kGivenNames.size()]) + " " + std::to_string(i + 1);
    m.gender = rng.bernoulli(0.5) ? Gender::female : Gender::male;
    m.grade = 1 + static_cast<int>(rng.below(6));
    const double fx = cols == 1 ? 0.5 : static_cast<double>(i % cols) / static_cast<double>(cols - 1);
    const double fy = rows == 1 ? 0.5 : static_cast<double>(i / cols) / static_cast<double>(rows - 1);
    const Vec3 desk{room.min.x + 1.0 + fx * width + (rng.uniform() - 0.5) * 0.4,
                    room.min.y + 1.0 + fy * depth + (rng.uniform() - 0.5) * 0.4, 1.1};
    m.permanent_location = desk;
    if (spec.all_feasible) {
      m.current_location = desk;
      m.reachable = true;
      m.channels = {Channel::face_to_face, Channel::instant_message, Channel::email};
      m.languages = {"en", "ja"};
    } else {
      if (rng.bernoulli(spec.presence_probability)) m.current_location = desk;
      m.reachable = rng.bernoulli(spec.reachable_probability);
      if (m.current_location) m.channels.insert(Channel::face_to_face);
      if (rng.bernoulli(0.7)) m.channels.insert(Channel::instant_message);
      if (rng.bernoulli(0.9)) m.channels.insert(Channel::email);
      if (rng.bernoulli(0.9)) m.languages.insert("ja");
      if (rng.bernoulli(0.5)) m.languages.insert("en");
      if (rng.bernoulli(0.1)) m.languages.insert("zh");
      if (m.languages.empty()) m.languages.insert("ja");
    }
    c.add_member(std::move(m));
  }
  for (std::size_t k = 0; k < spec.category_count; ++k)
    c.add_category(Category{category_id(k), default_category_label(k)});

  build_graph(c, spec, rng);
  for (const auto& [key, _] : c.graph().edges()) {
    if (rng.bernoulli(spec.friend_probability)) c.declare_friend(key.a, key.b);
    if (rng.bernoulli(spec.friend_probability)) c.declare_friend(key.b, key.a);
  }

  std::map<CategoryId, MemberId> experts = spec.planted_experts;
  if (spec.plant_every_category)
    for (std::size_t k = 0; k < spec.category_count; ++k)
      experts.try_emplace(category_id(k),
                          MemberId{static_cast<std::uint32_t>(1 + rng.below(n))});

  // Ratings per category; each rater names at most three subjects.
  std::vector<std::vector<RatingInput>> rounds(spec.rating_rounds);
  for (std::size_t k = 0; k < spec.category_count && n >= 2; ++k) {
    const CategoryId cat = category_id(k);
    const auto planted = experts.find(cat);
    const std::optional<MemberId> expert =
        planted == experts.end() ? std::nullopt : std::optional(planted->second);

    std::vector<MemberId> raters;
    for (const auto& [id, _] : c.members())
      if (id != expert && rng.bernoulli(spec.rater_fraction)) raters.push_back(id);
    if (expert && raters.empty()) {
      MemberId pick{static_cast<std::uint32_t>(1 + rng.below(n - 1))};
      if (pick >= *expert) pick.value += 1;
      raters.push_back(pick);
    }

    std::vector<RatingInput> ratings;
    for (MemberId rater : raters) {
      std::set<MemberId> chosen;
      if (expert) {
        ratings.push_back(RatingInput{rater, *expert, cat, 1});
        chosen.insert(*expert);
      }
      // An expert's raters add 0-2 others, skewed low; otherwise 1-3.
      const std::size_t extra =
          expert ? (rng.bernoulli(0.5) ? 0 : (rng.bernoulli(0.7) ? 1 : 2))
                 : 1 + rng.below(3);
      for (std::size_t e = 0; e < extra && chosen.size() + 1 < n; ++e) {
        MemberId subject;
        do {
          subject = MemberId{static_cast<std::uint32_t>(1 + rng.below(n))};
        } while (subject == rater || chosen.contains(subject));
        chosen.insert(subject);
        ratings.push_back(
            RatingInput{rater, subject, cat, rng.bernoulli(spec.positive_rate) ? 1 : -1});
      }
    }

    if (expert) {
      // Keep the expert strictly ahead: demote positives of anyone who ties.
      std::map<MemberId, std::size_t> positives;
      for (const auto& r : ratings)
        if (r.value > 0) ++positives[r.subject];
      const std::size_t lead = positives[*expert];
      for (auto& [subject, count] : positives) {
        if (subject == *expert) continue;
        for (auto it = ratings.rbegin(); it != ratings.rend() && count >= lead; ++it) {
          if (it->subject == subject && it->value > 0) {
            it->value = -1;
            --count;
          }
        }
      }
    }
    for (auto& r : ratings) rounds[rng.below(rounds.size())].push_back(r);
  }
  for (const auto& batch : rounds)
    if (!batch.empty()) c.submit_ratings(batch, spec.trust);
  return c;
}

}  // namespace socnav::scenario

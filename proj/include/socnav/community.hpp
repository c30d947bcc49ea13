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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "socnav/ids.hpp"
#include "socnav/trust.hpp"
#include "socnav/vec3.hpp"

namespace socnav {

enum class Gender { female, male, unspecified };
enum class Channel { face_to_face, instant_message, email };

struct MemberProfile {
  MemberId id;
  std::string name;
  Gender gender = Gender::unspecified;
  std::optional<int> grade;
  std::optional<Vec3> permanent_location;
  std::optional<Vec3> current_location;
  bool reachable = true;
  std::set<Channel> channels;
  std::set<std::string> languages;
  std::set<MemberId> friend_declared_by;

  /// Where the member is displayed: current location, else the usual one.
  std::optional<Vec3> position() const {
    return current_location ? current_location : permanent_location;
  }

  friend bool operator==(const MemberProfile&, const MemberProfile&) = default;
};

struct Category {
  CategoryId id;
  std::string label;
  friend bool operator==(const Category&, const Category&) = default;
};

struct Rating {
  MemberId rater;
  MemberId subject;
  CategoryId category;
  int value = 1;  ///< -1 or +1
  std::uint64_t tick = 0;
  friend bool operator==(const Rating&, const Rating&) = default;
};

/// Unordered edge key, stored with first < second.
struct EdgeKey {
  MemberId a;
  MemberId b;

  static EdgeKey of(MemberId i, MemberId j) {
    return i < j ? EdgeKey{i, j} : EdgeKey{j, i};
  }
  auto operator<=>(const EdgeKey&) const = default;
};

/// Undirected acquaintance graph built by mutual certification. Each edge
/// carries the raw trust state in [-1, 1].
class SocialGraph {
 public:
  void add_node(MemberId id);
  bool has_node(MemberId id) const { return adjacency_.contains(id); }
  bool has_edge(MemberId i, MemberId j) const;

  /// Inserts edge (i, j) with the given state; throws on self-loops, dangling
  /// endpoints, duplicates, or a state outside [-1, 1].
  void add_edge(MemberId i, MemberId j, double state = 0.0);

  double trust_state(MemberId i, MemberId j) const;
  void set_trust_state(MemberId i, MemberId j, double state);

  /// Neighbors in ascending id order.
  const std::set<MemberId>& neighbors(MemberId id) const;
  std::size_t degree(MemberId id) const { return neighbors(id).size(); }

  const std::map<EdgeKey, double>& edges() const { return edges_; }
  std::size_t node_count() const { return adjacency_.size(); }

  friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

 private:
  std::map<MemberId, std::set<MemberId>> adjacency_;
  std::map<EdgeKey, double> edges_;
};

/// Scene geometry shared by all members; current locations must lie inside.
struct SceneBounds {
  Box box{{0.0, 0.0, 0.0}, {20.0, 12.0, 3.0}};
  friend bool operator==(const SceneBounds&, const SceneBounds&) = default;
};

/// One incoming rating in a batch submission.
struct RatingInput {
  MemberId rater;
  MemberId subject;
  CategoryId category;
  int value = 1;
};

inline constexpr std::size_t kMaxSubjectsPerCategory = 3;

/// A whole community: profiles, categories, ratings, pending certification
/// intents and the social graph with its shared tick. Value type; the engine
/// publishes immutable copies as snapshots.
class Community {
 public:
  Community() = default;

  // --- construction (used by the loader and the scenario generator) ---
  void add_member(MemberProfile profile);
  void add_category(Category category);
  /// Adds a persisted rating without touching trust state.
  void add_rating(const Rating& rating);
  void set_tick(std::uint64_t tick) { tick_ = tick; }
  void set_bounds(SceneBounds bounds) { bounds_ = bounds; }
  SocialGraph& graph_mut() { return graph_; }

  // --- queries ---
  const std::map<MemberId, MemberProfile>& members() const { return members_; }
  const MemberProfile& member(MemberId id) const;
  bool has_member(MemberId id) const { return members_.contains(id); }
  const std::vector<Category>& categories() const { return categories_; }
  bool has_category(const CategoryId& id) const;
  const SocialGraph& graph() const { return graph_; }
  std::uint64_t tick() const { return tick_; }
  const SceneBounds& bounds() const { return bounds_; }

  /// Ratings keyed by (rater, category, subject).
  using RatingKey = std::tuple<MemberId, CategoryId, MemberId>;
  const std::map<RatingKey, Rating>& ratings() const { return ratings_; }

  /// (subject, value) pairs a rater holds in one category, ascending subject.
  std::vector<std::pair<MemberId, int>> ratings_by(MemberId rater,
                                                   const CategoryId& c) const;
  bool holds_rating(MemberId rater, const CategoryId& c) const;

  /// Pending one-sided certification intents (from, to).
  const std::set<std::pair<MemberId, MemberId>>& pending_intents() const {
    return intents_;
  }

  std::size_t friendliness(MemberId id) const;
  std::size_t socializability(MemberId id) const;

  // --- mutations ---
  /// Registers intent from -> to. The edge is created with state 0 once both
  /// directions have been registered. Duplicates are no-ops. Returns true if
  /// this call completed the edge.
  bool certify(MemberId from, MemberId to);

  /// Records `declarer` declaring `target` a friend. Idempotent.
  void declare_friend(MemberId declarer, MemberId target);

  void set_current_location(MemberId id, std::optional<Vec3> location);
  void set_reachable(MemberId id, bool reachable);

  /// Applies one rating batch as one tick: validates all entries (all or
  /// nothing), stamps them with tick + 1, then runs the co-rating trust update
  /// on every edge whose endpoints newly co-rated a member.
  void submit_ratings(const std::vector<RatingInput>& batch,
                      const trust::TrustParams& params);

  /// Checks the cross-record invariants; throws Error(validation).
  void validate() const;

  friend bool operator==(const Community&, const Community&) = default;

 private:
  void check_rating_shape(MemberId rater, MemberId subject,
                          const CategoryId& category, int value) const;

  std::map<MemberId, MemberProfile> members_;
  std::vector<Category> categories_;
  std::map<RatingKey, Rating> ratings_;
  std::set<std::pair<MemberId, MemberId>> intents_;
  SocialGraph graph_;
  SceneBounds bounds_;
  std::uint64_t tick_ = 0;
};

}  // namespace socnav

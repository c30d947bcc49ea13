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

#include "socnav/community.hpp"

#include <algorithm>

#include "socnav/error.hpp"

namespace socnav {

namespace {

std::string edge_name(MemberId i, MemberId j) {
  return "(" + to_string(i) + ", " + to_string(j) + ")";
}

}  // namespace

// ---------------------------------------------------------------- SocialGraph

void SocialGraph::add_node(MemberId id) { adjacency_.try_emplace(id); }

bool SocialGraph::has_edge(MemberId i, MemberId j) const {
  return edges_.contains(EdgeKey::of(i, j));
}

void SocialGraph::add_edge(MemberId i, MemberId j, double state) {
  if (i == j)
    fail(ErrorCode::validation, "self-loop on member " + to_string(i));
  if (!has_node(i) || !has_node(j))
    fail(ErrorCode::validation, "dangling edge " + edge_name(i, j));
  if (!(state >= -1.0 && state <= 1.0))
    fail(ErrorCode::validation,
         "trust state out of [-1, 1] on edge " + edge_name(i, j));
  if (!edges_.emplace(EdgeKey::of(i, j), state).second)
    fail(ErrorCode::validation, "duplicate edge " + edge_name(i, j));
  adjacency_[i].insert(j);
  adjacency_[j].insert(i);
}

double SocialGraph::trust_state(MemberId i, MemberId j) const {
  auto it = edges_.find(EdgeKey::of(i, j));
  if (it == edges_.end())
    fail(ErrorCode::inconsistent, "no edge " + edge_name(i, j));
  return it->second;
}

void SocialGraph::set_trust_state(MemberId i, MemberId j, double state) {
  auto it = edges_.find(EdgeKey::of(i, j));
  if (it == edges_.end())
    fail(ErrorCode::inconsistent, "no edge " + edge_name(i, j));
  it->second = state;
}

const std::set<MemberId>& SocialGraph::neighbors(MemberId id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end())
    fail(ErrorCode::not_found, "unknown member " + to_string(id));
  return it->second;
}

// ------------------------------------------------------------------ Community

void Community::add_member(MemberProfile profile) {
  const MemberId id = profile.id;
  if (members_.contains(id))
    fail(ErrorCode::validation, "duplicate member id " + to_string(id));
  graph_.add_node(id);
  members_.emplace(id, std::move(profile));
}

void Community::add_category(Category category) {
  if (has_category(category.id))
    fail(ErrorCode::validation, "duplicate category id " + category.id);
  categories_.push_back(std::move(category));
}

bool Community::has_category(const CategoryId& id) const {
  return std::any_of(categories_.begin(), categories_.end(),
                     [&](const Category& c) { return c.id == id; });
}

const MemberProfile& Community::member(MemberId id) const {
  auto it = members_.find(id);
  if (it == members_.end())
    fail(ErrorCode::not_found, "unknown member " + to_string(id));
  return it->second;
}

void Community::check_rating_shape(MemberId rater, MemberId subject,
                                   const CategoryId& category,
                                   int value) const {
  const std::string what = "rating " + to_string(rater) + "->" +
                           to_string(subject) + " in '" + category + "'";
  if (value != 1 && value != -1)
    fail(ErrorCode::validation,
         what + ": value must be -1 or +1, got " + std::to_string(value));
  if (rater == subject) fail(ErrorCode::validation, what + ": self-rating");
  if (!has_member(rater))
    fail(ErrorCode::validation, what + ": unknown rater");
  if (!has_member(subject))
    fail(ErrorCode::validation, what + ": unknown subject");
  if (!has_category(category))
    fail(ErrorCode::validation, what + ": unknown category");
}

void Community::add_rating(const Rating& rating) {
  check_rating_shape(rating.rater, rating.subject, rating.category,
                     rating.value);
  RatingKey key{rating.rater, rating.category, rating.subject};
  if (!ratings_.emplace(key, rating).second)
    fail(ErrorCode::validation, "duplicate rating " + to_string(rating.rater) +
                                    "->" + to_string(rating.subject) + " in '" +
                                    rating.category + "'");
}

std::vector<std::pair<MemberId, int>> Community::ratings_by(
    MemberId rater, const CategoryId& c) const {
  std::vector<std::pair<MemberId, int>> out;
  auto it = ratings_.lower_bound(RatingKey{rater, c, MemberId{0}});
  for (; it != ratings_.end(); ++it) {
    const auto& [r, cat, subject] = it->first;
    if (r != rater || cat != c) break;
    out.emplace_back(subject, it->second.value);
  }
  return out;
}

bool Community::holds_rating(MemberId rater, const CategoryId& c) const {
  auto it = ratings_.lower_bound(RatingKey{rater, c, MemberId{0}});
  return it != ratings_.end() && std::get<0>(it->first) == rater &&
         std::get<1>(it->first) == c;
}

std::size_t Community::friendliness(MemberId id) const {
  return member(id).friend_declared_by.size();
}

std::size_t Community::socializability(MemberId id) const {
  member(id);
  return graph_.degree(id);
}

bool Community::certify(MemberId from, MemberId to) {
  if (from == to)
    fail(ErrorCode::validation, "self-loop on member " + to_string(from));
  member(from);
  member(to);
  if (graph_.has_edge(from, to)) return false;
  if (intents_.erase({to, from}) > 0) {
    graph_.add_edge(from, to, 0.0);
    return true;
  }
  intents_.insert({from, to});
  return false;
}

void Community::declare_friend(MemberId declarer, MemberId target) {
  if (declarer == target)
    fail(ErrorCode::validation,
         "member " + to_string(target) + " cannot declare itself a friend");
  member(declarer);
  auto it = members_.find(target);
  if (it == members_.end())
    fail(ErrorCode::not_found, "unknown member " + to_string(target));
  it->second.friend_declared_by.insert(declarer);
}

void Community::set_current_location(MemberId id,
                                     std::optional<Vec3> location) {
  auto it = members_.find(id);
  if (it == members_.end())
    fail(ErrorCode::not_found, "unknown member " + to_string(id));
  if (location && (!is_finite(*location) || !bounds_.box.contains(*location)))
    fail(ErrorCode::validation, "location of member " + to_string(id) +
                                    " lies outside the scene bounds");
  it->second.current_location = location;
}

void Community::set_reachable(MemberId id, bool reachable) {
  auto it = members_.find(id);
  if (it == members_.end())
    fail(ErrorCode::not_found, "unknown member " + to_string(id));
  it->second.reachable = reachable;
}

void Community::submit_ratings(const std::vector<RatingInput>& batch,
                               const trust::TrustParams& params) {
  for (const auto& r : batch)
    check_rating_shape(r.rater, r.subject, r.category, r.value);

  const std::uint64_t next_tick = tick_ + 1;
  auto staged = ratings_;
  std::set<std::pair<MemberId, CategoryId>> touched;
  for (const auto& r : batch) {
    staged[RatingKey{r.rater, r.category, r.subject}] =
        Rating{r.rater, r.subject, r.category, r.value, next_tick};
    touched.emplace(r.rater, r.category);
  }
  for (const auto& [rater, category] : touched) {
    std::size_t subjects = 0;
    for (auto it = staged.lower_bound(RatingKey{rater, category, MemberId{0}});
         it != staged.end() && std::get<0>(it->first) == rater &&
         std::get<1>(it->first) == category;
         ++it)
      ++subjects;
    if (subjects > kMaxSubjectsPerCategory)
      fail(ErrorCode::validation,
           "member " + to_string(rater) + " would rate " +
               std::to_string(subjects) + " subjects in '" + category +
               "' (max 3)");
  }

  // Every (subject, category) newly co-rated across an edge in this tick,
  // ordered by ascending subject id for the update sequence.
  std::map<EdgeKey, std::set<std::pair<MemberId, CategoryId>>> events;
  for (const auto& r : batch) {
    for (MemberId peer : graph_.neighbors(r.rater)) {
      if (staged.contains(RatingKey{peer, r.category, r.subject}))
        events[EdgeKey::of(r.rater, peer)].emplace(r.subject, r.category);
    }
  }

  ratings_ = std::move(staged);
  tick_ = next_tick;
  for (const auto& [edge, corated] : events) {
    double state = graph_.trust_state(edge.a, edge.b);
    for (const auto& [subject, category] : corated) {
      const int ra = ratings_.at(RatingKey{edge.a, category, subject}).value;
      const int rb = ratings_.at(RatingKey{edge.b, category, subject}).value;
      state = trust::co_rate_update(state, ra, rb, params);
    }
    graph_.set_trust_state(edge.a, edge.b, state);
  }
}

void Community::validate() const {
  for (const auto& [id, m] : members_) {
    if (m.id != id)
      fail(ErrorCode::validation, "member key mismatch for " + to_string(id));
    if (m.friend_declared_by.contains(id))
      fail(ErrorCode::validation,
           "member " + to_string(id) + " declares itself a friend");
    for (MemberId d : m.friend_declared_by)
      if (!has_member(d))
        fail(ErrorCode::validation, "member " + to_string(id) +
                                        " declared friend by unknown member " +
                                        to_string(d));
    if (m.current_location && (!is_finite(*m.current_location) ||
                               !bounds_.box.contains(*m.current_location)))
      fail(ErrorCode::validation, "current location of member " +
                                      to_string(id) +
                                      " lies outside the scene bounds");
  }
  std::map<std::pair<MemberId, CategoryId>, std::size_t> per_rater;
  for (const auto& [key, r] : ratings_) {
    check_rating_shape(r.rater, r.subject, r.category, r.value);
    if (r.tick > tick_)
      fail(ErrorCode::validation, "rating " + to_string(r.rater) + "->" +
                                      to_string(r.subject) +
                                      " carries a tick past the community's");
    if (++per_rater[{r.rater, r.category}] > kMaxSubjectsPerCategory)
      fail(ErrorCode::validation, "member " + to_string(r.rater) +
                                      " rates more than 3 subjects in '" +
                                      r.category + "'");
  }
  for (const auto& [from, to] : intents_) {
    if (from == to)
      fail(ErrorCode::validation, "self-loop on member " + to_string(from));
    if (!has_member(from) || !has_member(to))
      fail(ErrorCode::validation,
           "certification " + edge_name(from, to) + " names an unknown member");
    if (graph_.has_edge(from, to) || intents_.contains({to, from}))
      fail(ErrorCode::validation, "certification " + edge_name(from, to) +
                                      " is already mutual; store it as an edge");
  }
}

}  // namespace socnav

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

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "socnav/community.hpp"
#include "socnav/routing.hpp"
#include "socnav/trust.hpp"

namespace socnav::recommender {

enum class Urgency { immediate, today, whenever };

std::string_view urgency_name(Urgency u);

/// Self-description of a user who is not a community member.
struct ProxyDescriptor {
  std::optional<Gender> gender;
  std::optional<int> grade;
  std::set<std::string> languages;
  std::set<CategoryId> declared_interests;

  bool empty() const {
    return !gender && !grade && languages.empty() && declared_interests.empty();
  }
};

struct ProxyWeights {
  double gender = 1.0;
  double grade = 1.0;
  double languages = 1.0;
  double interests = 1.0;
};

struct UserContext {
  std::variant<MemberId, ProxyDescriptor> user;
  CategoryId category;
  Urgency urgency = Urgency::whenever;
  std::set<std::string> user_languages;
  std::optional<double> beta_override;
};

/// Urgency -> admissible channels. Each level must admit at least the
/// channels of the more urgent level so relaxing urgency never filters more.
struct ChannelPolicy {
  std::map<Urgency, std::set<Channel>> allowed{
      {Urgency::immediate, {Channel::face_to_face, Channel::instant_message}},
      {Urgency::today,
       {Channel::face_to_face, Channel::instant_message, Channel::email}},
      {Urgency::whenever,
       {Channel::face_to_face, Channel::instant_message, Channel::email}},
  };

  void validate() const;
  const std::set<Channel>& channels_for(Urgency u) const;
};

struct RecommenderConfig {
  trust::TrustParams trust;
  ChannelPolicy policy;
  ProxyWeights proxy_weights;
  std::optional<std::size_t> hop_limit;
};

struct FeasibilityFlags {
  bool reachable = true;
  bool language = true;
  bool channel = true;
  bool all() const { return reachable && language && channel; }
};

FeasibilityFlags feasibility(const MemberProfile& subject, const UserContext& ctx,
                             const ChannelPolicy& policy);

/// Similarity of a descriptor to one member: weighted sum of gender match,
/// grade proximity 1/(1+|dgrade|), language Jaccard and interest Jaccard.
/// A member's interests are the categories it has rated in.
double proxy_similarity(const ProxyDescriptor& p, const MemberProfile& m,
                        const std::set<CategoryId>& member_interests,
                        const ProxyWeights& w);

/// Most similar member; ties go to the lowest id.
MemberId select_proxy(const ProxyDescriptor& p, const Community& community,
                      const ProxyWeights& w = {});

/// Drops responses whose subject is infeasible for the context, then
/// renormalizes the surviving weights to sum to one.
std::vector<routing::WeightedResponse> filter_feasible(
    std::span<const routing::WeightedResponse> responses, const UserContext& ctx,
    const Community& community, const ChannelPolicy& policy = {});

struct RankedEntry {
  MemberId subject;
  double score = 0.0;  ///< sum of weights with rate +1 minus those with -1
  double positive_weight = 0.0;
  double negative_weight = 0.0;
  FeasibilityFlags flags;
  std::vector<routing::WeightedResponse> support;
};

struct Recommendation {
  std::string query_id;
  MemberId origin;
  bool origin_is_proxy = false;
  CategoryId category;
  Urgency urgency = Urgency::whenever;
  std::vector<RankedEntry> ranked;  ///< score descending, then id ascending
  std::size_t top_count = 0;        ///< leading entries with positive score, <= 3
  routing::GatherResult trace;

  std::span<const RankedEntry> top3() const {
    return std::span<const RankedEntry>(ranked).first(top_count);
  }
};

/// Sums weights per subject and orders the result.
std::vector<RankedEntry> aggregate(std::span<const routing::WeightedResponse> feasible,
                                   const UserContext& ctx, const Community& community,
                                   const ChannelPolicy& policy);

/// proxy (if needed) -> gather -> annotate -> filter -> aggregate -> top 3.
/// Empty user_languages default to the member's or the descriptor's.
Recommendation recommend(const UserContext& ctx, const Community& community,
                         const RecommenderConfig& config = {},
                         const std::string& query_id = {});

}  // namespace socnav::recommender

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

#include "socnav/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "socnav/error.hpp"

namespace socnav::recommender {

namespace {

template <typename T>
double jaccard(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.contains(x);
  return static_cast<double>(common) /
         static_cast<double>(a.size() + b.size() - common);
}

std::set<CategoryId> interests_of(const Community& c, MemberId id) {
  std::set<CategoryId> out;
  auto it = c.ratings().lower_bound(Community::RatingKey{id, CategoryId{}, MemberId{0}});
  for (; it != c.ratings().end() && std::get<0>(it->first) == id; ++it)
    out.insert(std::get<1>(it->first));
  return out;
}

}  // namespace

std::string_view urgency_name(Urgency u) {
  switch (u) {
    case Urgency::immediate: return "immediate";
    case Urgency::today: return "today";
    case Urgency::whenever: break;
  }
  return "whenever";
}

void ChannelPolicy::validate() const {
  for (Urgency u : {Urgency::immediate, Urgency::today, Urgency::whenever})
    if (!allowed.contains(u))
      fail(ErrorCode::invalid_argument,
           "channel policy has no entry for '" + std::string(urgency_name(u)) + "'");
  auto subset = [](const std::set<Channel>& a, const std::set<Channel>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  if (!subset(allowed.at(Urgency::immediate), allowed.at(Urgency::today)) ||
      !subset(allowed.at(Urgency::today), allowed.at(Urgency::whenever)))
    fail(ErrorCode::invalid_argument,
         "channel policy must widen from immediate to today to whenever");
}

const std::set<Channel>& ChannelPolicy::channels_for(Urgency u) const {
  auto it = allowed.find(u);
  if (it == allowed.end())
    fail(ErrorCode::invalid_argument, "channel policy has no entry for urgency");
  return it->second;
}

FeasibilityFlags feasibility(const MemberProfile& subject, const UserContext& ctx,
                             const ChannelPolicy& policy) {
  FeasibilityFlags f;
  f.reachable = ctx.urgency != Urgency::immediate || subject.reachable;
  f.language = std::any_of(subject.languages.begin(), subject.languages.end(),
                           [&](const std::string& l) {
                             return ctx.user_languages.contains(l);
                           });
  const auto& ok = policy.channels_for(ctx.urgency);
  f.channel = std::any_of(subject.channels.begin(), subject.channels.end(),
                          [&](Channel c) { return ok.contains(c); });
  return f;
}

double proxy_similarity(const ProxyDescriptor& p, const MemberProfile& m,
                        const std::set<CategoryId>& member_interests,
                        const ProxyWeights& w) {
  double score = 0.0;
  if (p.gender && *p.gender != Gender::unspecified && *p.gender == m.gender)
    score += w.gender;
  if (p.grade && m.grade)
    score += w.grade / (1.0 + std::abs(*p.grade - *m.grade));
  score += w.languages * jaccard(p.languages, m.languages);
  score += w.interests * jaccard(p.declared_interests, member_interests);
  return score;
}

MemberId select_proxy(const ProxyDescriptor& p, const Community& community,
                      const ProxyWeights& w) {
  if (community.members().empty())
    fail(ErrorCode::invalid_argument, "cannot select a proxy in an empty community");
  if (p.empty())
    fail(ErrorCode::invalid_argument, "proxy descriptor has no populated field");
  std::optional<MemberId> best;
  double best_score = -1.0;
  // members() iterates in ascending id order; strict > keeps the lowest id.
  for (const auto& [id, m] : community.members()) {
    const double s = proxy_similarity(p, m, interests_of(community, id), w);
    if (s > best_score) {
      best_score = s;
      best = id;
    }
  }
  return *best;
}

std::vector<routing::WeightedResponse> filter_feasible(
    std::span<const routing::WeightedResponse> responses, const UserContext& ctx,
    const Community& community, const ChannelPolicy& policy) {
  std::vector<routing::WeightedResponse> out;
  double total = 0.0;
  for (const auto& r : responses) {
    if (!feasibility(community.member(r.subject), ctx, policy).all()) continue;
    out.push_back(r);
    total += r.weight;
  }
  if (total > 0.0)
    for (auto& r : out) r.weight /= total;
  return out;
}

std::vector<RankedEntry> aggregate(std::span<const routing::WeightedResponse> feasible,
                                   const UserContext& ctx, const Community& community,
                                   const ChannelPolicy& policy) {
  std::map<MemberId, RankedEntry> by_subject;
  for (const auto& r : feasible) {
    auto& e = by_subject[r.subject];
    e.subject = r.subject;
    (r.rate > 0 ? e.positive_weight : e.negative_weight) += r.weight;
    e.support.push_back(r);
  }
  std::vector<RankedEntry> ranked;
  ranked.reserve(by_subject.size());
  for (auto& [id, e] : by_subject) {
    e.score = e.positive_weight - e.negative_weight;
    e.flags = feasibility(community.member(id), ctx, policy);
    ranked.push_back(std::move(e));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedEntry& a, const RankedEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.subject < b.subject;
                   });
  return ranked;
}

Recommendation recommend(const UserContext& request, const Community& community,
                         const RecommenderConfig& config,
                         const std::string& query_id) {
  // Without explicit languages the user speaks what the profile declares.
  UserContext ctx = request;
  if (ctx.user_languages.empty()) {
    if (const auto* id = std::get_if<MemberId>(&ctx.user))
      ctx.user_languages = community.member(*id).languages;
    else
      ctx.user_languages = std::get<ProxyDescriptor>(ctx.user).languages;
  }
  if (ctx.user_languages.empty())
    fail(ErrorCode::invalid_argument, "user context needs at least one language");
  config.policy.validate();
  trust::TrustParams params = config.trust;
  if (ctx.beta_override) params.beta = *ctx.beta_override;
  params.validate();

  Recommendation rec;
  rec.query_id = query_id;
  rec.category = ctx.category;
  rec.urgency = ctx.urgency;
  if (const auto* id = std::get_if<MemberId>(&ctx.user)) {
    community.member(*id);
    rec.origin = *id;
  } else {
    rec.origin = select_proxy(std::get<ProxyDescriptor>(ctx.user), community,
                              config.proxy_weights);
    rec.origin_is_proxy = true;
  }

  rec.trace = routing::gather(community, rec.origin, ctx.category,
                              routing::GatherOptions{query_id, config.hop_limit});
  const auto weighted = routing::annotate_trust(rec.trace, community.graph(), params);
  const auto feasible = filter_feasible(weighted, ctx, community, config.policy);
  rec.ranked = aggregate(feasible, ctx, community, config.policy);
  while (rec.top_count < rec.ranked.size() && rec.top_count < 3 &&
         rec.ranked[rec.top_count].score > 0.0)
    ++rec.top_count;
  return rec;
}

}  // namespace socnav::recommender

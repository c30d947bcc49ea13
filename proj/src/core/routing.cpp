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

#include "socnav/routing.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "socnav/error.hpp"

namespace socnav::routing {

namespace {

struct InFlight {
  MemberId to;
  MemberId from;
  std::vector<MemberId> path;  // arrival path, not yet including `to`
};

}  // namespace

std::vector<double> edge_trusts_along(const SocialGraph& graph,
                                      const std::vector<MemberId>& path) {
  std::vector<double> out;
  if (path.size() < 2) return out;
  out.reserve(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    out.push_back(trust::trust_value(graph.trust_state(path[i], path[i + 1])));
  return out;
}

GatherResult gather(const Community& snapshot, MemberId origin,
                    const CategoryId& category, const GatherOptions& options) {
  if (!snapshot.has_member(origin))
    fail(ErrorCode::not_found, "unknown origin " + to_string(origin));
  if (!snapshot.has_category(category))
    fail(ErrorCode::not_found, "unknown category '" + category + "'");
  if (options.hop_limit && *options.hop_limit == 0)
    fail(ErrorCode::invalid_argument, "hop_limit must be positive");

  const SocialGraph& graph = snapshot.graph();
  GatherResult result;
  result.query_id = options.query_id;
  result.origin = origin;
  result.category = category;

  std::set<MemberId> processed{origin};
  result.processed.push_back(origin);
  std::deque<InFlight> queue;
  auto relay = [&](MemberId from, const std::vector<MemberId>& path,
                   std::optional<MemberId> except) {
    const std::size_t hops = path.size() - 1;
    if (options.hop_limit && hops >= *options.hop_limit) return;
    for (MemberId n : graph.neighbors(from)) {
      if (except && n == *except) continue;
      ++result.messages_sent;
      queue.push_back(InFlight{n, from, path});
    }
  };
  relay(origin, {origin}, std::nullopt);

  while (!queue.empty()) {
    InFlight msg = std::move(queue.front());
    queue.pop_front();
    if (!processed.insert(msg.to).second) continue;  // duplicate arrival
    result.processed.push_back(msg.to);

    std::vector<MemberId> path = std::move(msg.path);
    path.push_back(msg.to);
    const auto held = snapshot.ratings_by(msg.to, category);
    if (held.empty()) {
      relay(msg.to, path, msg.from);
      continue;
    }
    std::vector<MemberId> back(path.rbegin(), path.rend());
    const auto trusts = edge_trusts_along(graph, path);
    const double pt = trust::path_trust(trusts);
    for (const auto& [subject, rate] : held)
      result.responses.push_back(
          Response{options.query_id, msg.to, subject, rate, back, pt});
  }
  if (result.processed.size() != processed.size())
    fail(ErrorCode::internal, "agent processed a query twice");
  result.agents_visited = processed.size();
  return result;
}

std::vector<WeightedResponse> annotate_trust(const GatherResult& result,
                                             const SocialGraph& graph,
                                             const trust::TrustParams& params) {
  std::vector<WeightedResponse> out;
  out.reserve(result.responses.size());
  std::vector<double> path_trusts;
  for (const auto& r : result.responses) {
    for (std::size_t i = 0; i + 1 < r.return_path.size(); ++i)
      if (!graph.has_edge(r.return_path[i], r.return_path[i + 1]))
        fail(ErrorCode::inconsistent,
             "return path of response from " + to_string(r.responder) +
                 " uses missing edge (" + to_string(r.return_path[i]) + ", " +
                 to_string(r.return_path[i + 1]) + ")");
    const double pt = trust::path_trust(edge_trusts_along(graph, r.return_path));
    path_trusts.push_back(pt);
    out.push_back(
        WeightedResponse{r.responder, r.subject, r.rate, pt, 0.0, r.return_path});
  }
  const auto weights = trust::response_weights(path_trusts, params);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].weight = weights[i];
  std::stable_sort(out.begin(), out.end(),
                   [](const WeightedResponse& a, const WeightedResponse& b) {
                     if (a.weight != b.weight) return a.weight > b.weight;
                     if (a.responder != b.responder) return a.responder < b.responder;
                     return a.subject < b.subject;
                   });
  return out;
}

std::map<MemberId, double> flood_path_trusts(const SocialGraph& graph,
                                             MemberId origin) {
  std::map<MemberId, double> out;
  if (!graph.has_node(origin)) return out;
  out[origin] = 1.0;
  std::deque<MemberId> queue{origin};
  while (!queue.empty()) {
    const MemberId u = queue.front();
    queue.pop_front();
    for (MemberId n : graph.neighbors(u)) {
      if (out.contains(n)) continue;
      out[n] = out[u] * trust::trust_value(graph.trust_state(u, n));
      queue.push_back(n);
    }
  }
  return out;
}

}  // namespace socnav::routing

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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socnav/community.hpp"
#include "socnav/trust.hpp"

namespace socnav::routing {

/// A query message in flight: the path it has traversed so far, starting at
/// the origin.
struct Query {
  std::string query_id;
  MemberId origin;
  CategoryId category;
  std::vector<MemberId> path;
  std::optional<std::size_t> hop_limit;  ///< nullopt = unbounded
};

/// A response retracing the query path back to the origin.
struct Response {
  std::string query_id;
  MemberId responder;
  MemberId subject;
  int rate = 1;
  std::vector<MemberId> return_path;  ///< responder ... origin
  double path_trust = 1.0;
};

struct GatherResult {
  std::string query_id;
  MemberId origin;
  CategoryId category;
  std::vector<Response> responses;
  std::vector<MemberId> processed;  ///< agents in processing order
  std::size_t agents_visited = 0;
  std::size_t messages_sent = 0;  ///< query transmissions, ignored ones included
};

struct GatherOptions {
  std::string query_id;
  std::optional<std::size_t> hop_limit;
};

/// Deterministic flood of query(origin, category) over the snapshot's graph.
/// Breadth-first schedule, neighbors in ascending id order; each agent handles
/// the query once, on first arrival. An agent holding ratings in the category
/// answers with every (subject, rate) it holds and stops; any other agent
/// relays to all neighbors except the sender. The origin never answers.
GatherResult gather(const Community& snapshot, MemberId origin,
                    const CategoryId& category, const GatherOptions& options = {});

/// Edge trusts (trust_value of each edge state) along a member path.
std::vector<double> edge_trusts_along(const SocialGraph& graph,
                                      const std::vector<MemberId>& path);

struct WeightedResponse {
  MemberId responder;
  MemberId subject;
  int rate = 1;
  double path_trust = 1.0;
  double weight = 0.0;
  std::vector<MemberId> return_path;
};

/// Recomputes every response's path trust from the snapshot and attaches the
/// softmax weights. Sorted by weight descending, then responder and subject
/// ascending. A return path over a missing edge raises Error(inconsistent).
std::vector<WeightedResponse> annotate_trust(const GatherResult& result,
                                             const SocialGraph& graph,
                                             const trust::TrustParams& params);

/// Path trust from `origin` to every member the flood schedule would reach if
/// no agent absorbed the query (first-arrival paths). Unreached members are
/// absent.
std::map<MemberId, double> flood_path_trusts(const SocialGraph& graph,
                                             MemberId origin);

}  // namespace socnav::routing

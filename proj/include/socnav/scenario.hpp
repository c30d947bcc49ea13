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
#include <string>
#include <string_view>

#include "socnav/community.hpp"
#include "socnav/trust.hpp"

namespace socnav::scenario {

enum class GraphModel { small_world, random, clustered };

std::string_view graph_model_name(GraphModel m);

/// Synthetic community recipe. Generation is a pure function of the spec.
struct ScenarioSpec {
  std::size_t member_count = 43;
  std::size_t category_count = 19;
  GraphModel model = GraphModel::small_world;
  std::size_t ring_neighbors = 4;     ///< small_world: even lattice degree
  double rewire_probability = 0.1;    ///< small_world
  double edge_probability = 0.1;      ///< random
  std::size_t clusters = 4;           ///< clustered
  double p_in = 0.35;                 ///< clustered: within-cluster edge prob
  double p_out = 0.03;                ///< clustered: between-cluster edge prob
  double rater_fraction = 0.6;        ///< members rating in a given category
  double positive_rate = 0.7;         ///< P(+1) for ordinary ratings
  std::size_t rating_rounds = 3;      ///< rating batches (ticks) to submit
  double friend_probability = 0.5;    ///< per edge direction
  double presence_probability = 0.8;  ///< member currently in the room
  double reachable_probability = 0.85;
  bool all_feasible = false;  ///< everyone reachable, all channels, shared languages
  /// Category id -> expert member id. Experts receive a +1 from every rater
  /// of their category and never rate in it themselves.
  std::map<CategoryId, MemberId> planted_experts;
  bool plant_every_category = false;  ///< pick a random expert per category
  std::uint64_t seed = 1;
  trust::TrustParams trust;

  void validate() const;
};

/// Category ids are "c01".."cNN", member ids 1..N.
CategoryId category_id(std::size_t index);
std::string default_category_label(std::size_t index);

Community generate_community(const ScenarioSpec& spec);

/// Reads a spec from JSON; absent keys keep their defaults.
ScenarioSpec parse_scenario_spec(std::string_view text);

}  // namespace socnav::scenario

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

// Request and response bodies of the service API.

#include <string>

#include "json_io.hpp"
#include "socnav/haptics.hpp"
#include "socnav/recommender.hpp"

namespace socnav::wire {

using json_io::json;

recommender::UserContext parse_context(const json& j, const std::string& where);
json context_json(const recommender::UserContext& ctx);

json gather_json(const routing::GatherResult& g);
json recommendation_json(const recommender::Recommendation& r);

json scene_json(const haptics::TactileScene& s);
json record_json(const haptics::SimulationRecord& r);
json field_json(const haptics::FieldGrid& g);

haptics::GridSpec parse_grid(const json& j, const std::string& where);

}  // namespace socnav::wire

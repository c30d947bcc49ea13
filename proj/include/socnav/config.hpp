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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "socnav/haptics.hpp"
#include "socnav/recommender.hpp"
#include "socnav/trust.hpp"

namespace socnav {

struct EngineConfig {
  trust::TrustParams trust;
  haptics::FieldConfig field;
  haptics::SceneGeometry tactile;  ///< bounds are taken from the community
  recommender::ChannelPolicy channel_policy;
  recommender::ProxyWeights proxy_weights;
  std::optional<std::size_t> hop_limit;
  std::optional<std::filesystem::path> data_path;  ///< rewritten on mutation
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;

  /// Validates every embedded parameter range.
  void validate() const;

  recommender::RecommenderConfig recommender_config() const {
    return {trust, channel_policy, proxy_weights, hop_limit};
  }
};

/// Parses a config document; absent keys keep their defaults. The result is
/// validated.
EngineConfig parse_engine_config(std::string_view text);
std::string engine_config_to_text(const EngineConfig& config);

}  // namespace socnav

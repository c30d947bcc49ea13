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

#include <span>
#include <vector>

namespace socnav::trust {

/// Parameters of the co-rating trust dynamics and of the response weighting.
struct TrustParams {
  double gamma = 0.7;           ///< memory factor, (0, 1)
  double beta = 1.0;            ///< weight sharpness, [0, 1]
  double clamp_epsilon = 0.01;  ///< keeps the log-ratio transform finite

  /// Throws Error(invalid_argument) naming the offending field.
  void validate() const;
};

/// Binary rate, -1 or +1.
using Rate = int;

/// One co-rating step of the raw trust state. `rater_rate` and `peer_rate` are
/// the two agents' rates of the same member; their product decides the branch.
/// Positive agreement moves the state by (1 - gamma), disagreement by gamma.
double co_rate_update(double state, Rate rater_rate, Rate peer_rate,
                      const TrustParams& params);

/// Maps the raw state in [-1, 1] to a trust value in [0, 1].
constexpr double trust_value(double state) { return (1.0 + state) / 2.0; }

/// Trust between indirectly connected agents: product of edge trusts along the
/// path. An empty path is the agent itself and has trust 1.
double path_trust(std::span<const double> edge_trusts);

/// Log-ratio transform T -> 0.5 ln((1 + 2(T - 0.5)) / (1 - 2(T - 0.5))),
/// applied after clamping T into [eps, 1 - eps].
double hat_transform(double trust, const TrustParams& params);

/// Softmax of beta * hat_transform(T) over one response set.
std::vector<double> response_weights(std::span<const double> path_trusts,
                                     const TrustParams& params);

}  // namespace socnav::trust

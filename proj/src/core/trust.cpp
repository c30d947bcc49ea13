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

#include "socnav/trust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "socnav/error.hpp"

namespace socnav::trust {

void TrustParams::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0))
    fail(ErrorCode::invalid_argument, "trust.gamma must lie in (0, 1)");
  if (!(beta >= 0.0 && beta <= 1.0))
    fail(ErrorCode::invalid_argument, "trust.beta must lie in [0, 1]");
  if (!(clamp_epsilon > 0.0 && clamp_epsilon < 0.5))
    fail(ErrorCode::invalid_argument,
         "trust.clamp_epsilon must lie in (0, 0.5)");
}

double co_rate_update(double state, Rate rater_rate, Rate peer_rate,
                      const TrustParams& params) {
  const int product = rater_rate * peer_rate;
  if (product != 1 && product != -1)
    fail(ErrorCode::invalid_argument, "rates must be -1 or +1");
  const double g = params.gamma;
  double next;
  if (product > 0)
    next = g * state + (1.0 - g) * product;
  else
    next = (1.0 - g) * state + g * product;
  // Both branches are convex combinations of points in [-1, 1]; the clamp only
  // absorbs the last-ulp rounding.
  return std::clamp(next, -1.0, 1.0);
}

double path_trust(std::span<const double> edge_trusts) {
  return std::accumulate(edge_trusts.begin(), edge_trusts.end(), 1.0,
                         std::multiplies<>());
}

double hat_transform(double trust, const TrustParams& params) {
  const double t = std::clamp(trust, params.clamp_epsilon,
                              1.0 - params.clamp_epsilon);
  const double x = 2.0 * (t - 0.5);
  // 0.5 ln((1+x)/(1-x)) == atanh(x); atanh keeps the odd symmetry exact.
  return std::atanh(x);
}

std::vector<double> response_weights(std::span<const double> path_trusts,
                                     const TrustParams& params) {
  std::vector<double> w(path_trusts.size());
  if (w.empty()) return w;
  double top = -INFINITY;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = params.beta * hat_transform(path_trusts[i], params);
    top = std::max(top, w[i]);
  }
  double sum = 0.0;
  for (double& v : w) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace socnav::trust

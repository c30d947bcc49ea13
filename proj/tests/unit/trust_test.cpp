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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "socnav/error.hpp"
#include "socnav/trust.hpp"
#include "test_support.hpp"

using namespace socnav;
using namespace socnav::trust;

TEST_CASE("co-rating update by hand evaluation") {
  const TrustParams p;  // gamma 0.7
  CHECK(co_rate_update(0.0, 1, 1, p) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(co_rate_update(0.0, 1, -1, p) == doctest::Approx(-0.7).epsilon(1e-15));
  CHECK(co_rate_update(0.0, -1, -1, p) == doctest::Approx(0.3).epsilon(1e-15));
  // gamma * 0.5 + 0.3 and 0.3 * 0.5 - 0.7
  CHECK(co_rate_update(0.5, 1, 1, p) == doctest::Approx(0.65));
  CHECK(co_rate_update(0.5, -1, 1, p) == doctest::Approx(-0.55));
}

TEST_CASE("positive branch fixes 1 and negative branch fixes -1") {
  for (double g : {0.51, 0.7, 0.99}) {
    TrustParams p;
    p.gamma = g;
    CHECK(co_rate_update(1.0, 1, 1, p) == doctest::Approx(1.0));
    CHECK(co_rate_update(-1.0, 1, -1, p) == doctest::Approx(-1.0));
  }
}

TEST_CASE("repeated agreement converges to 1, disagreement to -1") {
  const TrustParams p;
  double up = 0.0, down = 0.0;
  for (int i = 0; i < 200; ++i) {
    up = co_rate_update(up, 1, 1, p);
    down = co_rate_update(down, 1, -1, p);
    REQUIRE(up <= 1.0);
    REQUIRE(down >= -1.0);
  }
  CHECK(up == doctest::Approx(1.0));
  CHECK(down == doctest::Approx(-1.0));
}

TEST_CASE("rate outside -1/+1 is rejected") {
  const TrustParams p;
  CHECK_THROWS_AS(co_rate_update(0.0, 0, 1, p), Error);
  CHECK_THROWS_AS(co_rate_update(0.0, 2, 1, p), Error);
}

TEST_CASE("trust value") {
  CHECK(trust_value(0.0) == 0.5);
  CHECK(trust_value(0.3) == doctest::Approx(0.65));
  CHECK(trust_value(-1.0) == 0.0);
  CHECK(trust_value(1.0) == 1.0);
}

TEST_CASE("path trust is the product of edge trusts") {
  const std::vector<double> two{0.8, 0.5};
  const std::vector<double> one{0.37};
  CHECK(path_trust(two) == doctest::Approx(0.4));
  CHECK(path_trust({}) == 1.0);
  CHECK(path_trust(one) == 0.37);
}

TEST_CASE("log-ratio transform") {
  const TrustParams p;
  CHECK(hat_transform(0.5, p) == 0.0);
  CHECK(hat_transform(0.75, p) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
  CHECK(hat_transform(0.75, p) == doctest::Approx(0.549306).epsilon(1e-6));
  // Clamped to 0.99: 0.5 ln(1.98 / 0.02) = 0.5 ln 99.
  CHECK(hat_transform(1.0, p) == doctest::Approx(0.5 * std::log(99.0)));
  CHECK(hat_transform(1.0, p) == doctest::Approx(2.29756).epsilon(1e-5));
  CHECK(hat_transform(0.0, p) == doctest::Approx(-0.5 * std::log(99.0)));
  CHECK(std::isfinite(hat_transform(0.0, p)));
}

TEST_CASE("transform is odd about one half and increasing") {
  const TrustParams p;
  double prev = -INFINITY;
  for (int i = 0; i <= 100; ++i) {
    const double x = 0.5 * i / 100.0;
    CHECK(hat_transform(0.5 + x, p) == doctest::Approx(-hat_transform(0.5 - x, p)));
    const double v = hat_transform(0.01 + 0.98 * i / 100.0, p);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("response weights") {
  TrustParams p;
  const std::vector<double> pair{0.75, 0.5};
  const auto w = response_weights(pair, p);
  REQUIRE(w.size() == 2);
  const double r3 = std::sqrt(3.0);
  CHECK(w[0] == doctest::Approx(r3 / (r3 + 1.0)).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(1.0 / (r3 + 1.0)).epsilon(1e-14));
  CHECK(w[0] == doctest::Approx(0.63397).epsilon(1e-5));

  p.beta = 0.0;
  const std::vector<double> four{0.1, 0.9, 0.5, 0.3};
  for (double x : response_weights(four, p)) CHECK(x == doctest::Approx(0.25));

  const std::vector<double> single{0.2};
  CHECK(response_weights(single, TrustParams{})[0] == 1.0);
  CHECK(response_weights({}, TrustParams{}).empty());
}

TEST_CASE("weights are normalized and ordered by trust") {
  testing::TestRng rng(3);
  for (int k = 0; k < 500; ++k) {
    std::vector<double> t(1 + rng.below(15));
    for (auto& x : t) x = rng.uniform();
    TrustParams p;
    p.beta = rng.uniform();
    const auto w = response_weights(t, p);
    double sum = 0;
    for (double x : w) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j)
        if (t[i] > t[j] && p.beta > 0 && t[j] > 0.01 && t[i] < 0.99) CHECK(w[i] > w[j]);
  }
}

TEST_CASE("parameter validation") {
  TrustParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma = 1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.beta = -0.1;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.clamp_epsilon = 0.5;
  CHECK_THROWS_AS(p.validate(), Error);
}

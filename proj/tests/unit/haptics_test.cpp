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
#include <set>

#include "socnav/error.hpp"
#include "socnav/haptics.hpp"
#include "socnav/recommender.hpp"
#include "socnav/scenario.hpp"
#include "test_support.hpp"

using namespace socnav;
using namespace socnav::haptics;
using socnav::testing::basic_member;
using socnav::testing::mid;

namespace {

TactileObject object(std::uint32_t id, Vec3 at, bool recommended,
                     PoleEligibility pole = PoleEligibility::none, bool focus = false) {
  TactileObject o;
  o.member = mid(id);
  o.position = at;
  o.is_recommended = recommended;
  o.pole = pole;
  o.viscosity_focus = focus;
  return o;
}

TactileScene scene_of(std::vector<TactileObject> objects) {
  TactileScene s;
  s.bounds = Box{{0, 0, 0}, {20, 12, 3}};
  s.objects = std::move(objects);
  return s;
}

}  // namespace

TEST_CASE("stiffness terciles") {
  const auto s = stiffness_by_tercile({0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(s[0] == kHardStiffness);
  CHECK(s[2] == kHardStiffness);
  CHECK(s[4] == kAverageStiffness);
  CHECK(s[8] == kSoftStiffness);
  CHECK(std::set<double>(s.begin(), s.end()).size() == 3);
  // Ties share a level.
  const auto tied = stiffness_by_tercile({2, 2, 2, 2});
  CHECK(std::set<double>(tied.begin(), tied.end()).size() == 1);
  CHECK(stiffness_by_tercile({7}) == std::vector<double>{kAverageStiffness});
  CHECK(stiffness_by_tercile({}).empty());
}

TEST_CASE("scene mapping") {
  Community c;
  for (std::uint32_t i = 1; i <= 6; ++i) c.add_member(basic_member(i));
  auto outside = basic_member(7);
  outside.current_location.reset();
  outside.permanent_location = Vec3{50, 50, 1};
  c.add_member(outside);
  auto nowhere = basic_member(8);
  nowhere.current_location.reset();
  nowhere.permanent_location.reset();
  c.add_member(nowhere);
  c.add_category(Category{"c01", "Math"});
  for (std::uint32_t i = 2; i <= 6; ++i) c.declare_friend(mid(i), mid(1));
  c.graph_mut().add_edge(mid(1), mid(2), -0.2);  // trust 0.4
  c.graph_mut().add_edge(mid(1), mid(3), 0.2);   // trust 0.6
  c.graph_mut().add_edge(mid(1), mid(4), 1.0);
  c.add_rating(Rating{mid(4), mid(2), "c01", 1, 0});
  c.add_rating(Rating{mid(4), mid(3), "c01", 1, 0});
  c.add_rating(Rating{mid(4), mid(1), "c01", 1, 0});

  recommender::UserContext ctx;
  ctx.user = mid(5);
  ctx.category = "c01";
  ctx.user_languages = {"ja"};
  c.graph_mut().add_edge(mid(5), mid(4), 0.0);
  const auto rec = recommender::recommend(ctx, c);
  const auto scene = map_social_to_tactile(c, rec, SceneGeometry{});
  CHECK(scene.objects.size() == 6);
  CHECK(scene.warnings.size() == 2);
  std::map<MemberId, TactileObject> by;
  for (const auto& o : scene.objects) by[o.member] = o;
  CHECK(by[mid(1)].stiffness == kSoftStiffness);
  CHECK(by[mid(1)].is_recommended);
  CHECK(by[mid(2)].is_recommended);
  CHECK(by[mid(1)].friction == doctest::Approx(0.9));
  CHECK(by[mid(4)].friction == doctest::Approx(0.1 + 0.8 * 2.0 / 3.0));
  CHECK(by[mid(6)].friction == doctest::Approx(0.1));
  // Path trusts from 5: via 4 (trust 0.5, then 1.0) to 1, then on to 2 and 3.
  CHECK(by[mid(1)].trust_to_user == doctest::Approx(0.5));
  CHECK(by[mid(1)].pole == PoleEligibility::none);
  CHECK(by[mid(2)].trust_to_user == doctest::Approx(0.2));
  CHECK(by[mid(2)].pole == PoleEligibility::repel);
  CHECK_FALSE(by[mid(6)].viscosity_focus);
  for (const auto& o : scene.objects)
    if (o.viscosity_focus) CHECK((o.is_recommended && o.stiffness == kHardStiffness));
}

TEST_CASE("pole eligibility around the threshold") {
  Community c;
  for (std::uint32_t i = 1; i <= 4; ++i) c.add_member(basic_member(i));
  c.add_category(Category{"c01", "Math"});
  c.graph_mut().add_edge(mid(1), mid(2), -0.2);
  c.graph_mut().add_edge(mid(1), mid(3), 0.2);
  c.graph_mut().add_edge(mid(1), mid(4), 1.0);
  c.add_rating(Rating{mid(4), mid(2), "c01", 1, 0});
  c.add_rating(Rating{mid(4), mid(3), "c01", 1, 0});
  recommender::UserContext ctx;
  ctx.user = mid(1);
  ctx.category = "c01";
  const auto scene = map_social_to_tactile(c, recommender::recommend(ctx, c), {});
  CHECK(scene.objects[1].trust_to_user == doctest::Approx(0.4));
  CHECK(scene.objects[1].pole == PoleEligibility::repel);
  CHECK(scene.objects[2].trust_to_user == doctest::Approx(0.6));
  CHECK(scene.objects[2].pole == PoleEligibility::attract);
}

TEST_CASE("nearest recommended member owns the poles") {
  const auto scene = scene_of({object(3, {5, 5, 1}, true, PoleEligibility::attract, true),
                               object(9, {7, 5, 1}, true, PoleEligibility::repel),
                               object(4, {6, 5.2, 1}, false)});
  auto a = select_pole(scene, {5.5, 5, 1});
  CHECK(a.member == mid(3));
  REQUIRE(a.attraction);
  CHECK(a.attraction->sign == PoleSign::attract);
  CHECK(a.viscosity_focus == Vec3{5, 5, 1});
  a = select_pole(scene, {6.5, 5, 1});
  CHECK(a.member == mid(9));
  CHECK_FALSE(a.viscosity_focus);
  CHECK(select_pole(scene, {6, 5, 1}).member == mid(3));  // equidistant
  CHECK(select_pole(scene_of({object(4, {6, 5, 1}, false)}), {6, 5, 1}).empty());
}

TEST_CASE("viscosity and feedback by direct evaluation") {
  FieldConfig cfg;
  const Vec3 f{4, 4, 1};
  CHECK(viscosity_at(f, f, cfg) == 15.0);
  CHECK(viscosity_at(f + Vec3{2, 0, 0}, f, cfg) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(viscosity_at(f + Vec3{1e6, 0, 0}, f, cfg) < 1e-10);
  CHECK(viscosity_at(f, std::nullopt, cfg) == 0.0);

  CHECK(feedback_force({}, {}, cfg) == Vec3{});
  cfg.k_h = 350;
  cfg.b_h = 0;
  const Vec3 fh = feedback_force({0.01, 0, 0}, {}, cfg);
  CHECK(fh.x == doctest::Approx(3.5));
  CHECK(fh.y == 0.0);
}

TEST_CASE("attraction points toward the pole, repulsion away") {
  FieldConfig cfg;
  const Pole p{{5, 5, 1}, PoleSign::attract};
  const Vec3 fa = attraction_force({4, 5, 1}, p, cfg);
  CHECK(fa.x == doctest::Approx(5.0));
  const Vec3 fr = attraction_force({4, 5, 1}, Pole{{5, 5, 1}, PoleSign::repel}, cfg);
  CHECK(fr.x == doctest::Approx(-5.0));
  CHECK(attraction_force({5, 5, 1}, p, cfg) == Vec3{});
}

TEST_CASE("cutoff is one, smooth, then zero") {
  FieldConfig cfg;
  CHECK(cutoff_factor(0.0, cfg) == 1.0);
  CHECK(cutoff_factor(1.8, cfg) == 1.0);
  CHECK(cutoff_factor(1.9, cfg) == doctest::Approx(0.5));
  CHECK(cutoff_factor(2.0, cfg) == 0.0);
  CHECK(cutoff_factor(3.0, cfg) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 200; ++i) {
    const double v = cutoff_factor(1.8 + 0.001 * i, cfg);
    CHECK(v <= prev);
    CHECK(prev - v < 0.02);
    prev = v;
  }
}

TEST_CASE("forces vanish three metres from every recommended member") {
  FieldConfig cfg;
  const auto scene = scene_of({object(1, {5, 5, 1}, true, PoleEligibility::attract, true)});
  const Vec3 far{8, 5, 1};
  const auto f = force_terms(far, {}, far, {}, select_pole(scene, far), cfg);
  CHECK(norm(f.f_a) <= cfg.epsilon_force);
  CHECK(f.lambda == 0.0);
}

TEST_CASE("equilibrium without poles") {
  FieldConfig cfg;
  const ProbeState s = ProbeState::at_rest({3, 3, 1});
  const ProbeState n = step_dynamics(s, s.hip, {}, cfg, 1e-3);
  CHECK(n.rho == s.rho);
  CHECK(n.rho_dot == Vec3{});
}

namespace {

double constant_viscosity_error(double dt) {
  FieldConfig cfg;
  cfg.k_h = cfg.b_h = cfg.k_a = cfg.d_a = 0.0;
  cfg.c_a = 0.5;  // lambda / m = 5 1/s
  PoleAssignment poles;
  poles.member = mid(1);
  poles.viscosity_focus = Vec3{};
  const Vec3 v0{0.2, 0.1, 0.0};
  ProbeState s{{}, v0, {}, 0.0};
  double worst = 0.0;
  for (int i = 1; i * dt <= 1.0 + 1e-12; ++i) {
    s = step_dynamics(s, {}, poles, cfg, dt);
    const Vec3 exact = std::exp(-5.0 * i * dt) * v0;
    worst = std::max(worst, norm(s.rho_dot - exact) / norm(exact));
  }
  return worst;
}

}  // namespace

TEST_CASE("RK4 matches the exponential decay and is fourth order") {
  const double e1 = constant_viscosity_error(1e-3);
  const double e2 = constant_viscosity_error(5e-4);
  CHECK(e1 < 1e-6);
  CHECK(e1 / e2 >= 12.0);
  CHECK(e1 / e2 <= 20.0);
}

TEST_CASE("probe settles on an attraction pole") {
  FieldConfig cfg;
  const auto scene = scene_of({object(1, {5, 5, 1}, true, PoleEligibility::attract)});
  // The HIP is held 0.5 m from the pole; the mass settles where the spring
  // balances the pole pull: k_h (rho - hip) = k_a (pole - rho).
  const Vec3 hip{4.5, 5, 1};
  std::vector<TrajectorySample> traj;
  for (int i = 0; i <= 5000; ++i) traj.push_back({i * 1e-3, hip});
  const auto rec = simulate(scene, traj, cfg);
  const double expected_x = (cfg.k_h * hip.x + cfg.k_a * 5.0) / (cfg.k_h + cfg.k_a);
  CHECK(rec.back().rho.x == doctest::Approx(expected_x).epsilon(1e-6));
  CHECK(std::abs(rec.back().rho.x - expected_x) / std::abs(expected_x - hip.x) < 0.01);
  CHECK(rec.back().pole == mid(1));
}

TEST_CASE("repulsion pushes the probe away") {
  FieldConfig cfg;
  const auto scene = scene_of({object(1, {5, 5, 1}, true, PoleEligibility::repel)});
  const Vec3 hip{4.5, 5, 1};
  std::vector<TrajectorySample> traj;
  for (int i = 0; i <= 2000; ++i) traj.push_back({i * 1e-3, hip});
  const auto rec = simulate(scene, traj, cfg);
  CHECK(rec.back().rho.x < hip.x);
}

TEST_CASE("simulation records and CSV") {
  FieldConfig cfg;
  const auto scene = scene_of({});
  const auto traj = parse_trajectory_csv("t,x,y,z\n# still\n0,1,1,1\n0.01,1,1,1\r\n0.02,1,1,1\n");
  REQUIRE(traj.size() == 3);
  const auto rec = simulate(scene, traj, cfg);
  REQUIRE(rec.size() == 3);
  for (const auto& r : rec) CHECK(r.rho == Vec3{1, 1, 1});
  const std::string csv = format_simulation_csv(rec);
  CHECK(csv.rfind("t,rho_x,rho_y,rho_z,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("0.01,1,1,1,0,0,0,0,0,0,0,0,0,0,\n") != std::string::npos);

  CHECK_THROWS_AS(parse_trajectory_csv("0,1,1,1\n0,1,1,1\n"), Error);
  CHECK_THROWS_AS(parse_trajectory_csv("0,1,1\n"), Error);
  CHECK_THROWS_AS(parse_trajectory_csv("0,1,x,1\n"), Error);
  CHECK(simulate(scene, {}, cfg).empty());
}

TEST_CASE("HIP motion is followed through the coupling") {
  FieldConfig cfg;
  const auto scene = scene_of({});
  std::vector<TrajectorySample> traj;
  for (int i = 0; i <= 3000; ++i) traj.push_back({i * 1e-3, {1.0 + 0.1 * i * 1e-3, 1, 1}});
  const auto rec = simulate(scene, traj, cfg);
  // The damper sees the HIP velocity, so a ramp is tracked without lag.
  CHECK(rec.back().rho_dot.x == doctest::Approx(0.1).epsilon(1e-3));
  CHECK(std::abs(rec.back().rho.x - traj.back().hip.x) < 1e-3);
}

TEST_CASE("pole switch ramp") {
  FieldConfig cfg;
  cfg.switch_ramp = 0.1;
  const Vec3 pole{5, 5, 1};
  const auto scene = scene_of({object(1, pole, true, PoleEligibility::attract)});
  ProbeSession s(scene, cfg, {4.5, 5, 1});
  auto gain = [&](const SimulationRecord& r) {
    return norm(r.f_a) / (cfg.k_a * norm(pole - r.rho));
  };
  auto r = s.observe({4.5, 5, 1});
  CHECK(r.pole == mid(1));
  CHECK(gain(r) == doctest::Approx(0.0));
  s.advance(0.05);
  r = s.observe({4.5, 5, 1});
  CHECK(gain(r) == doctest::Approx(0.5));
  s.advance(0.1);
  r = s.observe({4.5, 5, 1});
  CHECK(gain(r) == doctest::Approx(1.0));
}

TEST_CASE("contact force and field grid") {
  auto soft = object(1, {5, 5, 1}, false);
  soft.stiffness = kSoftStiffness;
  soft.radius = 0.3;
  const auto scene = scene_of({soft});
  const Vec3 f = contact_force(scene, {5.29, 5, 1});
  CHECK(f.x == doctest::Approx(0.75));
  CHECK(contact_force(scene, {7, 7, 1}) == Vec3{});

  FieldConfig cfg;
  GridSpec grid{{{0, 0, 0}, {20, 12, 3}}, {4, 3, 2}};
  const auto g = sample_field(scene, std::nullopt, cfg, grid);
  REQUIRE(g.samples.size() == 24);
  CHECK(g.samples[1].position == Vec3{20.0 / 3.0, 0, 0});
  CHECK(g.samples[4].position == Vec3{0, 6, 0});
  for (const auto& s : g.samples) CHECK(s.field_force == Vec3{});

  const auto pole_scene = scene_of({object(1, {5, 5, 1}, true, PoleEligibility::attract)});
  GridSpec at_pole{{{5, 5, 1}, {5, 5, 1}}, {1, 1, 1}};
  CHECK(sample_field(pole_scene, std::nullopt, cfg, at_pole).samples[0].field_force == Vec3{});

  CHECK_THROWS_AS(sample_field(scene, std::nullopt, cfg, {{{0, 0, 0}, {30, 1, 1}}, {2, 2, 2}}),
                  Error);
  CHECK_THROWS_AS(sample_field(scene, std::nullopt, cfg, {{{0, 0, 0}, {1, 1, 1}}, {0, 2, 2}}),
                  Error);
}

TEST_CASE("field configuration validation") {
  FieldConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.mass = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.cutoff_width = 3.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.k_a = -1;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

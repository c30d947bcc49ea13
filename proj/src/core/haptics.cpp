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

#include "socnav/haptics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "socnav/error.hpp"
#include "socnav/routing.hpp"

namespace socnav::haptics {

void SceneGeometry::validate() const {
  if (!(member_radius > 0.0))
    fail(ErrorCode::invalid_argument, "tactile.member_radius must be positive");
  if (!(friction_min >= 0.0 && friction_max >= friction_min))
    fail(ErrorCode::invalid_argument,
         "tactile friction range must satisfy 0 <= min <= max");
  if (!(bounds.min.x <= bounds.max.x && bounds.min.y <= bounds.max.y &&
        bounds.min.z <= bounds.max.z))
    fail(ErrorCode::invalid_argument, "tactile.bounds min exceeds max");
}

void FieldConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      fail(ErrorCode::invalid_argument, std::string("field.") + name + " must be positive");
  };
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
      fail(ErrorCode::invalid_argument,
           std::string("field.") + name + " must be non-negative");
  };
  positive(mass, "mass");
  non_negative(k_h, "k_h");
  non_negative(b_h, "b_h");
  non_negative(k_a, "k_a");
  non_negative(c_a, "c_a");
  non_negative(d_a, "d_a");
  positive(trust_threshold, "trust_threshold");
  positive(social_distance, "social_distance");
  positive(cutoff_width, "cutoff_width");
  positive(epsilon_force, "epsilon_force");
  non_negative(switch_ramp, "switch_ramp");
  positive(max_substep, "max_substep");
  if (trust_threshold >= 1.0)
    fail(ErrorCode::invalid_argument, "field.trust_threshold must be below 1");
  if (cutoff_width > social_distance)
    fail(ErrorCode::invalid_argument,
         "field.cutoff_width must not exceed field.social_distance");
}

std::vector<double> stiffness_by_tercile(const std::vector<std::size_t>& friendliness) {
  const std::size_t n = friendliness.size();
  std::vector<std::size_t> sorted = friendliness;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out(n, kAverageStiffness);
  if (n < 2) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), friendliness[i]) - sorted.begin());
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), friendliness[i]) - sorted.begin());
    // Twice the 0-based mid-rank; quantile q = mid / (n - 1).
    const std::size_t mid2 = lo + hi - 1;
    if (3 * mid2 < 2 * (n - 1))
      out[i] = kHardStiffness;
    else if (3 * mid2 > 4 * (n - 1))
      out[i] = kSoftStiffness;
  }
  return out;
}

TactileScene map_social_to_tactile(const Community& community,
                                   const recommender::Recommendation& recommendation,
                                   const SceneGeometry& geometry,
                                   double trust_threshold) {
  geometry.validate();
  TactileScene scene;
  scene.bounds = geometry.bounds;

  std::set<MemberId> recommended;
  for (const auto& e : recommendation.top3()) recommended.insert(e.subject);
  const auto trusts = routing::flood_path_trusts(community.graph(), recommendation.origin);

  std::size_t max_degree = 0;
  for (const auto& [id, m] : community.members()) {
    const auto pos = m.position();
    if (!pos) {
      scene.warnings.push_back("member " + to_string(id) + " has no position");
      continue;
    }
    if (!geometry.bounds.contains(*pos)) {
      scene.warnings.push_back("member " + to_string(id) +
                               " is outside the displayed space");
      continue;
    }
    TactileObject o;
    o.member = id;
    o.position = *pos;
    o.radius = geometry.member_radius;
    o.is_recommended = recommended.contains(id);
    auto t = trusts.find(id);
    o.trust_to_user = t == trusts.end() ? 0.0 : t->second;
    o.friendliness_raw = community.friendliness(id);
    o.socializability_raw = community.socializability(id);
    max_degree = std::max(max_degree, o.socializability_raw);
    scene.objects.push_back(o);
  }

  std::vector<std::size_t> friendliness;
  for (const auto& o : scene.objects) friendliness.push_back(o.friendliness_raw);
  const auto stiffness = stiffness_by_tercile(friendliness);
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    auto& o = scene.objects[i];
    o.stiffness = stiffness[i];
    const double s = max_degree == 0 ? 0.0
                                     : static_cast<double>(o.socializability_raw) /
                                           static_cast<double>(max_degree);
    o.friction = geometry.friction_min + (geometry.friction_max - geometry.friction_min) * s;
    if (!o.is_recommended) continue;
    o.viscosity_focus = o.stiffness == kHardStiffness;
    if (o.trust_to_user > trust_threshold)
      o.pole = PoleEligibility::attract;
    else if (o.trust_to_user < trust_threshold)
      o.pole = PoleEligibility::repel;
  }
  return scene;
}

PoleAssignment select_pole(const TactileScene& scene, const Vec3& hip) {
  const TactileObject* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : scene.objects) {
    if (!o.is_recommended) continue;
    const double d2 = norm2(o.position - hip);
    if (d2 < best || (d2 == best && nearest && o.member < nearest->member)) {
      best = d2;
      nearest = &o;
    }
  }
  PoleAssignment a;
  if (!nearest) return a;
  a.member = nearest->member;
  a.anchor = nearest->position;
  if (nearest->pole != PoleEligibility::none)
    a.attraction = Pole{nearest->position, nearest->pole == PoleEligibility::attract
                                               ? PoleSign::attract
                                               : PoleSign::repel};
  if (nearest->viscosity_focus) a.viscosity_focus = nearest->position;
  return a;
}

double viscosity_at(const Vec3& p, const std::optional<Vec3>& focus,
                    const FieldConfig& cfg) {
  if (!focus) return 0.0;
  return cfg.c_a / (1.0 + cfg.d_a * norm2(p - *focus));
}

Vec3 feedback_force(const Vec3& delta_rho, const Vec3& delta_rho_dot,
                    const FieldConfig& cfg) {
  return cfg.k_h * delta_rho + cfg.b_h * delta_rho_dot;
}

Vec3 attraction_force(const Vec3& rho, const std::optional<Pole>& pole,
                      const FieldConfig& cfg) {
  if (!pole) return {};
  const Vec3 toward = pole->position - rho;
  return pole->sign == PoleSign::attract ? cfg.k_a * toward : -cfg.k_a * toward;
}

double cutoff_factor(double distance, const FieldConfig& cfg) {
  const double start = cfg.social_distance - cfg.cutoff_width;
  if (distance <= start) return 1.0;
  if (distance >= cfg.social_distance) return 0.0;
  const double x = (distance - start) / cfg.cutoff_width;
  return 1.0 - x * x * (3.0 - 2.0 * x);
}

ForceTerms force_terms(const Vec3& rho, const Vec3& rho_dot, const Vec3& hip,
                       const Vec3& hip_velocity, const PoleAssignment& poles,
                       const FieldConfig& cfg) {
  ForceTerms f;
  f.f_h = feedback_force(rho - hip, rho_dot - hip_velocity, cfg);
  if (poles.empty()) return f;
  const double s = poles.gain * cutoff_factor(distance(rho, poles.anchor), cfg);
  if (s == 0.0) return f;
  f.f_a = s * attraction_force(rho, poles.attraction, cfg);
  f.lambda = s * viscosity_at(rho, poles.viscosity_focus, cfg);
  return f;
}

ProbeState step_dynamics(const ProbeState& state, const Vec3& hip,
                         const PoleAssignment& poles, const FieldConfig& cfg,
                         double dt, const Vec3& hip_velocity) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    fail(ErrorCode::invalid_argument, "dt must be positive and finite");
  if (!is_finite(state.rho) || !is_finite(state.rho_dot) || !is_finite(hip) ||
      !is_finite(hip_velocity) || !std::isfinite(state.t))
    fail(ErrorCode::invalid_argument, "probe state or HIP is not finite");

  auto accel = [&](const Vec3& rho, const Vec3& v) {
    const ForceTerms f = force_terms(rho, v, hip, hip_velocity, poles, cfg);
    return (f.f_a - f.lambda * v - f.f_h) / cfg.mass;
  };
  const Vec3& x0 = state.rho;
  const Vec3& v0 = state.rho_dot;
  const Vec3 k1x = v0;
  const Vec3 k1v = accel(x0, v0);
  const Vec3 k2x = v0 + 0.5 * dt * k1v;
  const Vec3 k2v = accel(x0 + 0.5 * dt * k1x, k2x);
  const Vec3 k3x = v0 + 0.5 * dt * k2v;
  const Vec3 k3v = accel(x0 + 0.5 * dt * k2x, k3x);
  const Vec3 k4x = v0 + dt * k3v;
  const Vec3 k4v = accel(x0 + dt * k3x, k4x);

  ProbeState next;
  next.rho = x0 + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  next.rho_dot = v0 + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  next.hip = hip;
  next.t = state.t + dt;
  if (!is_finite(next.rho) || !is_finite(next.rho_dot))
    fail(ErrorCode::internal, "probe dynamics diverged at t = " + std::to_string(next.t));
  return next;
}

ProbeSession::ProbeSession(TactileScene scene, FieldConfig cfg, const Vec3& hip,
                           double t0)
    : scene_(std::move(scene)),
      cfg_(cfg),
      state_(ProbeState::at_rest(hip, t0)),
      switched_at_(t0) {
  cfg_.validate();
  if (!is_finite(hip) || !std::isfinite(t0))
    fail(ErrorCode::invalid_argument, "initial HIP is not finite");
}

PoleAssignment ProbeSession::poles_now() {
  PoleAssignment p = select_pole(scene_, state_.hip);
  if (p.member != active_) {
    active_ = p.member;
    switched_at_ = state_.t;
  }
  if (cfg_.switch_ramp > 0.0)
    p.gain = std::clamp((state_.t - switched_at_) / cfg_.switch_ramp, 0.0, 1.0);
  return p;
}

SimulationRecord ProbeSession::observe(const Vec3& hip, const Vec3& hip_velocity) {
  if (!is_finite(hip) || !is_finite(hip_velocity))
    fail(ErrorCode::invalid_argument, "HIP sample is not finite");
  state_.hip = hip;
  hip_velocity_ = hip_velocity;
  const PoleAssignment p = poles_now();
  const ForceTerms f =
      force_terms(state_.rho, state_.rho_dot, state_.hip, hip_velocity_, p, cfg_);
  return SimulationRecord{state_.t, state_.rho, state_.rho_dot, f.f_h, f.f_a, f.lambda,
                          p.member};
}

void ProbeSession::advance(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    fail(ErrorCode::invalid_argument, "dt must be positive and finite");
  const auto substeps = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(dt / cfg_.max_substep - 1e-9)));
  const double h = dt / static_cast<double>(substeps);
  const double t_end = state_.t + dt;
  for (std::size_t s = 0; s < substeps; ++s) {
    const PoleAssignment p = poles_now();
    state_ = step_dynamics(state_, state_.hip, p, cfg_, h, hip_velocity_);
  }
  state_.t = t_end;
}

std::vector<SimulationRecord> simulate(const TactileScene& scene,
                                       const std::vector<TrajectorySample>& trajectory,
                                       const FieldConfig& cfg) {
  std::vector<SimulationRecord> out;
  if (trajectory.empty()) return out;
  ProbeSession session(scene, cfg, trajectory.front().hip, trajectory.front().t);
  out.push_back(session.observe(trajectory.front().hip));
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    const double interval = trajectory[k].t - trajectory[k - 1].t;
    if (!(interval > 0.0))
      fail(ErrorCode::invalid_argument,
           "trajectory times must increase strictly (sample " + std::to_string(k) + ")");
    session.advance(interval);
    const Vec3 v = (trajectory[k].hip - trajectory[k - 1].hip) / interval;
    out.push_back(session.observe(trajectory[k].hip, v));
  }
  return out;
}

namespace {

double parse_double(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
    field.remove_prefix(1);
  while (!field.empty() &&
         (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    fail(ErrorCode::parse, "trajectory line " + std::to_string(line) +
                               ": bad number '" + std::string(field) + "'");
  return v;
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

std::vector<TrajectorySample> parse_trajectory_csv(std::string_view text) {
  std::vector<TrajectorySample> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (out.empty() && line.rfind("t,", 0) == 0) continue;  // header
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 4)
      fail(ErrorCode::parse, "trajectory line " + std::to_string(line_no) +
                                 ": expected t,x,y,z");
    out.push_back(TrajectorySample{
        parse_double(fields[0], line_no),
        {parse_double(fields[1], line_no), parse_double(fields[2], line_no),
         parse_double(fields[3], line_no)}});
    if (out.size() >= 2 && !(out.back().t > out[out.size() - 2].t))
      fail(ErrorCode::parse, "trajectory line " + std::to_string(line_no) +
                                 ": time does not increase");
  }
  return out;
}

std::string format_simulation_csv(const std::vector<SimulationRecord>& records) {
  std::string out =
      "t,rho_x,rho_y,rho_z,rho_dot_x,rho_dot_y,rho_dot_z,f_h_x,f_h_y,f_h_z,"
      "f_a_x,f_a_y,f_a_z,lambda,pole\n";
  for (const auto& r : records) {
    append_number(out, r.t);
    for (const Vec3* v : {&r.rho, &r.rho_dot, &r.f_h, &r.f_a}) {
      for (double c : {v->x, v->y, v->z}) {
        out += ',';
        append_number(out, c);
      }
    }
    out += ',';
    append_number(out, r.lambda);
    out += ',';
    if (r.pole) out += to_string(*r.pole);
    out += '\n';
  }
  return out;
}

Vec3 GridSpec::point(std::size_t i, std::size_t j, std::size_t k) const {
  auto axis = [](double lo, double hi, std::size_t n, std::size_t idx) {
    if (n == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(idx) / static_cast<double>(n - 1);
  };
  return {axis(box.min.x, box.max.x, counts[0], i),
          axis(box.min.y, box.max.y, counts[1], j),
          axis(box.min.z, box.max.z, counts[2], k)};
}

Vec3 contact_force(const TactileScene& scene, const Vec3& p) {
  Vec3 total;
  for (const auto& o : scene.objects) {
    const Vec3 d = p - o.position;
    const double dist = norm(d);
    if (dist >= o.radius) continue;
    const Vec3 normal = dist > 0.0 ? d / dist : Vec3{0.0, 0.0, 1.0};
    total += o.stiffness * (o.radius - dist) * normal;
  }
  return total;
}

FieldGrid sample_field(const TactileScene& scene,
                       const std::optional<PoleAssignment>& poles,
                       const FieldConfig& cfg, const GridSpec& grid) {
  cfg.validate();
  if (grid.counts[0] == 0 || grid.counts[1] == 0 || grid.counts[2] == 0)
    fail(ErrorCode::invalid_argument, "field grid has zero cells");
  if (!scene.bounds.contains(grid.box.min) || !scene.bounds.contains(grid.box.max))
    fail(ErrorCode::invalid_argument, "field grid extends outside the scene bounds");

  FieldGrid out;
  out.spec = grid;
  out.samples.reserve(grid.counts[0] * grid.counts[1] * grid.counts[2]);
  for (std::size_t k = 0; k < grid.counts[2]; ++k)
    for (std::size_t j = 0; j < grid.counts[1]; ++j)
      for (std::size_t i = 0; i < grid.counts[0]; ++i) {
        FieldSample s;
        s.position = grid.point(i, j, k);
        const PoleAssignment p = poles ? *poles : select_pole(scene, s.position);
        const ForceTerms f = force_terms(s.position, {}, s.position, {}, p, cfg);
        s.field_force = f.f_a;
        s.lambda = f.lambda;
        s.contact_force = contact_force(scene, s.position);
        s.force = s.field_force + s.contact_force;
        s.pole = p.member;
        out.samples.push_back(s);
      }
  return out;
}

}  // namespace socnav::haptics

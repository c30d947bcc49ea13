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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socnav/community.hpp"
#include "socnav/recommender.hpp"
#include "socnav/vec3.hpp"

namespace socnav::haptics {

inline constexpr double kSoftStiffness = 75.0;      // N/m
inline constexpr double kAverageStiffness = 200.0;  // N/m
inline constexpr double kHardStiffness = 350.0;     // N/m

enum class PoleSign { attract, repel };
enum class PoleEligibility { none, attract, repel };

struct TactileObject {
  MemberId member;
  Vec3 position;
  double radius = 0.3;      // m
  double stiffness = kHardStiffness;  // N/m
  double friction = 0.0;    // dimensionless
  bool is_recommended = false;
  double trust_to_user = 0.0;
  std::size_t friendliness_raw = 0;
  std::size_t socializability_raw = 0;
  PoleEligibility pole = PoleEligibility::none;
  bool viscosity_focus = false;
};

struct TactileScene {
  std::vector<TactileObject> objects;  ///< ascending member id
  Box bounds;
  std::vector<std::string> warnings;
};

/// Geometry and surface ranges used when building a scene.
struct SceneGeometry {
  Box bounds{{0.0, 0.0, 0.0}, {20.0, 12.0, 3.0}};
  double member_radius = 0.3;
  double friction_min = 0.1;
  double friction_max = 0.9;

  void validate() const;
};

struct FieldConfig {
  double mass = 0.1;            // kg
  double k_h = 200.0;           // N/m
  double b_h = 2.0;             // N s/m
  double k_a = 5.0;             // N/m
  double c_a = 15.0;            // kg/s
  double d_a = 3.5;             // 1/m^2
  double trust_threshold = 0.5;
  double social_distance = 2.0;  // m
  double cutoff_width = 0.2;     // m, ramp from full strength to zero
  double epsilon_force = 1e-3;   // N
  double switch_ramp = 0.0;      // s, 0 disables the ramp after a pole switch
  double max_substep = 1e-3;     // s, integrator step cap in simulate()

  void validate() const;
};

/// Friendliness levels by rank tercile: top third soft, bottom third hard.
/// `friendliness` may be in any order; the result is index-aligned.
std::vector<double> stiffness_by_tercile(const std::vector<std::size_t>& friendliness);

/// Builds the tactile scene for the members displayed inside the bounds.
/// Members without a position, or positioned outside the bounds, are left out
/// with a warning.
TactileScene map_social_to_tactile(const Community& community,
                                   const recommender::Recommendation& recommendation,
                                   const SceneGeometry& geometry,
                                   double trust_threshold = 0.5);

struct Pole {
  Vec3 position;
  PoleSign sign = PoleSign::attract;
};

/// Active field sources: at most one attraction/repulsion pole and one
/// viscosity focus, both owned by the same recommended member.
struct PoleAssignment {
  std::optional<MemberId> member;
  Vec3 anchor;  ///< that member's position; the distance cutoff is measured from it
  std::optional<Pole> attraction;
  std::optional<Vec3> viscosity_focus;
  double gain = 1.0;  ///< field strength multiplier in [0, 1]

  bool empty() const { return !member; }
};

/// The recommended member nearest to `hip` (lowest id on ties) supplies the
/// pole and, if it is a focus of unfriendliness, the viscosity focus.
PoleAssignment select_pole(const TactileScene& scene, const Vec3& hip);

/// Radial viscosity c_a / (1 + d_a |p - focus|^2); zero without a focus.
double viscosity_at(const Vec3& p, const std::optional<Vec3>& focus,
                    const FieldConfig& cfg);

/// Spring-damper coupling k_h * d + b_h * d_dot.
Vec3 feedback_force(const Vec3& delta_rho, const Vec3& delta_rho_dot,
                    const FieldConfig& cfg);

/// Unattenuated attraction (toward the pole) or repulsion (away from it),
/// proportional to the distance.
Vec3 attraction_force(const Vec3& rho, const std::optional<Pole>& pole,
                      const FieldConfig& cfg);

/// 1 up to social_distance - cutoff_width, 0 from social_distance on, C1
/// smoothstep in between.
double cutoff_factor(double distance, const FieldConfig& cfg);

struct ProbeState {
  Vec3 rho;
  Vec3 rho_dot;
  Vec3 hip;
  double t = 0.0;

  /// Mass point coincident with the HIP, at rest.
  static ProbeState at_rest(const Vec3& hip, double t = 0.0) {
    return ProbeState{hip, {}, hip, t};
  }
};

struct ForceTerms {
  Vec3 f_a;       ///< attenuated attraction/repulsion
  Vec3 f_h;       ///< feedback force
  double lambda = 0.0;  ///< attenuated viscosity
};

ForceTerms force_terms(const Vec3& rho, const Vec3& rho_dot, const Vec3& hip,
                       const Vec3& hip_velocity, const PoleAssignment& poles,
                       const FieldConfig& cfg);

/// One classical RK4 step of m rho'' + lambda rho' = F_a - F_h with the HIP
/// held for the step.
ProbeState step_dynamics(const ProbeState& state, const Vec3& hip,
                         const PoleAssignment& poles, const FieldConfig& cfg,
                         double dt, const Vec3& hip_velocity = {});

struct TrajectorySample {
  double t = 0.0;
  Vec3 hip;
};

struct SimulationRecord {
  double t = 0.0;
  Vec3 rho;
  Vec3 rho_dot;
  Vec3 f_h;
  Vec3 f_a;
  double lambda = 0.0;
  std::optional<MemberId> pole;
};

/// Stateful probe integration against one scene. `observe` latches a new HIP
/// sample and reports the forces acting now; `advance` integrates forward
/// holding that sample, in substeps of at most cfg.max_substep.
class ProbeSession {
 public:
  ProbeSession(TactileScene scene, FieldConfig cfg, const Vec3& hip, double t0 = 0.0);

  SimulationRecord observe(const Vec3& hip, const Vec3& hip_velocity = {});
  void advance(double dt);

  const ProbeState& state() const { return state_; }
  const TactileScene& scene() const { return scene_; }
  const FieldConfig& config() const { return cfg_; }

 private:
  PoleAssignment poles_now();

  TactileScene scene_;
  FieldConfig cfg_;
  ProbeState state_;
  Vec3 hip_velocity_;
  std::optional<MemberId> active_;
  double switched_at_ = 0.0;
};

/// Drives the probe along a HIP trajectory, reselecting the pole at every
/// sample. One record per sample, the first at rest on the HIP.
std::vector<SimulationRecord> simulate(const TactileScene& scene,
                                       const std::vector<TrajectorySample>& trajectory,
                                       const FieldConfig& cfg);

std::vector<TrajectorySample> parse_trajectory_csv(std::string_view text);
std::string format_simulation_csv(const std::vector<SimulationRecord>& records);

struct GridSpec {
  Box box;
  std::array<std::size_t, 3> counts{1, 1, 1};

  /// Point (i, j, k); a single-cell axis sits at the middle of the range.
  Vec3 point(std::size_t i, std::size_t j, std::size_t k) const;
};

struct FieldSample {
  Vec3 position;
  Vec3 field_force;    ///< attenuated attraction/repulsion
  Vec3 contact_force;  ///< sphere penetration spring force
  Vec3 force;          ///< field_force + contact_force
  double lambda = 0.0;
  std::optional<MemberId> pole;
};

struct FieldGrid {
  GridSpec spec;
  std::vector<FieldSample> samples;  ///< x fastest, then y, then z
};

/// Contact force of the scene's spheres at p.
Vec3 contact_force(const TactileScene& scene, const Vec3& p);

/// Samples the field on a grid. With `poles`, the given assignment is used
/// everywhere; without, the pole is reselected as if the HIP were at each
/// grid point.
FieldGrid sample_field(const TactileScene& scene,
                       const std::optional<PoleAssignment>& poles,
                       const FieldConfig& cfg, const GridSpec& grid);

}  // namespace socnav::haptics

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

#include "socnav/config.hpp"

#include "json_io.hpp"

namespace socnav {

using json_io::json;

namespace {

void read_number(const json& obj, const char* key, const std::string& where,
                 double& target) {
  if (auto v = json_io::get_number_opt(obj, key, where)) target = *v;
}

recommender::Urgency parse_urgency_key(const std::string& s) {
  if (s == "immediate") return recommender::Urgency::immediate;
  if (s == "today") return recommender::Urgency::today;
  if (s == "whenever") return recommender::Urgency::whenever;
  fail(ErrorCode::parse, "channel_policy: unknown urgency '" + s + "'");
}

}  // namespace

void EngineConfig::validate() const {
  trust.validate();
  field.validate();
  tactile.validate();
  channel_policy.validate();
  for (double w : {proxy_weights.gender, proxy_weights.grade, proxy_weights.languages,
                   proxy_weights.interests})
    if (!(w >= 0.0))
      fail(ErrorCode::invalid_argument, "proxy_weights must be non-negative");
  if (hop_limit && *hop_limit == 0)
    fail(ErrorCode::invalid_argument, "hop_limit must be positive");
  if (listen_port < 0 || listen_port > 65535)
    fail(ErrorCode::invalid_argument, "listen_port out of range");
}

EngineConfig parse_engine_config(std::string_view text) {
  EngineConfig cfg;
  const json doc = json_io::parse(text, "engine config");
  json_io::expect_keys(doc,
                       {"trust", "field", "tactile", "channel_policy", "proxy_weights",
                        "hop_limit", "data_path", "listen_host", "listen_port"},
                       "engine config");
  if (doc.contains("trust")) {
    const json& t = doc.at("trust");
    json_io::expect_keys(t, {"gamma", "beta", "clamp_epsilon"}, "trust");
    read_number(t, "gamma", "trust", cfg.trust.gamma);
    read_number(t, "beta", "trust", cfg.trust.beta);
    read_number(t, "clamp_epsilon", "trust", cfg.trust.clamp_epsilon);
  }
  if (doc.contains("field")) {
    const json& f = doc.at("field");
    json_io::expect_keys(f,
                         {"mass", "k_h", "b_h", "k_a", "c_a", "d_a", "trust_threshold",
                          "social_distance", "cutoff_width", "epsilon_force",
                          "switch_ramp", "max_substep"},
                         "field");
    auto& fc = cfg.field;
    read_number(f, "mass", "field", fc.mass);
    read_number(f, "k_h", "field", fc.k_h);
    read_number(f, "b_h", "field", fc.b_h);
    read_number(f, "k_a", "field", fc.k_a);
    read_number(f, "c_a", "field", fc.c_a);
    read_number(f, "d_a", "field", fc.d_a);
    read_number(f, "trust_threshold", "field", fc.trust_threshold);
    read_number(f, "social_distance", "field", fc.social_distance);
    read_number(f, "cutoff_width", "field", fc.cutoff_width);
    read_number(f, "epsilon_force", "field", fc.epsilon_force);
    read_number(f, "switch_ramp", "field", fc.switch_ramp);
    read_number(f, "max_substep", "field", fc.max_substep);
  }
  if (doc.contains("tactile")) {
    const json& t = doc.at("tactile");
    json_io::expect_keys(t, {"member_radius", "friction_min", "friction_max"}, "tactile");
    read_number(t, "member_radius", "tactile", cfg.tactile.member_radius);
    read_number(t, "friction_min", "tactile", cfg.tactile.friction_min);
    read_number(t, "friction_max", "tactile", cfg.tactile.friction_max);
  }
  if (doc.contains("channel_policy")) {
    const json& p = doc.at("channel_policy");
    if (!p.is_object()) fail(ErrorCode::parse, "channel_policy must be an object");
    for (const auto& [key, channels] : p.items()) {
      auto& set = cfg.channel_policy.allowed[parse_urgency_key(key)];
      set.clear();
      for (const auto& c : channels)
        set.insert(json_io::parse_channel(c, "channel_policy." + key));
    }
  }
  if (doc.contains("proxy_weights")) {
    const json& w = doc.at("proxy_weights");
    json_io::expect_keys(w, {"gender", "grade", "languages", "interests"}, "proxy_weights");
    read_number(w, "gender", "proxy_weights", cfg.proxy_weights.gender);
    read_number(w, "grade", "proxy_weights", cfg.proxy_weights.grade);
    read_number(w, "languages", "proxy_weights", cfg.proxy_weights.languages);
    read_number(w, "interests", "proxy_weights", cfg.proxy_weights.interests);
  }
  if (doc.contains("hop_limit") && !doc.at("hop_limit").is_null()) {
    const auto h = json_io::get_int(doc, "hop_limit", "engine config");
    if (h <= 0) fail(ErrorCode::invalid_argument, "hop_limit must be positive");
    cfg.hop_limit = static_cast<std::size_t>(h);
  }
  if (doc.contains("data_path") && !doc.at("data_path").is_null())
    cfg.data_path = json_io::get_string(doc, "data_path", "engine config");
  if (doc.contains("listen_host"))
    cfg.listen_host = json_io::get_string(doc, "listen_host", "engine config");
  if (doc.contains("listen_port"))
    cfg.listen_port = static_cast<int>(json_io::get_int(doc, "listen_port", "engine config"));
  cfg.validate();
  return cfg;
}

std::string engine_config_to_text(const EngineConfig& cfg) {
  json policy = json::object();
  for (const auto& [u, channels] : cfg.channel_policy.allowed) {
    json list = json::array();
    for (Channel c : channels) list.push_back(json_io::channel_name(c));
    policy[std::string(recommender::urgency_name(u))] = list;
  }
  const auto& f = cfg.field;
  const json doc{
      {"trust",
       {{"gamma", cfg.trust.gamma},
        {"beta", cfg.trust.beta},
        {"clamp_epsilon", cfg.trust.clamp_epsilon}}},
      {"field",
       {{"mass", f.mass},
        {"k_h", f.k_h},
        {"b_h", f.b_h},
        {"k_a", f.k_a},
        {"c_a", f.c_a},
        {"d_a", f.d_a},
        {"trust_threshold", f.trust_threshold},
        {"social_distance", f.social_distance},
        {"cutoff_width", f.cutoff_width},
        {"epsilon_force", f.epsilon_force},
        {"switch_ramp", f.switch_ramp},
        {"max_substep", f.max_substep}}},
      {"tactile",
       {{"member_radius", cfg.tactile.member_radius},
        {"friction_min", cfg.tactile.friction_min},
        {"friction_max", cfg.tactile.friction_max}}},
      {"channel_policy", policy},
      {"proxy_weights",
       {{"gender", cfg.proxy_weights.gender},
        {"grade", cfg.proxy_weights.grade},
        {"languages", cfg.proxy_weights.languages},
        {"interests", cfg.proxy_weights.interests}}},
      {"hop_limit", cfg.hop_limit ? json(*cfg.hop_limit) : json(nullptr)},
      {"data_path", cfg.data_path ? json(cfg.data_path->string()) : json(nullptr)},
      {"listen_host", cfg.listen_host},
      {"listen_port", cfg.listen_port},
  };
  return json_io::dump(doc);
}

}  // namespace socnav

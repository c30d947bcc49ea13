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

#include "wire.hpp"

namespace socnav::wire {

namespace {

recommender::Urgency parse_urgency(const std::string& s, const std::string& where) {
  if (s == "immediate") return recommender::Urgency::immediate;
  if (s == "today") return recommender::Urgency::today;
  if (s == "whenever") return recommender::Urgency::whenever;
  fail(ErrorCode::validation, where + ": unknown urgency '" + s + "'");
}

std::set<std::string> string_set(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::parse, where + ": expected an array of strings");
  std::set<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) fail(ErrorCode::parse, where + ": expected an array of strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

json path_json(const std::vector<MemberId>& path) {
  json out = json::array();
  for (MemberId m : path) out.push_back(m.value);
  return out;
}

json weighted_json(const routing::WeightedResponse& w) {
  return json{{"responder", w.responder.value},
              {"subject", w.subject.value},
              {"rate", w.rate},
              {"path_trust", w.path_trust},
              {"weight", w.weight},
              {"return_path", path_json(w.return_path)}};
}

json optional_member(const std::optional<MemberId>& m) {
  return m ? json(m->value) : json(nullptr);
}

}  // namespace

recommender::UserContext parse_context(const json& j, const std::string& where) {
  json_io::expect_keys(j, {"user", "category", "urgency", "languages", "beta"}, where);
  recommender::UserContext ctx;
  const json& user = json_io::require(j, "user", where);
  json_io::expect_keys(user, {"member", "proxy"}, where + ".user");
  if (user.contains("member") == user.contains("proxy"))
    fail(ErrorCode::validation, where + ".user: give exactly one of member or proxy");
  if (user.contains("member")) {
    ctx.user = json_io::to_member_id(user.at("member"), where + ".user.member");
  } else {
    const std::string pw = where + ".user.proxy";
    const json& p = user.at("proxy");
    json_io::expect_keys(p, {"gender", "grade", "languages", "interests"}, pw);
    recommender::ProxyDescriptor d;
    if (p.contains("gender") && !p.at("gender").is_null())
      d.gender = json_io::parse_gender(p.at("gender"), pw);
    if (p.contains("grade") && !p.at("grade").is_null())
      d.grade = static_cast<int>(json_io::get_int(p, "grade", pw));
    if (p.contains("languages")) d.languages = string_set(p.at("languages"), pw + ".languages");
    if (p.contains("interests"))
      d.declared_interests = string_set(p.at("interests"), pw + ".interests");
    ctx.user = std::move(d);
  }
  ctx.category = json_io::get_string(j, "category", where);
  if (j.contains("urgency"))
    ctx.urgency = parse_urgency(json_io::get_string(j, "urgency", where), where);
  if (j.contains("languages")) ctx.user_languages = string_set(j.at("languages"), where + ".languages");
  if (j.contains("beta") && !j.at("beta").is_null())
    ctx.beta_override = json_io::get_number(j, "beta", where);
  return ctx;
}

json context_json(const recommender::UserContext& ctx) {
  json user;
  if (const auto* m = std::get_if<MemberId>(&ctx.user)) {
    user["member"] = m->value;
  } else {
    const auto& d = std::get<recommender::ProxyDescriptor>(ctx.user);
    user["proxy"] = json{
        {"gender", d.gender ? json(json_io::gender_name(*d.gender)) : json(nullptr)},
        {"grade", d.grade ? json(*d.grade) : json(nullptr)},
        {"languages", d.languages},
        {"interests", d.declared_interests}};
  }
  return json{{"user", user},
              {"category", ctx.category},
              {"urgency", recommender::urgency_name(ctx.urgency)},
              {"languages", ctx.user_languages},
              {"beta", ctx.beta_override ? json(*ctx.beta_override) : json(nullptr)}};
}

json gather_json(const routing::GatherResult& g) {
  json responses = json::array();
  for (const auto& r : g.responses)
    responses.push_back(json{{"responder", r.responder.value},
                             {"subject", r.subject.value},
                             {"rate", r.rate},
                             {"path_trust", r.path_trust},
                             {"return_path", path_json(r.return_path)}});
  return json{{"query_id", g.query_id},
              {"origin", g.origin.value},
              {"category", g.category},
              {"responses", responses},
              {"processed", path_json(g.processed)},
              {"agents_visited", g.agents_visited},
              {"messages_sent", g.messages_sent}};
}

json recommendation_json(const recommender::Recommendation& r) {
  json ranked = json::array();
  for (const auto& e : r.ranked) {
    json support = json::array();
    for (const auto& w : e.support) support.push_back(weighted_json(w));
    ranked.push_back(json{{"subject", e.subject.value},
                          {"score", e.score},
                          {"positive_weight", e.positive_weight},
                          {"negative_weight", e.negative_weight},
                          {"feasible",
                           {{"reachable", e.flags.reachable},
                            {"language", e.flags.language},
                            {"channel", e.flags.channel}}},
                          {"support", support}});
  }
  json top = json::array();
  for (const auto& e : r.top3()) top.push_back(e.subject.value);
  return json{{"query_id", r.query_id},
              {"origin", r.origin.value},
              {"origin_is_proxy", r.origin_is_proxy},
              {"category", r.category},
              {"urgency", recommender::urgency_name(r.urgency)},
              {"ranked", ranked},
              {"top3", top}};
}

json scene_json(const haptics::TactileScene& s) {
  json objects = json::array();
  for (const auto& o : s.objects) {
    const char* pole = o.pole == haptics::PoleEligibility::attract  ? "attract"
                       : o.pole == haptics::PoleEligibility::repel ? "repel"
                                                                   : "none";
    objects.push_back(json{{"member", o.member.value},
                           {"position", json_io::from_vec3(o.position)},
                           {"radius", o.radius},
                           {"stiffness", o.stiffness},
                           {"friction", o.friction},
                           {"is_recommended", o.is_recommended},
                           {"trust_to_user", o.trust_to_user},
                           {"friendliness", o.friendliness_raw},
                           {"socializability", o.socializability_raw},
                           {"pole", pole},
                           {"viscosity_focus", o.viscosity_focus}});
  }
  return json{{"objects", objects},
              {"bounds", json_io::from_box(s.bounds)},
              {"warnings", s.warnings}};
}

json record_json(const haptics::SimulationRecord& r) {
  return json{{"t", r.t},
              {"rho", json_io::from_vec3(r.rho)},
              {"rho_dot", json_io::from_vec3(r.rho_dot)},
              {"f_h", json_io::from_vec3(r.f_h)},
              {"f_a", json_io::from_vec3(r.f_a)},
              {"lambda", r.lambda},
              {"pole", optional_member(r.pole)}};
}

json field_json(const haptics::FieldGrid& g) {
  json samples = json::array();
  for (const auto& s : g.samples)
    samples.push_back(json{{"position", json_io::from_vec3(s.position)},
                           {"field_force", json_io::from_vec3(s.field_force)},
                           {"contact_force", json_io::from_vec3(s.contact_force)},
                           {"force", json_io::from_vec3(s.force)},
                           {"lambda", s.lambda},
                           {"pole", optional_member(s.pole)}});
  return json{{"grid",
               {{"min", json_io::from_vec3(g.spec.box.min)},
                {"max", json_io::from_vec3(g.spec.box.max)},
                {"counts", g.spec.counts}}},
              {"samples", samples}};
}

haptics::GridSpec parse_grid(const json& j, const std::string& where) {
  json_io::expect_keys(j, {"min", "max", "counts"}, where);
  haptics::GridSpec g;
  g.box.min = json_io::to_vec3(json_io::require(j, "min", where), where + ".min");
  g.box.max = json_io::to_vec3(json_io::require(j, "max", where), where + ".max");
  const json& counts = json_io::require(j, "counts", where);
  if (!counts.is_array() || counts.size() != 3)
    fail(ErrorCode::parse, where + ".counts: expected three integers");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!counts[i].is_number_integer() || counts[i].get<std::int64_t>() < 0)
      fail(ErrorCode::parse, where + ".counts: expected non-negative integers");
    g.counts[i] = counts[i].get<std::size_t>();
  }
  return g;
}

}  // namespace socnav::wire

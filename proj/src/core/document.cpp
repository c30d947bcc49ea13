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

#include "socnav/document.hpp"

#include <fstream>
#include <sstream>

#include "json_io.hpp"

namespace socnav {

using json_io::json;

namespace {

MemberProfile parse_member(const json& j, std::size_t index) {
  std::string where = "members[" + std::to_string(index) + "]";
  json_io::expect_keys(j,
                       {"id", "name", "gender", "grade", "permanent_location",
                        "current_location", "reachable", "channels",
                        "languages", "friend_declared_by"},
                       where);
  MemberProfile m;
  m.id = json_io::to_member_id(json_io::require(j, "id", where), where + ".id");
  where = "member " + to_string(m.id);
  m.name = json_io::get_string(j, "name", where);
  m.gender = json_io::parse_gender(json_io::require(j, "gender", where), where);
  if (j.contains("grade") && !j.at("grade").is_null())
    m.grade = static_cast<int>(json_io::get_int(j, "grade", where));
  if (j.contains("permanent_location") && !j.at("permanent_location").is_null())
    m.permanent_location =
        json_io::to_vec3(j.at("permanent_location"), where + ".permanent_location");
  if (j.contains("current_location") && !j.at("current_location").is_null())
    m.current_location =
        json_io::to_vec3(j.at("current_location"), where + ".current_location");
  m.reachable = json_io::get_bool(j, "reachable", where);
  for (const auto& c : json_io::require(j, "channels", where))
    m.channels.insert(json_io::parse_channel(c, where + ".channels"));
  for (const auto& l : json_io::require(j, "languages", where)) {
    if (!l.is_string())
      fail(ErrorCode::parse, where + ".languages: expected strings");
    m.languages.insert(l.get<std::string>());
  }
  for (const auto& f : json_io::require(j, "friend_declared_by", where))
    m.friend_declared_by.insert(
        json_io::to_member_id(f, where + ".friend_declared_by"));
  return m;
}

template <typename F>
void with_context(const std::string& where, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    throw Error(e.code(), where + ": " + e.what());
  }
}

}  // namespace

Community load_community(std::string_view text) {
  const json doc = json_io::parse(text, "community document");
  const std::string top = "community document";
  json_io::expect_keys(doc,
                       {"schema_version", "tick", "bounds", "members",
                        "categories", "ratings", "certifications", "edges"},
                       top);
  const auto version = json_io::get_int(doc, "schema_version", top);
  if (version != kSchemaVersion)
    fail(ErrorCode::parse,
                  "unsupported schema_version " + std::to_string(version));

  Community c;
  const auto tick = json_io::get_int(doc, "tick", top);
  if (tick < 0) fail(ErrorCode::validation, "tick must be non-negative");
  c.set_tick(static_cast<std::uint64_t>(tick));
  if (doc.contains("bounds"))
    c.set_bounds(SceneBounds{json_io::to_box(doc.at("bounds"), "bounds")});

  const auto& members = json_io::require(doc, "members", top);
  for (std::size_t i = 0; i < members.size(); ++i)
    c.add_member(parse_member(members[i], i));

  const auto& categories = json_io::require(doc, "categories", top);
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const std::string where = "categories[" + std::to_string(i) + "]";
    json_io::expect_keys(categories[i], {"id", "label"}, where);
    c.add_category(Category{json_io::get_string(categories[i], "id", where),
                            json_io::get_string(categories[i], "label", where)});
  }

  const auto& ratings = json_io::require(doc, "ratings", top);
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    const std::string where = "ratings[" + std::to_string(i) + "]";
    const json& r = ratings[i];
    json_io::expect_keys(r, {"rater", "subject", "category", "value", "tick"},
                         where);
    const auto rtick = json_io::get_int(r, "tick", where);
    if (rtick < 0)
      fail(ErrorCode::validation, where + ": tick must be non-negative");
    Rating rating{
        json_io::to_member_id(json_io::require(r, "rater", where), where),
        json_io::to_member_id(json_io::require(r, "subject", where), where),
        json_io::get_string(r, "category", where),
        static_cast<int>(json_io::get_int(r, "value", where)),
        static_cast<std::uint64_t>(rtick)};
    with_context(where, [&] { c.add_rating(rating); });
  }

  const auto& edges = json_io::require(doc, "edges", top);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    json_io::expect_keys(e, {"a", "b", "trust_state"}, where);
    const MemberId a = json_io::to_member_id(json_io::require(e, "a", where), where);
    const MemberId b = json_io::to_member_id(json_io::require(e, "b", where), where);
    const double state = json_io::get_number(e, "trust_state", where);
    with_context(where, [&] { c.graph_mut().add_edge(a, b, state); });
  }

  // A pending intent recorded in both directions is rejected, not merged.
  const auto& certs = json_io::require(doc, "certifications", top);
  std::set<std::pair<MemberId, MemberId>> intents;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const std::string where = "certifications[" + std::to_string(i) + "]";
    json_io::expect_keys(certs[i], {"from", "to"}, where);
    const MemberId from =
        json_io::to_member_id(json_io::require(certs[i], "from", where), where);
    const MemberId to =
        json_io::to_member_id(json_io::require(certs[i], "to", where), where);
    if (from == to)
      fail(ErrorCode::validation,
                    where + ": self-loop on member " + to_string(from));
    if (intents.contains({to, from}))
      fail(ErrorCode::validation,
                    where + ": certification is already mutual; store it as an edge");
    intents.insert({from, to});
  }
  for (const auto& [from, to] : intents) {
    if (!c.has_member(from) || !c.has_member(to))
      fail(ErrorCode::validation, "certification names an unknown member");
    if (c.graph().has_edge(from, to))
      fail(ErrorCode::validation,
                    "certification (" + to_string(from) + ", " + to_string(to) +
                        ") duplicates an existing edge");
    c.certify(from, to);
  }

  c.validate();
  return c;
}

std::string save_community(const Community& c) {
  json members = json::array();
  for (const auto& [_, m] : c.members()) members.push_back(json_io::member_json(m));

  json categories = json::array();
  for (const auto& cat : c.categories())
    categories.push_back(json{{"id", cat.id}, {"label", cat.label}});

  json ratings = json::array();
  for (const auto& [_, r] : c.ratings())
    ratings.push_back(json{{"rater", r.rater.value},
                           {"subject", r.subject.value},
                           {"category", r.category},
                           {"value", r.value},
                           {"tick", r.tick}});

  json certs = json::array();
  for (const auto& [from, to] : c.pending_intents())
    certs.push_back(json{{"from", from.value}, {"to", to.value}});

  json edges = json::array();
  for (const auto& [key, state] : c.graph().edges())
    edges.push_back(
        json{{"a", key.a.value}, {"b", key.b.value}, {"trust_state", state}});

  const json doc{{"schema_version", kSchemaVersion},
                 {"tick", c.tick()},
                 {"bounds", json_io::from_box(c.bounds().box)},
                 {"members", members},
                 {"categories", categories},
                 {"ratings", ratings},
                 {"certifications", certs},
                 {"edges", edges}};
  return json_io::dump(doc);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Community load_community_file(const std::filesystem::path& path) {
  return load_community(read_file(path));
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) fail(ErrorCode::io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::io, "cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace socnav

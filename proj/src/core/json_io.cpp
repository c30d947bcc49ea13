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

#include "json_io.hpp"

#include <algorithm>
#include <cmath>

namespace socnav::json_io {

json parse(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string(what) + ": " + e.what());
  }
}

void expect_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                 const std::string& where) {
  if (!obj.is_object()) fail(ErrorCode::parse, where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(ErrorCode::parse, where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(ErrorCode::parse, where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    fail(ErrorCode::parse, where + ": missing key '" + key + "'");
  return *it;
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number())
    fail(ErrorCode::parse, where + ": '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    fail(ErrorCode::validation, where + ": '" + key + "' must be finite");
  return d;
}

std::optional<double> get_number_opt(const json& obj, const char* key,
                                     const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_number(obj, key, where);
}

std::int64_t get_int(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer())
    fail(ErrorCode::parse, where + ": '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

bool get_bool(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_boolean())
    fail(ErrorCode::parse, where + ": '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const char* key,
                       const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string())
    fail(ErrorCode::parse, where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

Vec3 to_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3 ||
      !std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_number(); }))
    fail(ErrorCode::parse, where + ": expected [x, y, z]");
  Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  if (!is_finite(v)) fail(ErrorCode::validation, where + ": non-finite vector");
  return v;
}

json from_vec3(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Box to_box(const json& j, const std::string& where) {
  expect_keys(j, {"min", "max"}, where);
  Box b{to_vec3(require(j, "min", where), where + ".min"),
        to_vec3(require(j, "max", where), where + ".max")};
  if (!(b.min.x <= b.max.x && b.min.y <= b.max.y && b.min.z <= b.max.z))
    fail(ErrorCode::validation, where + ": min exceeds max");
  return b;
}

json from_box(const Box& b) {
  return json{{"min", from_vec3(b.min)}, {"max", from_vec3(b.max)}};
}

MemberId to_member_id(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    fail(ErrorCode::parse, where + ": member id must be a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v > 0xffffffffULL) fail(ErrorCode::parse, where + ": member id too large");
  return MemberId{static_cast<std::uint32_t>(v)};
}

std::string_view gender_name(Gender g) {
  switch (g) {
    case Gender::female: return "F";
    case Gender::male: return "M";
    case Gender::unspecified: break;
  }
  return "unspecified";
}

Gender parse_gender(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "F") return Gender::female;
    if (s == "M") return Gender::male;
    if (s == "unspecified") return Gender::unspecified;
  }
  fail(ErrorCode::parse, where + ": gender must be \"F\", \"M\" or \"unspecified\"");
}

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::face_to_face: return "face_to_face";
    case Channel::instant_message: return "instant_message";
    case Channel::email: break;
  }
  return "email";
}

Channel parse_channel(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "face_to_face") return Channel::face_to_face;
    if (s == "instant_message") return Channel::instant_message;
    if (s == "email") return Channel::email;
  }
  fail(ErrorCode::parse, where + ": unknown channel " + j.dump());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json member_json(const MemberProfile& m) {
  json channels = json::array();
  for (Channel c : m.channels) channels.push_back(channel_name(c));
  json friends = json::array();
  for (MemberId f : m.friend_declared_by) friends.push_back(f.value);
  return json{
      {"id", m.id.value},
      {"name", m.name},
      {"gender", gender_name(m.gender)},
      {"grade", m.grade ? json(*m.grade) : json(nullptr)},
      {"permanent_location",
       m.permanent_location ? from_vec3(*m.permanent_location)
                            : json(nullptr)},
      {"current_location", m.current_location
                               ? from_vec3(*m.current_location)
                               : json(nullptr)},
      {"reachable", m.reachable},
      {"channels", channels},
      {"languages", m.languages},
      {"friend_declared_by", friends},
  };
}

}  // namespace socnav::json_io

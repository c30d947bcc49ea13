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

// JSON conversion helpers shared by the document, config, and engine layers.

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "socnav/community.hpp"
#include "socnav/error.hpp"
#include "socnav/vec3.hpp"

namespace socnav::json_io {

using nlohmann::json;

json parse(std::string_view text, std::string_view what);

/// Rejects keys outside `allowed`; `where` names the record in the message.
void expect_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                 const std::string& where);

const json& require(const json& obj, const char* key, const std::string& where);

double get_number(const json& obj, const char* key, const std::string& where);
std::optional<double> get_number_opt(const json& obj, const char* key,
                                     const std::string& where);
std::int64_t get_int(const json& obj, const char* key, const std::string& where);
bool get_bool(const json& obj, const char* key, const std::string& where);
std::string get_string(const json& obj, const char* key,
                       const std::string& where);

Vec3 to_vec3(const json& j, const std::string& where);
json from_vec3(const Vec3& v);
Box to_box(const json& j, const std::string& where);
json from_box(const Box& b);

MemberId to_member_id(const json& j, const std::string& where);

std::string_view gender_name(Gender g);
Gender parse_gender(const json& j, const std::string& where);
std::string_view channel_name(Channel c);
Channel parse_channel(const json& j, const std::string& where);

json member_json(const MemberProfile& m);

/// Canonical text form used for every document and API body.
std::string dump(const json& j);

}  // namespace socnav::json_io

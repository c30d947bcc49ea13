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

#include <filesystem>
#include <string>
#include <string_view>

#include "socnav/community.hpp"

namespace socnav {

inline constexpr int kSchemaVersion = 1;

/// Parses a community document. Malformed text raises Error(parse); records
/// that violate a model invariant raise Error(validation) naming the record.
Community load_community(std::string_view text);

/// Canonical serialization: sorted keys, sorted records, two-space indent,
/// trailing newline. load_community(save_community(c)) == c, and saving the
/// result again is byte-identical.
std::string save_community(const Community& community);

Community load_community_file(const std::filesystem::path& path);

/// Writes through a sibling temp file and renames over the target.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace socnav

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

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace socnav {

/// Opaque member identity. Ordered numerically; every tie-break in the
/// engine ("ascending member id") uses this ordering.
struct MemberId {
  std::uint32_t value = 0;

  constexpr MemberId() = default;
  constexpr explicit MemberId(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const MemberId&) const = default;
};

inline std::string to_string(MemberId id) { return std::to_string(id.value); }

using CategoryId = std::string;

}  // namespace socnav

template <>
struct std::hash<socnav::MemberId> {
  std::size_t operator()(socnav::MemberId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

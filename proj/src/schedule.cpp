// Copyright 2026 The atomplex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "atomplex/schedule.hpp"

#include "atomplex/errors.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace atomplex {

namespace {

/// Parses "AxB" into two positive ints.
bool parse_pair(std::string_view text, int& a, int& b) {
  const auto sep = text.find('x');
  if (sep == std::string_view::npos) {
    return false;
  }
  const auto first = text.substr(0, sep);
  const auto second = text.substr(sep + 1);
  const auto r1 = std::from_chars(first.data(), first.data() + first.size(), a);
  const auto r2 = std::from_chars(second.data(), second.data() + second.size(), b);
  return r1.ec == std::errc{} && r1.ptr == first.data() + first.size() &&
         r2.ec == std::errc{} && r2.ptr == second.data() + second.size() && a > 0 &&
         b > 0;
}

} // namespace

GridSpec GridSpec::parse(std::string_view text) {
  GridSpec g;
  const auto colon = text.find(':');
  if (!parse_pair(text.substr(0, colon), g.x_sites, g.y_sites)) {
    throw ConfigError("bad grid '" + std::string(text) + "', expected XxY[:RxC]");
  }
  g.aod_rows = g.y_sites;
  g.aod_cols = g.x_sites;
  if (colon != std::string_view::npos &&
      !parse_pair(text.substr(colon + 1), g.aod_rows, g.aod_cols)) {
    throw ConfigError("bad AOD spec in '" + std::string(text) + "', expected RxC");
  }
  return g;
}

std::string GridSpec::to_string() const {
  return std::to_string(x_sites) + "x" + std::to_string(y_sites) + ":" +
         std::to_string(aod_rows) + "x" + std::to_string(aod_cols);
}

std::size_t CompiledSchedule::stage_count() const {
  int latest = -1;
  for (const int s : gate_stage) {
    latest = std::max(latest, s);
  }
  return static_cast<std::size_t>(latest + 1);
}

const Layout& CompiledSchedule::snapshot(std::size_t snapshot) const {
  if (snapshot == 0) {
    return initial;
  }
  return stages.at(snapshot - 1);
}

} // namespace atomplex

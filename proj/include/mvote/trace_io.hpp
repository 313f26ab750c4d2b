// Copyright 2026 The mvote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON documents for games and traces. Thresholds are written as exact
// "numerator/denominator" strings, so a trace reloads bit for bit.

#ifndef MVOTE_TRACE_IO_HPP_
#define MVOTE_TRACE_IO_HPP_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "mvote/engine.hpp"
#include "mvote/preferences.hpp"

namespace mvote {

inline constexpr const char* kTraceFormat = "mvote-trace/1";

std::string to_string(ThresholdRule rule);
std::string to_string(LengthConvention convention);
ThresholdRule parse_threshold_rule(const std::string& text);
LengthConvention parse_length_convention(const std::string& text);

Json options_to_json(const EngineOptions& options);
EngineOptions options_from_json(const Json& doc);

// {"alternatives": [...], "agents": [{"weight", "ranking"}...], "thresholds": {label: "p/q"}}
Json config_to_json(const GameConfig& config);
GameConfig config_from_json(const Json& doc);

Json trace_to_json(const GameTrace& trace);
// Throws std::invalid_argument (or ConfigError) on malformed or incoherent
// documents.
GameTrace trace_from_json(const Json& doc);

void write_trace(const GameTrace& trace, const std::filesystem::path& path);
GameTrace read_trace(const std::filesystem::path& path);

}  // namespace mvote

#endif  // MVOTE_TRACE_IO_HPP_

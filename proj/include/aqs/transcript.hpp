// Copyright 2026 The aqs Authors
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

#pragma once

#include <ostream>

#include "json.hpp"

#include "aqs/protocol.hpp"

namespace aqs::qsv {

/**
 * One transcript record per verified copy:
 *
 *   {"copy": 0, "subset": [1, 4, 5], "z_outcomes": [0, 1, 0],
 *    "branch": "dicke", "sub": {...}, "accepted": true}
 *
 * "sub" holds the sub-protocol record; see README for its fields.
 */
nlohmann::json to_json(const CopyVerdict &v);

/// Writes one JSON object per line, tagged with the session index.
void write_transcript(std::ostream &out, const SessionResult &session, std::uint64_t session_index = 0);

} // namespace aqs::qsv

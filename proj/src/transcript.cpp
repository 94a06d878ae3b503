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

#include "aqs/transcript.hpp"

namespace aqs::qsv {

namespace {

nlohmann::json outcomes(const std::vector<int> &o) {
    nlohmann::json arr = nlohmann::json::array();
    for (int x : o) {
        arr.push_back(x < 0 ? nlohmann::json(nullptr) : nlohmann::json(x));
    }
    return arr;
}

} // namespace

nlohmann::json to_json(const CopyVerdict &v) {
    nlohmann::json j;
    j["copy"] = v.copy;
    j["subset"] = v.subset;
    j["z_outcomes"] = v.z_outcomes;
    j["branch"] = to_string(v.branch);
    if (v.ghz) {
        const GhzLikeRecord &g = *v.ghz;
        nlohmann::json sub{{"protocol", "ghz_like"}, {"a", g.a}, {"qubits", g.qubits}, {"o", g.o}};
        if (g.a == 1) {
            sub["k"] = g.k;
            sub["r"] = g.r;
            sub["s"] = g.s;
            sub["outcome"] = g.final_outcome;
        }
        j["sub"] = std::move(sub);
    } else if (v.dicke) {
        const DickeRecord &d = *v.dicke;
        j["sub"] = nlohmann::json{{"protocol", "dicke"},  {"k", d.k},
                                  {"k1", d.k1},           {"k2", d.k2},
                                  {"qubits", d.qubits},   {"o", outcomes(d.o)},
                                  {"pair_basis", d.pair_basis}};
    }
    j["accepted"] = v.accepted;
    return j;
}

void write_transcript(std::ostream &out, const SessionResult &session, std::uint64_t session_index) {
    for (const auto &v : session.verdicts) {
        nlohmann::json j = to_json(v);
        j["session"] = session_index;
        out << j.dump() << '\n';
    }
}

} // namespace aqs::qsv

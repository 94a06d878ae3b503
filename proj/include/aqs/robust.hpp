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

#include <cstdint>
#include <optional>
#include <string>

#include "aqs/channel.hpp"
#include "aqs/protocol.hpp"
#include "aqs/sensing.hpp"

namespace aqs::qsv {

struct RobustOptions {
    std::uint64_t restart_cap = 10000;
};

struct RobustResult {
    std::uint64_t rounds_requested = 0;
    std::uint64_t rounds_accepted = 0;
    std::uint64_t restarts = 0;
    std::uint64_t copies_consumed = 0;
    sensing::Counts counts{0, 0, 0, 0};
    std::optional<sensing::AngleEstimate> estimate;
    bool ghz_collapse = false;
    bool cap_exhausted = false;
    std::string diagnostic;
};

/**
 * Verify-then-sense loop. Each attempt draws plan.copies + 1 noisy copies;
 * the first plan.copies are verified, and on acceptance the last one is used
 * for a single sensing round. Rejection restarts the attempt. Stops after
 * `rounds` accepted rounds or opt.restart_cap restarts.
 */
RobustResult run_robust_protocol(const sensing::Scenario &scenario, const VerificationPlan &plan,
                                 const KrausChannel &noise, std::uint64_t rounds, RngStream &rng,
                                 const RobustOptions &opt = {});

} // namespace aqs::qsv

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

#include "aqs/robust.hpp"

#include "aqs/measure.hpp"

namespace aqs::qsv {

RobustResult run_robust_protocol(const sensing::Scenario &scenario, const VerificationPlan &plan,
                                 const KrausChannel &noise, std::uint64_t rounds, RngStream &rng,
                                 const RobustOptions &opt) {
    scenario.validate();
    if (plan.n != scenario.n || plan.q0 != scenario.q0) {
        throw std::invalid_argument("run_robust_protocol: plan and scenario disagree on (n, q0)");
    }
    RobustResult out;
    out.rounds_requested = rounds;
    const CopySource source = noisy_target_source(plan.n, plan.q0, noise);
    const std::vector<double> omegas = scenario.omegas();

    while (out.rounds_accepted < rounds) {
        const SessionResult session = verify_batch(source, plan, rng, true, false);
        out.copies_consumed += session.copies_checked;
        if (!session.accepted) {
            ++out.restarts;
            if (out.restarts >= opt.restart_cap) {
                out.cap_exhausted = true;
                out.diagnostic = "restart cap of " + std::to_string(opt.restart_cap) +
                                 " reached after " + std::to_string(out.rounds_accepted) +
                                 " accepted rounds; the source fails verification";
                break;
            }
            continue;
        }
        const PureState probe = *source(plan.copies, rng);
        ++out.copies_consumed;
        const sensing::Probs p = sensing::povm_probs(evolve_phases(probe, omegas, scenario.t));
        ++out.counts[sample_discrete({p.begin(), p.end()}, rng)];
        ++out.rounds_accepted;
    }

    if (out.rounds_accepted > 0) {
        try {
            out.estimate = sensing::estimate_from_counts(out.counts, scenario.n, scenario.q0);
        } catch (const sensing::GhzCollapseError &e) {
            out.ghz_collapse = true;
            out.diagnostic = e.what();
        }
    }
    return out;
}

} // namespace aqs::qsv

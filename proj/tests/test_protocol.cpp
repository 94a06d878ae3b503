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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"

#include "aqs/complexity.hpp"
#include "aqs/robust.hpp"
#include "aqs/spectrum.hpp"
#include "aqs/strategies.hpp"
#include "aqs/transcript.hpp"

using namespace aqs;
using namespace aqs::qsv;

namespace {

constexpr double kPi = std::numbers::pi;

double acceptance_rate(const PureState &psi, const ProtocolParams &params, int trials, RngStream &rng) {
    int ok = 0;
    for (int i = 0; i < trials; ++i) {
        ok += verify_copy(psi, params, rng).accepted;
    }
    return ok / static_cast<double>(trials);
}

bool within_sigma(double observed, double expected, int trials, double sigmas) {
    const double sd = std::sqrt(std::max(expected * (1 - expected), 1e-12) / trials);
    return std::abs(observed - expected) <= sigmas * sd + 1e-12;
}

CopySource fixed_source(const PureState &psi, std::uint64_t available) {
    return [psi, available](std::uint64_t index, RngStream &) -> std::optional<PureState> {
        if (index >= available) {
            return std::nullopt;
        }
        return psi;
    };
}

} // namespace

TEST_CASE("ideal target is always accepted") {
    for (int n = 3; n <= 4; ++n) {
        for (double p : {0.0, 0.5}) {
            RngStream rng(100 + n);
            const PureState t = make_target(n, 0.33);
            for (int i = 0; i < 10000; ++i) {
                REQUIRE(verify_copy(t, {n, 0.33, p}, rng).accepted);
            }
        }
    }
    RngStream rng(1);
    CHECK_THROWS(verify_copy(make_target(4, 0.33), {3, 0.33, 0.0}, rng));
}

TEST_CASE("acceptance probability equals the strategy expectation") {
    struct Case {
        int n;
        double q0;
        double p;
    };
    for (const Case c : {Case{3, 0.33, 0.0}, Case{3, 0.1, 0.3}, Case{4, 0.5, 0.0}}) {
        RngStream rng(7 + c.n);
        const StrategyOperator omega = assemble_strategy_decomposed(c.n, c.q0, c.p).total();
        const int m = 2 * c.n;
        std::vector<PureState> states{make_ghz(m), make_dicke(m, c.n), make_target_complement(c.n, c.q0),
                                      make_dicke(m, c.n - 1), make_ghz_like(m, 0.8)};
        states.push_back(random_state(m, rng));
        PureState flipped = make_target(c.n, c.q0);
        apply_x(flipped, 0);
        states.push_back(flipped);
        const int trials = c.n == 3 ? 100000 : 20000;
        for (const PureState &psi : states) {
            const double expected = omega.expectation(psi);
            const double observed = acceptance_rate(psi, {c.n, c.q0, c.p}, trials, rng);
            CHECK(within_sigma(observed, expected, trials, 4.0));
        }
    }

    // Reference points.
    RngStream rng(3);
    const int trials = 100000;
    const double g = acceptance_rate(make_ghz(6), {3, 0.33, 0.0}, trials, rng);
    CHECK(within_sigma(g, lambda_map(3, 0.33).lambda0, trials, 3.0));
    const StrategyOperator omega = assemble_strategy_decomposed(3, 0.33, 0.0).total();
    const double d = acceptance_rate(make_dicke(6, 3), {3, 0.33, 0.0}, trials, rng);
    CHECK(within_sigma(d, omega.expectation(make_dicke(6, 3)), trials, 3.0));
}

TEST_CASE("mixed copies") {
    const int n = 3;
    const double q0 = 0.33;
    RngStream rng(21);
    const DensityOperator rho = KrausChannel::coherent_mix(0.4, n, q0).apply(
        DensityOperator::from_pure(make_target(n, q0)));
    const StrategyOperator omega = assemble_strategy_decomposed(n, q0, 0.0).total();
    const double expected = omega.expectation(rho);
    int ok = 0;
    const int trials = 8000;
    for (int i = 0; i < trials; ++i) {
        ok += verify_copy(rho, {n, q0, 0.0}, rng).accepted;
    }
    CHECK(within_sigma(ok / double(trials), expected, trials, 4.0));

    const DensityOperator dep = KrausChannel::depolarize(0.1).apply(DensityOperator::from_pure(make_target(n, q0)));
    ok = 0;
    for (int i = 0; i < trials; ++i) {
        ok += verify_copy(dep, {n, q0, 0.0}, rng).accepted;
    }
    CHECK(within_sigma(ok / double(trials), omega.expectation(dep), trials, 4.0));
}

TEST_CASE("copy verdict records") {
    const int n = 4;
    RngStream rng(5);
    std::set<Branch> seen;
    for (int i = 0; i < 3000; ++i) {
        const CopyVerdict v = verify_copy(random_state(2 * n, rng), {n, 0.4, 0.3}, rng);
        seen.insert(v.branch);
        REQUIRE(v.subset.size() == static_cast<std::size_t>(n));
        CHECK(std::is_sorted(v.subset.begin(), v.subset.end()));
        CHECK(v.subset.front() >= 1);
        CHECK(v.subset.back() <= 2 * n);
        const int w = std::accumulate(v.z_outcomes.begin(), v.z_outcomes.end(), 0);
        std::vector<int> rest;
        if (v.branch == Branch::Dicke) {
            REQUIRE(v.dicke.has_value());
            CHECK_FALSE(v.ghz.has_value());
            CHECK(v.dicke->k == n - w);
            rest = v.dicke->qubits;
            CHECK(v.dicke->k1 != v.dicke->k2);
            CHECK(std::find(rest.begin(), rest.end(), v.dicke->k1) != rest.end());
            CHECK(std::find(rest.begin(), rest.end(), v.dicke->k2) != rest.end());
            const std::set<std::string> bases{"Z", "X", "none"};
            CHECK(bases.count(v.dicke->pair_basis) == 1);
            if (v.dicke->pair_basis == "none") {
                CHECK_FALSE(v.accepted);
            }
        } else {
            REQUIRE(v.ghz.has_value());
            CHECK((v.branch == Branch::GhzLike ? w == 0 : w == n));
            rest = v.ghz->qubits;
            if (v.ghz->a == 1) {
                CHECK(v.ghz->k >= 1);
                CHECK(std::accumulate(v.ghz->r.begin(), v.ghz->r.end(), 0) % 2 == 0);
                CHECK(v.accepted == (v.ghz->final_outcome == 0));
            } else {
                const bool agree = std::all_of(v.ghz->o.begin(), v.ghz->o.end(), [&](int o) { return o == v.ghz->o[0]; });
                CHECK(v.accepted == agree);
            }
        }
        std::vector<int> all = v.subset;
        all.insert(all.end(), rest.begin(), rest.end());
        std::sort(all.begin(), all.end());
        for (int q = 0; q < 2 * n; ++q) {
            CHECK(all[q] == q + 1);
        }
    }
    CHECK(seen.size() == 3);
}

TEST_CASE("subset selection is uniform") {
    const int n = 3;
    RngStream rng(77);
    std::map<std::vector<int>, int> hist;
    const int trials = 40000;
    for (int i = 0; i < trials; ++i) {
        ++hist[verify_copy(make_target(n, 0.33), {n, 0.33, 0.0}, rng).subset];
    }
    CHECK(hist.size() == 20);
    for (const auto &[subset, count] : hist) {
        CHECK(within_sigma(count / double(trials), 1 / 20.0, trials, 4.5));
    }
}

TEST_CASE("sub-protocols in isolation") {
    RngStream rng(9);
    // GHZ-like on |0..0>: the Z test always accepts.
    PureState zeros = PureState::basis(3, 0);
    GhzLikeRecord rec;
    CHECK(run_ghz_like(zeros, {0, 1, 2}, 1.0 - 1e-300, 0.9, false, rng, &rec));
    CHECK(rec.a == 0);
    // Flipped GHZ-like accepts sqrt(l1)|0..0> + sqrt(l0)|1..1>.
    for (int i = 0; i < 1000; ++i) {
        PureState psi = make_ghz_like(4, 0.3);
        REQUIRE(run_ghz_like(psi, {0, 1, 2, 3}, 0.2, 0.7, true, rng));
    }
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i < 1000; ++i) {
            PureState psi = make_dicke(4, k);
            DickeRecord d;
            REQUIRE(run_dicke(psi, {0, 1, 2, 3}, k, rng, &d));
            CHECK(d.k == k);
        }
    }
}

TEST_CASE("batches") {
    const int n = 3;
    const double q0 = 0.33;
    RngStream rng(31);
    const VerificationPlan plan = VerificationPlan::make(n, q0, 0.1, 0.01);
    CHECK(plan.copies == 283);

    const SessionResult ideal = verify_batch(noisy_target_source(n, q0, KrausChannel::identity()), plan, rng);
    CHECK(ideal.accepted);
    CHECK(ideal.copies_checked == 283);
    CHECK(ideal.verdicts.size() == 283);

    VerificationPlan empty = plan;
    empty.copies = 0;
    const SessionResult vacuous = verify_batch(fixed_source(make_ghz(6), 0), empty, rng);
    CHECK(vacuous.accepted);
    CHECK(vacuous.copies_checked == 0);

    CHECK_THROWS_AS(verify_batch(fixed_source(make_target(n, q0), 10), plan, rng), SourceExhausted);

    // Session verdict is the conjunction of the copy verdicts.
    VerificationPlan small = plan;
    small.copies = 8;
    for (int i = 0; i < 200; ++i) {
        const SessionResult s = verify_batch(fixed_source(make_ghz(6), 8), small, rng);
        const bool all = std::all_of(s.verdicts.begin(), s.verdicts.end(), [](const CopyVerdict &v) { return v.accepted; });
        CHECK(s.accepted == all);
        CHECK(s.verdicts.size() == 8);
        for (std::size_t c = 0; c < s.verdicts.size(); ++c) {
            CHECK(s.verdicts[c].copy == c);
        }
    }
    const SessionResult early = verify_batch(fixed_source(PureState::basis(6, 0b000111), 8), small, rng, true);
    CHECK_FALSE(early.accepted);
    CHECK(early.copies_checked < 8);
}

TEST_CASE("far sources are rejected") {
    const int n = 3;
    const double q0 = 0.33;
    RngStream rng(41);
    const VerificationPlan plan = VerificationPlan::make(n, q0, 0.1, 0.01);
    const CopySource noisy = noisy_target_source(n, q0, KrausChannel::coherent_mix(0.1, n, q0));
    int rejected = 0;
    for (int i = 0; i < 200; ++i) {
        rejected += !verify_batch(noisy, plan, rng, true, false).accepted;
    }
    CHECK(rejected / 200.0 >= 0.99);

    // Monte-Carlo acceptance of coherent_mix(0.67) against (1 - nu eps)^M.
    const double nu = analytic_spectrum(n, q0, 0.0).nu;
    const double bound = failure_bound(nu, 0.67, 10);
    VerificationPlan ten = plan;
    ten.copies = 10;
    const CopySource far = noisy_target_source(n, q0, KrausChannel::coherent_mix(0.67, n, q0));
    int accepted = 0;
    const int sessions = 10000;
    for (int i = 0; i < sessions; ++i) {
        accepted += verify_batch(far, ten, rng, true, false).accepted;
    }
    const double rate = accepted / double(sessions);
    CHECK(rate < bound);
    // Independent prediction: per-copy acceptance is q0' + (1 - q0') Lambda_minus with q0' = 0.33.
    const double per_copy = 0.33 + 0.67 * analytic_spectrum(n, q0, 0.0).Lambda_minus;
    CHECK(within_sigma(rate, std::pow(per_copy, 10), sessions, 4.0));
}

TEST_CASE("transcript serialization") {
    const int n = 3;
    RngStream rng(51);
    VerificationPlan plan = VerificationPlan::make(n, 0.33, 0.5, 0.2);
    plan.copies = 50;
    const SessionResult s = verify_batch(noisy_target_source(n, 0.33, KrausChannel::depolarize(0.2)), plan, rng);
    std::ostringstream out;
    write_transcript(out, s, 4);
    std::istringstream in(out.str());
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        const nlohmann::json j = nlohmann::json::parse(line);
        for (const char *key : {"session", "copy", "subset", "z_outcomes", "branch", "sub", "accepted"}) {
            CHECK(j.contains(key));
        }
        CHECK(j["session"] == 4);
        CHECK(j["copy"] == count);
        CHECK(j["subset"].size() == static_cast<std::size_t>(n));
        const std::string branch = j["branch"];
        const std::string proto = j["sub"]["protocol"];
        CHECK(proto == (branch == "dicke" ? "dicke" : "ghz_like"));
        if (proto == "dicke") {
            for (const char *key : {"k", "k1", "k2", "qubits", "o", "pair_basis"}) {
                CHECK(j["sub"].contains(key));
            }
        } else if (j["sub"]["a"] == 1) {
            for (const char *key : {"k", "r", "s", "outcome"}) {
                CHECK(j["sub"].contains(key));
            }
        }
        CHECK(j["accepted"] == s.verdicts[count].accepted);
        ++count;
    }
    CHECK(count == 50);
}

TEST_CASE("robust protocol") {
    const int n = 3;
    const double q0 = 0.33;
    const sensing::Scenario sc = sensing::scenario_from_angles(n, q0, kPi / 2, -kPi / 3);
    VerificationPlan plan = VerificationPlan::make(n, q0, 0.5, 0.1);
    RngStream rng(61);

    SUBCASE("identity noise behaves like plain sensing") {
        const RobustResult r = run_robust_protocol(sc, plan, KrausChannel::identity(), 4000, rng);
        CHECK(r.rounds_accepted == 4000);
        CHECK(r.restarts == 0);
        CHECK(r.copies_consumed == 4000 * (plan.copies + 1));
        REQUIRE(r.estimate.has_value());
        const sensing::Probs p = sensing::analytic_probs(n, q0, kPi / 2, -kPi / 3);
        for (int j = 0; j < 4; ++j) {
            CHECK(within_sigma(r.counts[j] / 4000.0, p[j], 4000, 4.0));
        }
        CHECK(std::abs(r.estimate->theta_plus - kPi / 2) < 0.15);
        CHECK(std::abs(r.estimate->theta_minus_abs - kPi / 3) < 0.3);
    }
    SUBCASE("far noise restarts before any sensing round") {
        RobustOptions opt;
        opt.restart_cap = 300;
        const RobustResult r = run_robust_protocol(sc, VerificationPlan::make(n, q0, 0.1, 0.01),
                                                   KrausChannel::coherent_mix(0.67, n, q0), 5, rng, opt);
        CHECK(r.cap_exhausted);
        CHECK(r.restarts == 300);
        CHECK(r.rounds_accepted == 0);
        CHECK_FALSE(r.estimate.has_value());
        CHECK_FALSE(r.diagnostic.empty());
    }
    SUBCASE("zero rounds") {
        const RobustResult r = run_robust_protocol(sc, plan, KrausChannel::identity(), 0, rng);
        CHECK(r.rounds_accepted == 0);
        CHECK(r.copies_consumed == 0);
        CHECK_FALSE(r.estimate.has_value());
        CHECK_FALSE(r.ghz_collapse);
    }
    SUBCASE("GHZ collapse is reported") {
        // Almost all weight on GHZ: a handful of rounds never leave the GHZ outcomes.
        const double qg = 0.99999;
        const sensing::Scenario g = sensing::scenario_from_angles(n, qg, kPi / 2, -kPi / 3);
        VerificationPlan gp{n, qg, 0.0, 1.0, 0.5, 3};
        const RobustResult r = run_robust_protocol(g, gp, KrausChannel::identity(), 20, rng);
        CHECK(r.rounds_accepted == 20);
        CHECK(r.counts[2] + r.counts[3] == 0);
        CHECK(r.ghz_collapse);
        CHECK_FALSE(r.estimate.has_value());
    }
    CHECK_THROWS(run_robust_protocol(sc, VerificationPlan::make(4, q0, 0.5, 0.1), KrausChannel::identity(), 1, rng));
}

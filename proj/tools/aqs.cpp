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

// Command-line driver: sensing runs, verification, optimization sweeps and
// the robust verify-then-sense loop.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aqs/channel.hpp"
#include "aqs/complexity.hpp"
#include "aqs/protocol.hpp"
#include "aqs/qopt.hpp"
#include "aqs/robust.hpp"
#include "aqs/sensing.hpp"
#include "aqs/spectrum.hpp"
#include "aqs/strategies.hpp"
#include "aqs/transcript.hpp"

namespace {

using nlohmann::json;
using namespace aqs;

enum Exit : int { kOk = 0, kUsage = 1, kNumericMismatch = 2, kRejected = 3, kRestartCap = 4 };

constexpr double kResidualLimit = 1e-9;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void emit(const json &j, const std::string &out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file " + out_path);
    }
    f << text;
}

json probs_json(const sensing::Probs &p) { return json::array({p[0], p[1], p[2], p[3]}); }

// ---------------------------------------------------------------- sense

struct ScenarioArgs {
    int n = 3;
    double q0 = 0.33;
    double omega_a = 0.0;
    double omega_b = 0.0;
    double t = 1.0;
    int t1 = 1;
    int t2 = 2;

    void add(CLI::App *app, bool required) {
        app->add_option("--n", n, "half the number of sensors (2n qubits)")->required();
        app->add_option("--q0", q0, "GHZ weight of the initial state")->required();
        auto *a = app->add_option("--omega-a", omega_a, "field at position t1 (rad/s)");
        auto *b = app->add_option("--omega-b", omega_b, "field at position t2 (rad/s)");
        if (required) {
            a->required();
            b->required();
        }
        app->add_option("--t", t, "interaction time (s)")->capture_default_str();
        app->add_option("--t1", t1, "1-based position of omega-a")->capture_default_str();
        app->add_option("--t2", t2, "1-based position of omega-b")->capture_default_str();
    }

    sensing::Scenario scenario() const {
        sensing::Scenario s{n, q0, t1, t2, omega_a, omega_b, t};
        s.validate();
        return s;
    }
};

json scenario_json(const sensing::Scenario &s) {
    return json{{"n", s.n},           {"q0", s.q0},           {"t1", s.t1},
                {"t2", s.t2},         {"omega_a", s.omega_a}, {"omega_b", s.omega_b},
                {"t", s.t},           {"theta_plus", s.theta_plus()},
                {"theta_minus", s.theta_minus()}};
}

struct SenseArgs {
    ScenarioArgs sc;
    std::uint64_t shots = 0;
    std::optional<std::uint64_t> seed;
    bool audit = false;
    std::string out;
};

int cmd_sense(const SenseArgs &a) {
    const sensing::Scenario s = a.sc.scenario();
    if (a.shots > 0 && !a.seed) {
        throw UsageError("--seed is required when --shots > 0");
    }
    json j;
    j["command"] = "sense";
    j["scenario"] = scenario_json(s);
    j["analytic_probs"] = probs_json(sensing::analytic_probs(s.n, s.q0, s.theta_plus(), s.theta_minus()));
    j["simulated_probs"] = probs_json(sensing::simulate_probs(s));
    const sensing::SensitivityBound g = sensing::sensitivity_bounds(s.n, s.q0, s.theta_plus(), s.theta_minus());
    j["bounds"] = {{"g_plus", g.g_plus}, {"g_minus", g.g_minus}};
    j["shots"] = a.shots;
    int code = kOk;
    if (a.shots > 0) {
        j["seed"] = *a.seed;
        RngStream rng(*a.seed);
        const sensing::Counts c = sensing::sample_run(s, a.shots, rng);
        j["counts"] = {c[0], c[1], c[2], c[3]};
        try {
            const sensing::AngleEstimate e = sensing::estimate_from_counts(c, s.n, s.q0);
            j["estimate"] = {{"theta_plus", e.theta_plus}, {"theta_minus_abs", e.theta_minus_abs}};
        } catch (const sensing::GhzCollapseError &e) {
            j["estimate"] = nullptr;
            j["ghz_collapse"] = e.what();
            code = kRejected;
        }
    }
    if (a.audit) {
        const sensing::AuditReport r = sensing::anonymity_audit(s.n, s.q0, s.omega_a, s.omega_b, s.t);
        j["audit"] = {{"pairs", r.pairs}, {"max_distance", r.max_distance}, {"pass", r.pass}};
    }
    emit(j, a.out);
    return code;
}

// ---------------------------------------------------------------- qsv

struct QsvArgs {
    int n = 3;
    double q0 = 0.33;
    double p = 0.0;
    double epsilon = 0.1;
    double delta = 0.01;
    std::string noise = "none";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> copies;
    bool check_numeric = false;
    std::string transcript;
    std::string out;
};

json summary_json(const qsv::SpectralSummary &s) {
    return json{{"n", s.n},
                {"q0", s.q0},
                {"p", s.p},
                {"lambda0", s.lambda0},
                {"lambda1", s.lambda1},
                {"coefficients", {{"a", s.coeff.a}, {"b", s.coeff.b}, {"c", s.coeff.c}, {"d", s.coeff.d}}},
                {"alpha_plus", s.alpha_plus},
                {"alpha_minus", s.alpha_minus},
                {"Lambda_plus", s.Lambda_plus},
                {"Lambda_minus", s.Lambda_minus},
                {"lambda_a", s.lambda_a},
                {"lambda_bc1", s.lambda_bc1},
                {"lambda1_omega2", s.lambda1_omega2},
                {"omega3", s.omega3},
                {"lambda1_omega3", s.lambda1_omega3},
                {"beta", s.beta},
                {"nu", s.nu},
                {"branch", qsv::to_string(s.branch)},
                {"orderings",
                 {{"omega2_below_bc1", s.omega2_below_bc1},
                  {"omega2_not_above_a", s.omega2_not_above_a},
                  {"omega3_below_both", s.omega3_below_both}}}};
}

int cmd_qsv_spectrum(const QsvArgs &a) {
    const qsv::SpectralSummary s = qsv::analytic_spectrum(a.n, a.q0, a.p);
    json j;
    j["command"] = "qsv spectrum";
    j["summary"] = summary_json(s);
    int code = kOk;
    if (a.check_numeric) {
        if (a.n > 8) {
            throw UsageError("--check-numeric supports n <= 8");
        }
        const qsv::NumericCheck c = qsv::numeric_check(s);
        json entries = json::array();
        for (const auto &e : c.entries) {
            entries.push_back(
                {{"label", e.label}, {"analytic", e.analytic}, {"numeric", e.numeric}, {"residual", e.residual}});
        }
        const bool ok = c.max_residual <= kResidualLimit;
        j["numeric"] = {{"entries", entries},
                        {"max_residual", c.max_residual},
                        {"full_spectrum", c.full_spectrum},
                        {"tolerance", kResidualLimit},
                        {"pass", ok}};
        code = ok ? kOk : kNumericMismatch;
    }
    emit(j, a.out);
    return code;
}

int cmd_qsv_complexity(const QsvArgs &a) {
    const qsv::SampleComplexity sc = qsv::sample_complexity(a.n, a.q0, a.epsilon, a.delta, a.p);
    const qsv::SpectralSummary s = qsv::analytic_spectrum(a.n, a.q0, a.p);
    json j;
    j["command"] = "qsv complexity";
    j["n"] = a.n;
    j["q0"] = a.q0;
    j["p"] = a.p;
    j["epsilon"] = a.epsilon;
    j["delta"] = a.delta;
    j["copies"] = sc.copies;
    j["johnson_term"] = sc.johnson_term;
    j["ghz_term"] = sc.ghz_term;
    j["nu"] = s.nu;
    j["exact_copies"] = qsv::exact_copy_bound(s.nu, a.epsilon, a.delta);
    j["witness_bound"] = qsv::pauli_witness_bound(a.n, a.q0);
    emit(j, a.out);
    return kOk;
}

int cmd_qsv_verify(const QsvArgs &a) {
    if (!a.seed) {
        throw UsageError("--seed is required for verify");
    }
    qsv::VerificationPlan plan = qsv::VerificationPlan::make(a.n, a.q0, a.epsilon, a.delta, a.p);
    if (a.copies) {
        plan.copies = *a.copies;
    }
    const KrausChannel noise = standard_channel(a.noise, a.n, a.q0);
    RngStream rng(*a.seed);
    const bool keep = !a.transcript.empty();
    const qsv::SessionResult r = qsv::verify_batch(qsv::noisy_target_source(a.n, a.q0, noise), plan, rng, false, keep);
    std::uint64_t rejected = 0;
    for (const auto &v : r.verdicts) {
        rejected += !v.accepted;
    }
    if (keep) {
        std::ofstream f(a.transcript, std::ios::binary);
        if (!f) {
            throw UsageError("cannot open transcript file " + a.transcript);
        }
        qsv::write_transcript(f, r);
    }
    json j;
    j["command"] = "qsv verify";
    j["n"] = a.n;
    j["q0"] = a.q0;
    j["p"] = a.p;
    j["epsilon"] = a.epsilon;
    j["delta"] = a.delta;
    j["noise"] = noise.label();
    j["seed"] = *a.seed;
    j["copies"] = plan.copies;
    j["copies_checked"] = r.copies_checked;
    j["accepted"] = r.accepted;
    if (keep) {
        j["rejected_copies"] = rejected;
        j["transcript"] = a.transcript;
    }
    emit(j, a.out);
    return r.accepted ? kOk : kRejected;
}

// ---------------------------------------------------------------- opt

struct OptArgs {
    int n_min = 3;
    int n_max = 50;
    std::string examples = "A..L";
    std::string out;
    bool check_monotone = false;
};

int cmd_opt(const OptArgs &a) {
    const auto examples = qopt::parse_examples(a.examples);
    const auto rows = qopt::sweep(a.n_min, a.n_max, examples);
    if (a.out.empty()) {
        qopt::write_csv(std::cout, rows);
    } else {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) {
            throw UsageError("cannot open output file " + a.out);
        }
        qopt::write_csv(f, rows);
    }
    int flagged = 0, fallback = 0;
    for (const auto &r : rows) {
        flagged += r.report.flagged;
        fallback += r.report.fallback_scan;
    }
    std::vector<std::string> violations;
    if (a.check_monotone) {
        const std::size_t k = examples.size();
        for (std::size_t i = k; i < rows.size(); ++i) {
            const auto &prev = rows[i - k].report;
            const auto &cur = rows[i].report;
            const std::string where = std::string(1, rows[i].label) + " at n=" + std::to_string(cur.n);
            if (!(cur.q_G > prev.q_G)) {
                violations.push_back("q_G not increasing for " + where);
            }
            if (!(cur.q_H > prev.q_H)) {
                violations.push_back("q_H not increasing for " + where);
            }
            if (!(cur.H_min > prev.H_min)) {
                violations.push_back("H_min not increasing for " + where);
            }
        }
    }
    std::cerr << "rows: " << rows.size() << " (flagged " << flagged << ", fallback scans " << fallback << ")\n";
    for (const auto &v : violations) {
        std::cerr << "monotonicity: " << v << "\n";
    }
    return violations.empty() ? kOk : kNumericMismatch;
}

// ---------------------------------------------------------------- robust

struct RobustArgs {
    ScenarioArgs sc;
    double epsilon = 0.1;
    double delta = 0.01;
    double p = 0.0;
    std::uint64_t rounds = 100;
    std::string noise = "none";
    std::optional<std::uint64_t> seed;
    std::uint64_t restart_cap = 10000;
    std::string out;
};

int cmd_robust(const RobustArgs &a) {
    if (!a.seed) {
        throw UsageError("--seed is required for robust");
    }
    const sensing::Scenario s = a.sc.scenario();
    const qsv::VerificationPlan plan = qsv::VerificationPlan::make(s.n, s.q0, a.epsilon, a.delta, a.p);
    const KrausChannel noise = standard_channel(a.noise, s.n, s.q0);
    RngStream rng(*a.seed);
    qsv::RobustOptions opt;
    opt.restart_cap = a.restart_cap;
    const qsv::RobustResult r = qsv::run_robust_protocol(s, plan, noise, a.rounds, rng, opt);
    json j;
    j["command"] = "robust";
    j["scenario"] = scenario_json(s);
    j["noise"] = noise.label();
    j["seed"] = *a.seed;
    j["copies_per_round"] = plan.copies;
    j["rounds_requested"] = r.rounds_requested;
    j["rounds_accepted"] = r.rounds_accepted;
    j["restarts"] = r.restarts;
    j["copies_consumed"] = r.copies_consumed;
    j["counts"] = {r.counts[0], r.counts[1], r.counts[2], r.counts[3]};
    if (r.estimate) {
        j["estimate"] = {{"theta_plus", r.estimate->theta_plus}, {"theta_minus_abs", r.estimate->theta_minus_abs}};
    } else {
        j["estimate"] = nullptr;
    }
    j["ghz_collapse"] = r.ghz_collapse;
    j["cap_exhausted"] = r.cap_exhausted;
    if (!r.diagnostic.empty()) {
        j["diagnostic"] = r.diagnostic;
    }
    emit(j, a.out);
    if (r.cap_exhausted) {
        std::cerr << r.diagnostic << "\n";
        return kRestartCap;
    }
    return r.ghz_collapse ? kRejected : kOk;
}

// ---------------------------------------------------------------- config

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/**
 * Expands --config FILE into extra "--key value" arguments. Keys mirror the
 * long flag names; options already given on the command line are skipped.
 * "key = true" adds a bare flag, "key = false" adds nothing.
 */
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::vector<std::string> out;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw UsageError("--config needs a file name");
            }
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
        }
    }
    if (path.empty()) {
        return out;
    }
    std::ifstream f(path);
    if (!f) {
        throw UsageError("cannot read config file " + path);
    }
    auto given = [&](const std::string &flag) {
        for (const auto &a : out) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                return true;
            }
        }
        return false;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) == 0) {
            key = key.substr(2);
        }
        const std::string flag = "--" + key;
        if (key.empty() || given(flag)) {
            continue;
        }
        if (value == "true") {
            out.push_back(flag);
        } else if (value != "false") {
            out.push_back(flag);
            out.push_back(value);
        }
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Anonymous quantum sensing with verified resource states"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "expanded help");
    app.add_option("--config", "key=value file mirroring the long flags (command-line flags win)");

    SenseArgs sense;
    auto *sense_cmd = app.add_subcommand("sense", "run the sensing protocol on the ideal state");
    sense.sc.add(sense_cmd, true);
    sense_cmd->add_option("--shots", sense.shots, "protocol repetitions to sample")->capture_default_str();
    sense_cmd->add_option("--seed", sense.seed, "RNG seed (required with --shots)");
    sense_cmd->add_flag("--audit", sense.audit, "check the outcome law under every placement of the fields");
    sense_cmd->add_option("--out", sense.out, "write JSON here instead of stdout");

    QsvArgs qa;
    auto *qsv_cmd = app.add_subcommand("qsv", "verification strategy, sessions and sample complexity");
    qsv_cmd->require_subcommand(1);
    auto common = [&](CLI::App *c) {
        c->add_option("--n", qa.n, "half the number of qubits")->required();
        c->add_option("--q0", qa.q0, "GHZ weight of the target")->required();
        c->add_option("--p", qa.p, "Z-test probability of the GHZ-like sub-protocol")->capture_default_str();
        c->add_option("--out", qa.out, "write JSON here instead of stdout");
    };
    auto *spectrum_cmd = qsv_cmd->add_subcommand("spectrum", "closed-form spectral summary");
    common(spectrum_cmd);
    spectrum_cmd->add_flag("--check-numeric", qa.check_numeric, "compare with numeric diagonalization (n <= 8)");
    auto *complexity_cmd = qsv_cmd->add_subcommand("complexity", "copies needed for (epsilon, delta)");
    common(complexity_cmd);
    complexity_cmd->add_option("--epsilon", qa.epsilon)->capture_default_str();
    complexity_cmd->add_option("--delta", qa.delta)->capture_default_str();
    auto *verify_cmd = qsv_cmd->add_subcommand("verify", "run one verification session");
    common(verify_cmd);
    verify_cmd->add_option("--epsilon", qa.epsilon)->capture_default_str();
    verify_cmd->add_option("--delta", qa.delta)->capture_default_str();
    verify_cmd->add_option("--noise", qa.noise, "none | dephase:G | depolarize:Q | coherent_mix:E")->capture_default_str();
    verify_cmd->add_option("--seed", qa.seed, "RNG seed")->required();
    verify_cmd->add_option("--copies", qa.copies, "override the number of copies");
    verify_cmd->add_option("--transcript", qa.transcript, "write per-copy JSON lines here");

    OptArgs oa;
    auto *opt_cmd = app.add_subcommand("opt", "optimize q0 over a range of n and angle examples");
    opt_cmd->add_option("--n-min", oa.n_min)->capture_default_str();
    opt_cmd->add_option("--n-max", oa.n_max)->capture_default_str();
    opt_cmd->add_option("--examples", oa.examples, "labels, e.g. A..L, A-C or A,C,K")->capture_default_str();
    opt_cmd->add_option("--out", oa.out, "CSV path (stdout if omitted)");
    opt_cmd->add_flag("--check-monotone", oa.check_monotone, "exit 2 unless q_G, q_H and H_min increase with n");

    RobustArgs ra;
    auto *robust_cmd = app.add_subcommand("robust", "verify-then-sense loop with a noisy source");
    ra.sc.add(robust_cmd, true);
    robust_cmd->add_option("--epsilon", ra.epsilon)->capture_default_str();
    robust_cmd->add_option("--delta", ra.delta)->capture_default_str();
    robust_cmd->add_option("--p", ra.p)->capture_default_str();
    robust_cmd->add_option("--rounds", ra.rounds, "accepted sensing rounds to collect")->capture_default_str();
    robust_cmd->add_option("--noise", ra.noise, "none | dephase:G | depolarize:Q | coherent_mix:E")->capture_default_str();
    robust_cmd->add_option("--seed", ra.seed, "RNG seed")->required();
    robust_cmd->add_option("--restart-cap", ra.restart_cap)->capture_default_str();
    robust_cmd->add_option("--out", ra.out, "write JSON here instead of stdout");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*sense_cmd) {
            return cmd_sense(sense);
        }
        if (*spectrum_cmd) {
            return cmd_qsv_spectrum(qa);
        }
        if (*complexity_cmd) {
            return cmd_qsv_complexity(qa);
        }
        if (*verify_cmd) {
            return cmd_qsv_verify(qa);
        }
        if (*opt_cmd) {
            return cmd_opt(oa);
        }
        if (*robust_cmd) {
            return cmd_robust(ra);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

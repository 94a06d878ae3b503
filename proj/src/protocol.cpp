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

#include "aqs/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aqs/complexity.hpp"
#include "aqs/measure.hpp"
#include "aqs/strategies.hpp"

namespace aqs::qsv {

namespace {

int bit(RngStream &rng) { return static_cast<int>(rng.below(2)); }

/// S^r |+> with outcome-o sign: (|0> + (-1)^o i^r |1>) / sqrt(2).
Eigen::Vector2cd phase_basis(int r, int o) {
    const cplx phase = (o ? -1.0 : 1.0) * (r ? cplx(0.0, 1.0) : cplx(1.0, 0.0));
    return Eigen::Vector2cd(1.0, phase) / std::sqrt(2.0);
}

std::vector<int> labels(const std::vector<int> &qubits) {
    std::vector<int> out;
    for (int q : qubits) {
        out.push_back(q + 1);
    }
    return out;
}

} // namespace

std::string to_string(Branch b) {
    switch (b) {
    case Branch::GhzLike:
        return "ghz_like";
    case Branch::Dicke:
        return "dicke";
    case Branch::GhzLikeFlipped:
        return "ghz_like_flipped";
    }
    return "unknown";
}

bool run_ghz_like(PureState &psi, const std::vector<int> &qubits, double p, double lambda0, bool flipped,
                  RngStream &rng, GhzLikeRecord *record) {
    const int n = static_cast<int>(qubits.size());
    if (flipped) {
        // Measuring X rho X in basis B is measuring rho in X B X.
        for (int q : qubits) {
            apply_x(psi, q);
        }
    }
    GhzLikeRecord rec;
    rec.qubits = labels(qubits);
    rec.o.assign(n, 0);
    bool accept;
    if (rng.uniform() < p) {
        rec.a = 0;
        for (int i = 0; i < n; ++i) {
            rec.o[i] = measure_z(psi, qubits[i], rng);
        }
        accept = std::all_of(rec.o.begin(), rec.o.end(), [&](int o) { return o == rec.o[0]; });
    } else {
        rec.a = 1;
        rec.k = static_cast<int>(rng.below(n));
        rec.r.assign(n, 0);
        int rk = 0, ok = 0, rsum = 0;
        for (int i = 0; i < n; ++i) {
            if (i == rec.k) {
                continue;
            }
            rec.r[i] = bit(rng);
            rec.o[i] = measure_qubit(psi, qubits[i], phase_basis(rec.r[i], 0), rng);
            rk ^= rec.r[i];
            ok ^= rec.o[i];
            rsum += rec.r[i];
        }
        rec.r[rec.k] = rk;
        rec.o[rec.k] = ok;
        rsum += rk;
        if (rsum % 2 != 0) {
            throw std::logic_error("GHZ-like protocol: sum of r_i is odd");
        }
        rec.s = (ok + rsum / 2) % 2;
        const cplx rel = (rec.s ? -1.0 : 1.0) * (rk ? cplx(0.0, 1.0) : cplx(1.0, 0.0));
        Eigen::Vector2cd v(std::sqrt(lambda0), rel * std::sqrt(1.0 - lambda0));
        v.normalize();
        rec.final_outcome = measure_qubit(psi, qubits[rec.k], v, rng);
        accept = rec.final_outcome == 0;
        rec.k += 1;
    }
    if (record) {
        *record = std::move(rec);
    }
    return accept;
}

bool run_dicke(PureState &psi, const std::vector<int> &qubits, int k, RngStream &rng, DickeRecord *record) {
    const int n = static_cast<int>(qubits.size());
    DickeRecord rec;
    rec.k = k;
    rec.qubits = labels(qubits);
    rec.o.assign(n, -1);
    std::uint64_t pick = rng.below(symcomb::binom(n, 2));
    int i1 = 0, i2 = 1;
    for (int a = 0, idx = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b, ++idx) {
            if (static_cast<std::uint64_t>(idx) == pick) {
                i1 = a;
                i2 = b;
            }
        }
    }
    rec.k1 = qubits[i1] + 1;
    rec.k2 = qubits[i2] + 1;
    int s = 0;
    for (int i = 0; i < n; ++i) {
        if (i != i1 && i != i2) {
            rec.o[i] = measure_z(psi, qubits[i], rng);
            s += rec.o[i];
        }
    }
    bool accept = false;
    if (s == k || s == k - 2) {
        rec.pair_basis = "Z";
        rec.o[i1] = measure_z(psi, qubits[i1], rng);
        rec.o[i2] = measure_z(psi, qubits[i2], rng);
        accept = s + rec.o[i1] + rec.o[i2] == k;
    } else if (s == k - 1) {
        rec.pair_basis = "X";
        rec.o[i1] = measure_qubit(psi, qubits[i1], phase_basis(0, 0), rng);
        rec.o[i2] = measure_qubit(psi, qubits[i2], phase_basis(0, 0), rng);
        accept = rec.o[i1] == rec.o[i2];
    } else {
        rec.pair_basis = "none";
    }
    if (record) {
        *record = std::move(rec);
    }
    return accept;
}

CopyVerdict verify_copy(const PureState &copy, const ProtocolParams &params, RngStream &rng) {
    const int n = params.n;
    if (copy.qubits() != 2 * n) {
        throw std::invalid_argument("verify_copy: copy must have 2n qubits");
    }
    const double lambda0 = lambda_map(n, params.q0).lambda0;
    PureState psi = copy;

    std::vector<int> order(2 * n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < n; ++i) {
        const int j = i + static_cast<int>(rng.below(2 * n - i));
        std::swap(order[i], order[j]);
    }
    std::vector<int> subset(order.begin(), order.begin() + n);
    std::vector<int> rest(order.begin() + n, order.end());
    std::sort(subset.begin(), subset.end());
    std::sort(rest.begin(), rest.end());

    CopyVerdict v;
    v.subset = labels(subset);
    int w = 0;
    for (int q : subset) {
        const int o = measure_z(psi, q, rng);
        v.z_outcomes.push_back(o);
        w += o;
    }
    if (w == 0 || w == n) {
        v.branch = w == 0 ? Branch::GhzLike : Branch::GhzLikeFlipped;
        GhzLikeRecord rec;
        v.accepted = run_ghz_like(psi, rest, params.p, lambda0, w == n, rng, &rec);
        v.ghz = std::move(rec);
    } else {
        v.branch = Branch::Dicke;
        DickeRecord rec;
        v.accepted = run_dicke(psi, rest, n - w, rng, &rec);
        v.dicke = std::move(rec);
    }
    return v;
}

CopyVerdict verify_copy(const DensityOperator &copy, const ProtocolParams &params, RngStream &rng) {
    std::vector<double> weights;
    std::vector<PureState> states;
    copy.spectral(weights, states);
    return verify_copy(states[sample_discrete(weights, rng)], params, rng);
}

VerificationPlan VerificationPlan::make(int n, double q0, double epsilon, double delta, double p) {
    return VerificationPlan{n, q0, p, epsilon, delta, sample_complexity(n, q0, epsilon, delta, p).copies};
}

SessionResult verify_batch(const CopySource &source, const VerificationPlan &plan, RngStream &rng,
                           bool stop_on_reject, bool keep_transcript) {
    const ProtocolParams params{plan.n, plan.q0, plan.p};
    SessionResult out;
    for (std::uint64_t i = 0; i < plan.copies; ++i) {
        std::optional<PureState> copy = source(i, rng);
        if (!copy) {
            throw SourceExhausted("verify_batch: source ran out after " + std::to_string(i) + " copies");
        }
        CopyVerdict v = verify_copy(*copy, params, rng);
        v.copy = i;
        ++out.copies_checked;
        const bool ok = v.accepted;
        if (keep_transcript) {
            out.verdicts.push_back(std::move(v));
        }
        if (!ok) {
            out.accepted = false;
            if (stop_on_reject) {
                break;
            }
        }
    }
    return out;
}

CopySource noisy_target_source(int n, double q0, const KrausChannel &noise) {
    return [target = make_target(n, q0), noise](std::uint64_t, RngStream &rng) -> std::optional<PureState> {
        return noise.sample(target, rng);
    };
}

} // namespace aqs::qsv

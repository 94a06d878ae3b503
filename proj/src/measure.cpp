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

#include "aqs/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace aqs {

namespace {

void check_complete(const std::vector<CMat> &projectors, std::size_t dim) {
    if (projectors.empty()) {
        throw std::invalid_argument("projective_measure: no projectors");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    CMat sum = CMat::Zero(d, d);
    for (const auto &p : projectors) {
        if (p.rows() != d || p.cols() != d) {
            throw std::invalid_argument("projective_measure: projector has wrong shape");
        }
        sum += p;
    }
    if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("projective_measure: projectors do not sum to identity");
    }
}

} // namespace

std::vector<double> outcome_probabilities(const PureState &psi, const std::vector<CMat> &projectors) {
    check_complete(projectors, psi.dim());
    std::vector<double> probs;
    probs.reserve(projectors.size());
    for (const auto &p : projectors) {
        probs.push_back(std::max(0.0, psi.amplitudes().dot(p * psi.amplitudes()).real()));
    }
    return probs;
}

MeasureResult projective_measure(const PureState &psi, const std::vector<CMat> &projectors,
                                 RngStream &rng) {
    const std::vector<double> probs = outcome_probabilities(psi, projectors);
    const std::size_t j = sample_discrete(probs, rng);
    CVec post = projectors[j] * psi.amplitudes();
    return MeasureResult{static_cast<int>(j), PureState::normalized(psi.qubits(), std::move(post)),
                         probs[j]};
}

int measure_qubit(PureState &psi, int qubit, const Eigen::Vector2cd &b0, RngStream &rng) {
    const Eigen::Vector2cd e0 = b0.normalized();
    const Eigen::Vector2cd e1(-std::conj(e0[1]), std::conj(e0[0]));
    const int m = psi.qubits();
    const symcomb::Bits bit = symcomb::qubit_bit(m, qubit);
    CVec &amp = psi.amplitudes();

    // Amplitudes of the two outcomes, indexed by the remaining qubits.
    double p0 = 0.0;
    for (Eigen::Index x = 0; x < amp.size(); ++x) {
        if (static_cast<symcomb::Bits>(x) & bit) {
            continue;
        }
        const Eigen::Index y = x | static_cast<Eigen::Index>(bit);
        const cplx a = std::conj(e0[0]) * amp[x] + std::conj(e0[1]) * amp[y];
        p0 += std::norm(a);
    }
    const double total = amp.squaredNorm();
    const int outcome = rng.uniform() * total < p0 ? 0 : 1;
    const Eigen::Vector2cd &e = outcome == 0 ? e0 : e1;
    for (Eigen::Index x = 0; x < amp.size(); ++x) {
        if (static_cast<symcomb::Bits>(x) & bit) {
            continue;
        }
        const Eigen::Index y = x | static_cast<Eigen::Index>(bit);
        const cplx a = std::conj(e[0]) * amp[x] + std::conj(e[1]) * amp[y];
        amp[x] = e[0] * a;
        amp[y] = e[1] * a;
    }
    psi.normalize();
    return outcome;
}

int measure_z(PureState &psi, int qubit, RngStream &rng) {
    return measure_qubit(psi, qubit, Eigen::Vector2cd(1.0, 0.0), rng);
}

std::size_t sample_discrete(const std::vector<double> &weights, RngStream &rng) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw std::invalid_argument("sample_discrete: negative weight");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("sample_discrete: weights sum to zero");
    }
    double u = rng.uniform() * total;
    std::size_t last = 0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        if (weights[j] > 0.0) {
            last = j;
            if (u < weights[j]) {
                return j;
            }
            u -= weights[j];
        }
    }
    return last;
}

std::vector<std::uint64_t> sample_multinomial(const std::vector<double> &probs, std::uint64_t shots,
                                              RngStream &rng) {
    std::vector<std::uint64_t> counts(probs.size(), 0);
    double remaining_p = 0.0;
    for (double p : probs) {
        if (p < 0.0) {
            throw std::invalid_argument("sample_multinomial: negative probability");
        }
        remaining_p += p;
    }
    std::uint64_t remaining = shots;
    // Conditional-binomial chain.
    for (std::size_t j = 0; j + 1 < probs.size() && remaining > 0; ++j) {
        double p = remaining_p > 0.0 ? std::min(1.0, probs[j] / remaining_p) : 0.0;
        if (probs[j] > 0.0 && remaining_p - probs[j] <= 1e-15 * remaining_p) {
            p = 1.0;
        }
        counts[j] = rng.binomial(remaining, p);
        remaining -= counts[j];
        remaining_p -= probs[j];
    }
    if (!probs.empty()) {
        counts.back() += remaining;
    }
    return counts;
}

} // namespace aqs

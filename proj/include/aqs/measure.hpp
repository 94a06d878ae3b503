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

#include <vector>

#include <Eigen/Dense>

#include "aqs/rng.hpp"
#include "aqs/state.hpp"

namespace aqs {

struct MeasureResult {
    int outcome;
    PureState post;
    double probability;
};

/**
 * Born-rule measurement with a complete set of orthogonal projectors.
 * Throws if the projectors do not sum to the identity within 1e-10.
 */
MeasureResult projective_measure(const PureState &psi, const std::vector<CMat> &projectors,
                                 RngStream &rng);

/// Exact outcome probabilities <psi|P_j|psi>.
std::vector<double> outcome_probabilities(const PureState &psi, const std::vector<CMat> &projectors);

/**
 * Measures one qubit (0-based) in the orthonormal basis {b0, b0_perp}, where
 * b0_perp = (-conj(b0[1]), conj(b0[0])). Collapses psi in place and returns
 * the outcome bit.
 */
int measure_qubit(PureState &psi, int qubit, const Eigen::Vector2cd &b0, RngStream &rng);

/// Measures one qubit in the computational basis.
int measure_z(PureState &psi, int qubit, RngStream &rng);

/// Samples an index with probability weights[i] / sum(weights).
std::size_t sample_discrete(const std::vector<double> &weights, RngStream &rng);

/// Multinomial draw of `shots` samples over `probs`.
std::vector<std::uint64_t> sample_multinomial(const std::vector<double> &probs, std::uint64_t shots,
                                              RngStream &rng);

} // namespace aqs

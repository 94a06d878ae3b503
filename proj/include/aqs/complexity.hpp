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

namespace aqs::qsv {

struct SampleComplexity {
    std::uint64_t copies; ///< max of the two terms
    std::uint64_t johnson_term;
    std::uint64_t ghz_term;
};

/**
 * Number of copies M that guarantees rejection of epsilon-far sources with
 * probability at least 1 - delta:
 *   M = max{ceil((2n-1) ln(1/delta) / eps),
 *           ceil((q0 4^n / (2 q1 sqrt(pi n) (1-p)) + 1/(1-p)) ln(1/delta) / eps)}.
 * Natural logarithm throughout.
 */
SampleComplexity sample_complexity(int n, double q0, double epsilon, double delta, double p = 0.0);

/// ceil(ln(delta) / ln(1 - nu * epsilon)), the copy count implied by the gap itself.
std::uint64_t exact_copy_bound(double nu, double epsilon, double delta);

/// Upper bound (1 - nu * epsilon)^M on the probability of accepting a far source.
double failure_bound(double nu, double epsilon, std::uint64_t copies);

/// 2 sqrt(2 q0 q1 / C(2n,n)), a lower bound on <psi|X^n (x) I^n|psi>.
double pauli_witness_bound(int n, double q0);

/// <psi_t| X on the first n qubits |psi_t>, by state vector (n <= 8).
double pauli_witness_value(int n, double q0);

} // namespace aqs::qsv

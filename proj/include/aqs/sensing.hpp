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

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "aqs/rng.hpp"
#include "aqs/state.hpp"

namespace aqs::sensing {

/**
 * Two nonzero fields among 2n sensor qubits. Positions t1, t2 are 1-based;
 * qubit t1 sees omega_a and qubit t2 sees omega_b, with
 * 0 < omega_a < omega_b <= pi / (2 t).
 */
struct Scenario {
    int n = 3;
    double q0 = 0.33;
    int t1 = 1;
    int t2 = 2;
    double omega_a = 0.0;
    double omega_b = 0.0;
    double t = 1.0;

    double theta_plus() const { return (omega_a + omega_b) * t; }
    double theta_minus() const { return (omega_a - omega_b) * t; }
    /// Per-qubit frequencies, zero except at t1 and t2.
    std::vector<double> omegas() const;
    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// Scenario with the given angles, t = 1 and fields on qubits t1, t2.
Scenario scenario_from_angles(int n, double q0, double theta_plus, double theta_minus, int t1 = 1,
                              int t2 = 2);

using Probs = std::array<double, 4>;
using Counts = std::array<std::uint64_t, 4>;

/// Dense POVM elements E1..E4 on 2n qubits (small n only).
struct Povm {
    int n;
    std::array<CMat, 4> elements;
};
Povm build_povm(int n);

/// Born probabilities of the four POVM outcomes on a 2n-qubit pure state.
Probs povm_probs(const PureState &psi);

Probs analytic_probs(int n, double q0, double theta_plus, double theta_minus);

/// Prepares the target, evolves it, and evaluates the POVM exactly.
Probs simulate_probs(const Scenario &s);

/// Multinomial sample of `shots` protocol repetitions. Advances rng.
Counts sample_run(const Scenario &s, std::uint64_t shots, RngStream &rng);

struct AngleEstimate {
    double theta_plus;
    /// |theta_minus|; the sign is fixed by omega_a < omega_b.
    double theta_minus_abs;
};

/// Raised when theta_minus cannot be recovered because no Dicke weight remains.
class GhzCollapseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

AngleEstimate estimate_angles(double p1, double p2, double p3, int n, double q0);
/// Plug-in estimate from counts. Zero counts in outcomes 3 and 4 signal collapse.
AngleEstimate estimate_from_counts(const Counts &counts, int n, double q0);

struct SensitivityBound {
    double g_plus;
    double g_minus;
};
SensitivityBound sensitivity_bounds(int n, double q0, double theta_plus, double theta_minus);

struct AuditReport {
    int pairs;
    double max_distance;
    bool pass;
};

/// Evaluates the outcome distribution for every ordered placement (t1, t2).
AuditReport anonymity_audit(int n, double q0, double omega_a, double omega_b, double t);
/// Same with a caller-supplied measurement (used for negative controls).
AuditReport anonymity_audit(int n, double q0, double omega_a, double omega_b, double t,
                            const std::function<Probs(const PureState &)> &measure);

} // namespace aqs::sensing

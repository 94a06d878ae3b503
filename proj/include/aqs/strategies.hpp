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

#include <Eigen/Dense>

#include "aqs/strategy_operator.hpp"

namespace aqs::qsv {

/// Smallest q0 with lambda0 >= lambda1: 2 / (C(2n,n) + 2).
double q_min(int n);

struct LambdaPair {
    double lambda0;
    double lambda1;
};

/// Post-measurement GHZ-like weights after a Z outcome 0^n on n of the 2n qubits.
LambdaPair lambda_map(int n, double q0);

/**
 * Closed-form strategy of the GHZ-like verification protocol on m qubits for
 * sqrt(l0)|0^m> + sqrt(1-l0)|1^m>. Requires l0 >= 1/2; for l0 < 1/2 conjugate
 * by X on every qubit.
 */
StrategyOperator strategy_ghz_like(int m, double p, double lambda0);

/// Closed-form strategy of the Dicke verification protocol for |D_m^k>.
StrategyOperator strategy_dicke(int m, int k);

/**
 * Strategy of the GHZ-like protocol obtained by summing its measurement
 * projectors over every random choice and accepting outcome. With `flipped`
 * every measurement basis is conjugated by X on all qubits.
 */
Eigen::MatrixXd ghz_like_protocol_dense(int m, double p, double lambda0, bool flipped = false);

/// Strategy of the Dicke protocol as the average over qubit pairs (k1, k2).
Eigen::MatrixXd dicke_protocol_dense(int m, int k);

/**
 * Full strategy of the combined protocol: average over every n-subset R of
 * the Z-outcome-conditioned sub-strategies on the complement. Dense, n <= 5.
 */
Eigen::MatrixXd assemble_strategy_bruteforce(int n, double q0, double p);

/// The three mutually orthogonal parts of the combined strategy.
struct Decomposition {
    StrategyOperator omega1; ///< sectors {0, n, 2n}
    StrategyOperator omega2; ///< sectors {n-1, n+1}
    StrategyOperator omega3; ///< sectors l and 2n-l, 1 <= l <= n-2

    StrategyOperator total() const { return omega1.merged(omega2).merged(omega3); }
};

Decomposition assemble_strategy_decomposed(int n, double q0, double p);

} // namespace aqs::qsv

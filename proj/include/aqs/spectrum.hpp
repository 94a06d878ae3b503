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

#include <string>
#include <vector>

#include "aqs/eig.hpp"

namespace aqs::qsv {

/// Coefficients of the GHZ-Dicke block of Omega^(1).
struct Omega1Coefficients {
    double a; ///< on |0^2n> and |1^2n>
    double b; ///< on weight-n strings
    double c; ///< times the Johnson adjacency J(2n, n)
    double d; ///< between |0^2n>, |1^2n> and each weight-n string
};

Omega1Coefficients omega1_coefficients(int n, double q0, double p);

enum class BetaBranch { GhzLike, Johnson, Boundary };
std::string to_string(BetaBranch b);

struct SpectralSummary {
    int n;
    double q0;
    double p;
    double lambda0;
    double lambda1;
    Omega1Coefficients coeff;
    double alpha_plus;
    double alpha_minus;
    double Lambda_plus;  ///< eigenvalue of the target, 1
    double Lambda_minus; ///< eigenvalue of the in-plane complement
    double lambda_a;     ///< p + (1-p) lambda0
    double lambda_bc1;   ///< b + c * (second Johnson eigenvalue)
    double lambda1_omega2;
    std::vector<double> omega3; ///< Lambda(Omega^(3), l), l = 1..n-2
    double lambda1_omega3;
    double beta;
    double nu;
    BetaBranch branch;
    /// Ordering checks between the largest eigenvalues of the three parts.
    bool omega2_below_bc1;
    bool omega2_not_above_a;
    bool omega3_below_both;
};

/// Closed-form spectral data of the combined strategy. Throws for p = 1.
SpectralSummary analytic_spectrum(int n, double q0, double p);

/// Lambda(Omega^(3), l) for l = 1..n-2.
std::vector<double> omega3_profile(int n, double q0, double p);

/**
 * Closed-form spectrum of the Omega^(1) block (dimension C(2n,n) + 2) with
 * multiplicities expanded, descending.
 */
std::vector<double> omega1_block_spectrum(int n, double q0, double p);

struct NumericCheck {
    /// (label, analytic, numeric, |difference|)
    struct Entry {
        std::string label;
        double analytic;
        double numeric;
        double residual;
    };
    std::vector<Entry> entries;
    double max_residual = 0.0;
    bool full_spectrum = false; ///< membership checks used dense spectra
};

/**
 * Builds the decomposed operator and compares every summary entry with
 * numeric diagonalization. Small blocks are fully diagonalized (each analytic
 * eigenvalue is matched against the nearest numeric one); large blocks only
 * use the two largest eigenvalues.
 */
NumericCheck numeric_check(const SpectralSummary &s, const EigOptions &opt = {});

} // namespace aqs::qsv

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
#include <ostream>
#include <string>
#include <vector>

namespace aqs::qopt {

struct AngleExample {
    char label;
    double theta_plus;
    double theta_minus;
};

/// The twelve reference angle pairs A..L.
const std::array<AngleExample, 12> &angle_examples();

/// Parses "A..L", "A-C", "A,C,K" or a single label.
std::vector<AngleExample> parse_examples(const std::string &text);

struct GammaEta {
    double gamma;
    double eta;
};
GammaEta gamma_eta(int n, double theta_plus, double theta_minus);

struct Landmarks {
    double q_min;
    double q_beta;
    double q_G;
};
Landmarks q_landmarks(int n, double theta_plus, double theta_minus);

/// Second largest strategy eigenvalue at p = 0 as a function of q0.
double beta_p0(int n, double q0);

/// H(q0) = G_+ G_- beta(p = 0).
double objective_H(int n, double q0, double theta_plus, double theta_minus);

struct OptimumReport {
    int n;
    double theta_plus;
    double theta_minus;
    double q_min;
    double q_beta;
    double q_G;
    double q_H;
    double H_min;
    /// q_beta >= q_G: outside the regime where q_H >= q_G is expected.
    bool flagged;
    /// The coarse grid was not unimodal around its minimum.
    bool fallback_scan;
    long evaluations;
    double bracket_lo;
    double bracket_hi;
};

/**
 * Minimizes H over the whole domain [q_min, 1): a 2048-point grid, then
 * golden-section refinement of the best bracket to width 1e-8.
 */
OptimumReport minimize_H(int n, double theta_plus, double theta_minus);

struct SweepRow {
    char label;
    OptimumReport report;
};

/// One row per (n, example), n ascending, examples in the given order.
std::vector<SweepRow> sweep(int n_min, int n_max, const std::vector<AngleExample> &examples);

/// CSV with header n,label,theta_plus,theta_minus,q_min,q_beta,q_G,q_H,H_min.
void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);

} // namespace aqs::qopt

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

#include "aqs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "aqs/strategies.hpp"

namespace aqs::qsv {

namespace {

constexpr double kBoundaryTol = 1e-14;
constexpr double kOrderSlack = 1e-12;
constexpr int kMaxNumericN = 8;

double central_binom(int n) { return static_cast<double>(symcomb::binom_real(2 * n, n)); }

double nearest(const Eigen::VectorXd &values, double x) {
    double best = values[0];
    for (Eigen::Index i = 1; i < values.size(); ++i) {
        if (std::abs(values[i] - x) < std::abs(best - x)) {
            best = values[i];
        }
    }
    return best;
}

} // namespace

Omega1Coefficients omega1_coefficients(int n, double q0, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("spectrum: p must lie in [0,1)");
    }
    const LambdaPair lam = lambda_map(n, q0);
    const double c_nn = central_binom(n);
    return Omega1Coefficients{
        p + (1.0 - p) * lam.lambda0,
        (3.0 * n - 2.0) / (2.0 * (2.0 * n - 1.0)) - 2.0 * (1.0 - p) * lam.lambda0 / c_nn,
        1.0 / (2.0 * n * (2.0 * n - 1.0)),
        (1.0 - p) * std::sqrt(lam.lambda0 * lam.lambda1) / c_nn,
    };
}

std::string to_string(BetaBranch b) {
    switch (b) {
    case BetaBranch::GhzLike:
        return "ghz_like";
    case BetaBranch::Johnson:
        return "johnson";
    case BetaBranch::Boundary:
        return "boundary";
    }
    return "unknown";
}

std::vector<double> omega3_profile(int n, double q0, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("spectrum: p must lie in [0,1)");
    }
    const double l0 = lambda_map(n, q0).lambda0;
    const double c_nn = central_binom(n);
    std::vector<double> out;
    for (int l = 1; l <= n - 2; ++l) {
        const double ratio = static_cast<double>(symcomb::binom_real(2 * n - l, n)) / c_nn;
        out.push_back((1.0 - p) / n * ratio * (n * l0 - l * (2.0 * l0 - 1.0)));
    }
    return out;
}

SpectralSummary analytic_spectrum(int n, double q0, double p) {
    if (n < 3) {
        throw std::invalid_argument("analytic_spectrum: need n >= 3");
    }
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("analytic_spectrum: p must lie in [0,1)");
    }
    SpectralSummary s{};
    s.n = n;
    s.q0 = q0;
    s.p = p;
    const LambdaPair lam = lambda_map(n, q0);
    s.lambda0 = lam.lambda0;
    s.lambda1 = lam.lambda1;
    s.coeff = omega1_coefficients(n, q0, p);
    const double c_nn = central_binom(n);
    const auto [a, b, c, d] = s.coeff;
    const double two_n = 2.0 * n;

    // Two-dimensional GHZ/Dicke invariant subspace.
    const double diff = 4.0 * b + c * two_n * two_n - 4.0 * a;
    const double root = std::sqrt(diff * diff + 128.0 * d * d * c_nn);
    s.alpha_plus = (-diff + root) / (16.0 * d);
    s.alpha_minus = (-diff - root) / (16.0 * d);
    s.Lambda_plus = b + c * n * n + 2.0 * s.alpha_plus * d;
    s.Lambda_minus = b + c * n * n + 2.0 * s.alpha_minus * d;

    s.lambda_a = a;
    s.lambda_bc1 = 1.0 - 2.0 * (1.0 - p) * s.lambda0 / c_nn - 1.0 / (two_n - 1.0);
    s.lambda1_omega2 = (n + 1.0) / (2.0 * (two_n - 1.0)) +
                       (1.0 - p) * (n + 1.0) / c_nn * (1.0 - 1.0 / n - (1.0 - 2.0 / n) * s.lambda0);
    s.omega3 = omega3_profile(n, q0, p);
    s.lambda1_omega3 = (1.0 - p) * ((n - 2.0) * s.lambda0 + 1.0) / (2.0 * n);

    const double lhs = s.lambda0 * (1.0 + 2.0 / c_nn) + 1.0 / ((two_n - 1.0) * (1.0 - p));
    if (std::abs(s.lambda_a - s.lambda_bc1) <= kBoundaryTol) {
        s.branch = BetaBranch::Boundary;
        s.beta = s.lambda_a;
    } else if (1.0 <= lhs) {
        s.branch = BetaBranch::GhzLike;
        s.beta = s.lambda_a;
    } else {
        s.branch = BetaBranch::Johnson;
        s.beta = s.lambda_bc1;
    }
    // Computed directly; 1 - beta cancels catastrophically once C(2n,n) is large.
    const double nu_a = (1.0 - p) * s.lambda1;
    const double nu_bc = 2.0 * (1.0 - p) * s.lambda0 / c_nn + 1.0 / (two_n - 1.0);
    s.nu = s.branch == BetaBranch::Johnson ? nu_bc : nu_a;

    s.omega2_below_bc1 = s.lambda1_omega2 < s.lambda_bc1;
    s.omega2_not_above_a = s.lambda1_omega2 <= s.lambda_a + kOrderSlack;
    s.omega3_below_both = s.lambda1_omega3 < s.lambda_bc1 && s.lambda1_omega3 < s.lambda_a;
    return s;
}

std::vector<double> omega1_block_spectrum(int n, double q0, double p) {
    const SpectralSummary s = analytic_spectrum(n, q0, p);
    std::vector<double> out{s.Lambda_plus, s.Lambda_minus, s.lambda_a};
    const double base = 1.0 - 2.0 * (1.0 - p) * s.lambda0 / central_binom(n);
    for (int l = 1; l <= n; ++l) {
        const double value = base - static_cast<double>(l) * (2 * n + 1 - l) / (2.0 * n * (2.0 * n - 1.0));
        out.insert(out.end(), symcomb::johnson_multiplicity(2 * n, l), value);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

NumericCheck numeric_check(const SpectralSummary &s, const EigOptions &opt) {
    if (s.n > kMaxNumericN) {
        throw std::invalid_argument("numeric_check: operator blocks too large beyond n = 8");
    }
    const Decomposition dec = assemble_strategy_decomposed(s.n, s.q0, s.p);
    NumericCheck out;
    auto add = [&](const std::string &label, double analytic, double numeric) {
        const double r = std::abs(analytic - numeric);
        out.entries.push_back({label, analytic, numeric, r});
        out.max_residual = std::max(out.max_residual, r);
    };

    const auto &block1 = dec.omega1.blocks().front().matrix;
    const double beta1 = std::max(s.lambda_a, s.lambda_bc1);
    if (static_cast<std::size_t>(block1.rows()) <= opt.dense_limit) {
        out.full_spectrum = true;
        const Eigen::VectorXd ev = eig_all(Eigen::MatrixXd(block1));
        add("Lambda_plus", s.Lambda_plus, ev[0]);
        add("Lambda_minus", s.Lambda_minus, nearest(ev, s.Lambda_minus));
        add("lambda_a", s.lambda_a, nearest(ev, s.lambda_a));
        add("lambda_bc1", s.lambda_bc1, nearest(ev, s.lambda_bc1));
        add("beta_omega1", beta1, ev[1]);
        const std::vector<double> closed = omega1_block_spectrum(s.n, s.q0, s.p);
        double worst = 0.0;
        for (std::size_t i = 0; i < closed.size(); ++i) {
            worst = std::max(worst, std::abs(closed[i] - ev[static_cast<Eigen::Index>(i)]));
        }
        add("omega1_spectrum", 0.0, worst);
    } else {
        const Top2 t = eig_top2(block1, opt);
        add("Lambda_plus", s.Lambda_plus, t.first);
        add("beta_omega1", beta1, t.second);
    }

    add("lambda1_omega2", s.lambda1_omega2, dec.omega2.top2(opt).first);

    for (std::size_t l = 0; l < s.omega3.size(); ++l) {
        // Blocks are stored as (l, 2n-l) pairs in order.
        const Top2 t = eig_top2(dec.omega3.blocks()[2 * l].matrix, opt);
        add("omega3_l" + std::to_string(l + 1), s.omega3[l], t.first);
    }
    if (!s.omega3.empty()) {
        add("lambda1_omega3", s.lambda1_omega3, dec.omega3.top2(opt).first);
    }

    add("beta", s.beta, dec.total().top2(opt).second);
    return out;
}

} // namespace aqs::qsv

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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "aqs/qopt.hpp"
#include "aqs/sensing.hpp"
#include "aqs/spectrum.hpp"
#include "aqs/strategies.hpp"

using namespace aqs;
using namespace aqs::qopt;

namespace {

constexpr double kPi = std::numbers::pi;

double cbin(int n) { return static_cast<double>(symcomb::binom_real(2 * n, n)); }

// Argmin of H on an evenly spaced grid over [lo, hi).
double grid_argmin(int n, double tp, double tm, double lo, double hi, int points) {
    double best_q = lo, best_h = INFINITY;
    for (int i = 0; i < points; ++i) {
        const double q = lo + (hi - lo) * i / points;
        const double h = objective_H(n, q, tp, tm);
        if (h < best_h) {
            best_h = h;
            best_q = q;
        }
    }
    return best_q;
}

} // namespace

TEST_CASE("angle examples") {
    const auto &ex = angle_examples();
    CHECK(ex.size() == 12);
    CHECK(ex.front().label == 'A');
    CHECK(ex.front().theta_plus == doctest::Approx(kPi / 4));
    CHECK(ex.front().theta_minus == doctest::Approx(-kPi / 6));
    CHECK(ex.back().label == 'L');
    CHECK(ex.back().theta_plus == doctest::Approx(2 * kPi / 3));
    CHECK(ex.back().theta_minus == doctest::Approx(-kPi / 3));
    for (const auto &e : ex) {
        CHECK(e.theta_plus > 0);
        CHECK(e.theta_plus <= kPi);
        CHECK(e.theta_minus < 0);
        CHECK(e.theta_minus >= -kPi / 2);
    }
    CHECK(parse_examples("A..L").size() == 12);
    CHECK(parse_examples("A-C").size() == 3);
    const auto some = parse_examples("A,C,K");
    REQUIRE(some.size() == 3);
    CHECK(some[2].label == 'K');
    CHECK(parse_examples("F").front().label == 'F');
    CHECK_THROWS(parse_examples("Z"));
    CHECK_THROWS(parse_examples("C..A"));
    CHECK_THROWS(parse_examples(""));
    CHECK_THROWS(parse_examples("AB"));
}

TEST_CASE("gamma and eta") {
    const GammaEta ge = gamma_eta(3, kPi / 4, -kPi / 6);
    const double oracle_gamma =
        9 * std::pow(std::sin(kPi / 12), 2) + 12 * (1 - std::cos(kPi / 8) * std::cos(kPi / 12));
    CHECK(ge.gamma == doctest::Approx(oracle_gamma).epsilon(1e-14));
    CHECK(ge.gamma == doctest::Approx(1.894098).epsilon(1e-6));
    CHECK(ge.eta == doctest::Approx(4 * std::pow(std::sin(kPi / 8), 2)).epsilon(1e-14));
    CHECK(ge.eta == doctest::Approx(0.585786).epsilon(1e-6));
    const GammaEta zero = gamma_eta(3, 0.0, 0.0);
    CHECK(zero.gamma == 0.0);
    CHECK(zero.eta == 0.0);
    for (int n = 3; n <= 50; ++n) {
        for (const auto &e : angle_examples()) {
            const GammaEta g = gamma_eta(n, e.theta_plus, e.theta_minus);
            CHECK(g.gamma > 0);
            CHECK(g.eta >= 0);
        }
    }
}

TEST_CASE("landmarks") {
    const Landmarks lm = q_landmarks(3, kPi / 4, -kPi / 6);
    CHECK(lm.q_min == doctest::Approx(1.0 / 11).epsilon(1e-14));
    CHECK(lm.q_beta == doctest::Approx(8.0 / 38).epsilon(1e-14));
    CHECK(lm.q_G == doctest::Approx(0.327062).epsilon(1e-5));
    CHECK(q_landmarks(3, 1e-9, -0.3).q_G < 1e-8);
    for (int n = 3; n <= 50; ++n) {
        const Landmarks l = q_landmarks(n, kPi / 2, -kPi / 6);
        CHECK(l.q_min <= l.q_beta);
        CHECK(l.q_min == doctest::Approx(qsv::q_min(n)).epsilon(1e-14));
    }
}

TEST_CASE("q_G minimizes G_minus") {
    for (int n = 3; n <= 20; ++n) {
        for (const auto &e : angle_examples()) {
            const double qg = q_landmarks(n, e.theta_plus, e.theta_minus).q_G;
            auto gm = [&](double q) { return sensing::sensitivity_bounds(n, q, e.theta_plus, e.theta_minus).g_minus; };
            auto deriv = [&](double q) {
                const double h = 1e-6;
                return (gm(q + h) - gm(q - h)) / (2 * h);
            };
            CHECK(deriv(qg * 0.9) < 0);
            CHECK(deriv(std::min(qg * 1.1, 0.5 * (qg + 1))) > 0);
            CHECK(std::abs(deriv(qg)) < 1e-8 * gm(qg));
            CHECK(gm(qg) <= gm(qg * 0.999));
            CHECK(gm(qg) <= gm(qg * 1.001));
        }
    }
}

TEST_CASE("beta at p = 0") {
    CHECK(beta_p0(3, 0.33) == doctest::Approx(0.831234).epsilon(1e-6));
    CHECK(beta_p0(3, 0.10) == doctest::Approx(0.747368).epsilon(1e-6));
    CHECK_THROWS(beta_p0(3, 0.05));
    CHECK_THROWS(beta_p0(3, 1.0));
    for (int n = 3; n <= 30; ++n) {
        const double qb = q_landmarks(n, 1.0, -0.5).q_beta;
        const double c = cbin(n);
        const double den = 2 + (c - 2) * qb;
        CHECK(std::abs((1 - 1.0 / (2 * n - 1) - 2 * qb / den) - c * qb / den) < 1e-12);

        const double qm = qsv::q_min(n);
        for (int i = 0; i <= 200; ++i) {
            const double q0 = qm + (0.999 - qm) * i / 200.0;
            CHECK(std::abs(beta_p0(n, q0) - qsv::analytic_spectrum(n, q0, 0.0).beta) < 1e-12);
        }
    }
}

TEST_CASE("objective") {
    for (int n = 3; n <= 12; ++n) {
        const double qm = qsv::q_min(n);
        const double qb = q_landmarks(n, 1.0, -0.5).q_beta;
        for (const auto &e : angle_examples()) {
            for (int i = 0; i <= 100; ++i) {
                const double q0 = qm + (0.999 - qm) * i / 100.0;
                const double h = objective_H(n, q0, e.theta_plus, e.theta_minus);
                CHECK(h > 0);
                const auto g = sensing::sensitivity_bounds(n, q0, e.theta_plus, e.theta_minus);
                CHECK(h == doctest::Approx(g.g_plus * g.g_minus * beta_p0(n, q0)).epsilon(1e-14));
            }
        }
        // G_+ * beta is decreasing in q0 on both branches.
        auto gb = [&](double q) { return beta_p0(n, q) / q; };
        for (int i = 1; i < 100; ++i) {
            const double q0 = qm + (0.999 - qm) * i / 100.0;
            if (std::abs(q0 - qb) < 1e-4) {
                continue;
            }
            const double step = 1e-7 * q0;
            CHECK(gb(q0 + step) < gb(q0 - step));
        }
    }
    // Unique interior grid minimum for example A at n = 3.
    const auto &a = angle_examples().front();
    std::vector<double> h;
    const double qm = qsv::q_min(3);
    for (int i = 0; i < 1000; ++i) {
        h.push_back(objective_H(3, qm + (1 - qm) * i / 1000.0, a.theta_plus, a.theta_minus));
    }
    const auto best = std::min_element(h.begin(), h.end()) - h.begin();
    CHECK(best > 0);
    CHECK(best < 999);
    int local_minima = 0;
    for (std::size_t i = 1; i + 1 < h.size(); ++i) {
        local_minima += h[i] < h[i - 1] && h[i] < h[i + 1];
    }
    CHECK(local_minima == 1);
}

TEST_CASE("minimizer against a fine grid") {
    for (int n : {3, 4, 6}) {
        for (char label : {'A', 'F', 'K'}) {
            const AngleExample e = parse_examples(std::string(1, label)).front();
            const OptimumReport r = minimize_H(n, e.theta_plus, e.theta_minus);
            // A million points over the whole domain, then a million over the winning cell.
            const double qm = qsv::q_min(n);
            const double coarse = grid_argmin(n, e.theta_plus, e.theta_minus, qm, 1.0, 1000000);
            const double cell = (1.0 - qm) / 1000000;
            const double fine = grid_argmin(n, e.theta_plus, e.theta_minus, std::max(qm, coarse - cell),
                                            std::min(coarse + cell, 1.0 - 1e-15), 100000);
            CHECK(std::abs(r.q_H - fine) <= 1e-6);
            CHECK(r.H_min == doctest::Approx(objective_H(n, r.q_H, e.theta_plus, e.theta_minus)).epsilon(1e-15));
            CHECK(r.H_min <= objective_H(n, fine, e.theta_plus, e.theta_minus) * (1 + 1e-12));
            CHECK(r.bracket_lo <= r.q_H);
            CHECK(r.q_H <= r.bracket_hi);
            CHECK(r.evaluations > 0);
        }
    }
}

TEST_CASE("sweep properties") {
    const auto &examples = angle_examples();
    const std::vector<AngleExample> all(examples.begin(), examples.end());
    const auto rows = sweep(3, 50, all);
    REQUIRE(rows.size() == 48 * 12);
    auto row = [&](int n, std::size_t e) -> const OptimumReport & { return rows[(n - 3) * 12 + e].report; };
    for (int n = 3; n <= 50; ++n) {
        for (std::size_t e = 0; e < 12; ++e) {
            const OptimumReport &r = row(n, e);
            CHECK(r.n == n);
            CHECK(rows[(n - 3) * 12 + e].label == examples[e].label);
            CHECK(r.q_min <= r.q_beta);
            if (r.q_beta < r.q_G) {
                CHECK_FALSE(r.flagged);
                CHECK(r.q_H >= r.q_G);
            } else {
                CHECK(r.flagged);
            }
            if (n > 3) {
                CHECK(r.q_G > row(n - 1, e).q_G);
                CHECK(r.q_H > row(n - 1, e).q_H);
                CHECK(r.H_min > row(n - 1, e).H_min);
            }
        }
        // A < B < ... < F at theta_minus = -pi/6.
        for (std::size_t e = 1; e < 6; ++e) {
            CHECK(row(n, e).H_min > row(n, e - 1).H_min);
        }
        // Orderings of q_H and q_G across examples agree.
        for (std::size_t i = 0; i < 12; ++i) {
            for (std::size_t j = 0; j < 12; ++j) {
                if (row(n, i).q_G < row(n, j).q_G) {
                    CHECK(row(n, i).q_H < row(n, j).q_H);
                }
            }
        }
    }

    std::ostringstream a, b;
    write_csv(a, rows);
    write_csv(b, sweep(3, 50, all));
    CHECK(a.str() == b.str());
    std::istringstream in(a.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,label,theta_plus,theta_minus,q_min,q_beta,q_G,q_H,H_min");
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("3,A,0.785398163397,-0.523598775598,0.0909090909091,0.210526315789,", 0) == 0);
    CHECK_THROWS(sweep(2, 5, all));
    CHECK_THROWS(sweep(6, 5, all));
}

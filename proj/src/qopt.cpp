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

#include "aqs/qopt.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "aqs/sensing.hpp"
#include "aqs/symcomb.hpp"

namespace aqs::qopt {

namespace {

constexpr int kGridPoints = 2048;
constexpr int kFallbackPoints = 1 << 20;
constexpr double kBracketWidth = 1e-8;

double central_binom(int n) { return static_cast<double>(symcomb::binom_real(2 * n, n)); }

double q_min_of(int n) { return 2.0 / (central_binom(n) + 2.0); }

double q_beta_of(int n) { return 4.0 * (n - 1.0) / (central_binom(n) + 8.0 * n - 6.0); }

struct Counter {
    int n;
    double tp;
    double tm;
    long evaluations = 0;
    double operator()(double q0) {
        ++evaluations;
        return objective_H(n, q0, tp, tm);
    }
};

/// Golden-section search for a minimum inside [lo, hi].
double golden(Counter &f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > kBracketWidth) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

/// Grid over [lo, hi) and the index of its smallest value.
struct Scan {
    std::vector<double> q;
    std::vector<double> h;
    std::size_t best = 0;
};

Scan scan(Counter &f, double lo, double hi, int points) {
    Scan s;
    s.q.reserve(points);
    s.h.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double q = lo + (hi - lo) * i / points;
        s.q.push_back(q);
        s.h.push_back(f(q));
        if (s.h.back() < s.h[s.best]) {
            s.best = s.q.size() - 1;
        }
    }
    return s;
}

bool unimodal(const Scan &s) {
    for (std::size_t i = 1; i <= s.best; ++i) {
        if (s.h[i] > s.h[i - 1]) {
            return false;
        }
    }
    for (std::size_t i = s.best + 1; i < s.h.size(); ++i) {
        if (s.h[i] < s.h[i - 1]) {
            return false;
        }
    }
    return true;
}

} // namespace

const std::array<AngleExample, 12> &angle_examples() {
    constexpr double pi = std::numbers::pi;
    static const std::array<AngleExample, 12> examples{{
        {'A', pi / 4, -pi / 6},
        {'B', pi / 3, -pi / 6},
        {'C', pi / 2, -pi / 6},
        {'D', 2 * pi / 3, -pi / 6},
        {'E', 3 * pi / 4, -pi / 6},
        {'F', 5 * pi / 6, -pi / 6},
        {'G', pi / 3, -pi / 4},
        {'H', pi / 2, -pi / 4},
        {'I', 2 * pi / 3, -pi / 4},
        {'J', 3 * pi / 4, -pi / 4},
        {'K', pi / 2, -pi / 3},
        {'L', 2 * pi / 3, -pi / 3},
    }};
    return examples;
}

std::vector<AngleExample> parse_examples(const std::string &text) {
    auto lookup = [](char c) {
        for (const auto &e : angle_examples()) {
            if (e.label == c) {
                return e;
            }
        }
        throw std::invalid_argument(std::string("unknown example label '") + c + "'");
    };
    std::vector<AngleExample> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string item = text.substr(pos, end - pos);
        if (item.size() == 1) {
            out.push_back(lookup(item[0]));
        } else if ((item.size() == 4 && item.substr(1, 2) == "..") || (item.size() == 3 && item[1] == '-')) {
            const char first = item.front();
            const char last = item.back();
            if (last < first) {
                throw std::invalid_argument("example range '" + item + "' is reversed");
            }
            for (char c = first; c <= last; ++c) {
                out.push_back(lookup(c));
            }
        } else {
            throw std::invalid_argument("cannot parse example list item '" + item + "'");
        }
        pos = end + 1;
    }
    if (out.empty()) {
        throw std::invalid_argument("empty example list");
    }
    return out;
}

GammaEta gamma_eta(int n, double theta_plus, double theta_minus) {
    const double nn = n;
    const double gamma = nn * nn * std::pow(std::sin(theta_minus / 2.0), 2) +
                         2.0 * (nn * nn - nn) * (1.0 - std::cos(theta_plus / 2.0) * std::cos(theta_minus / 2.0));
    const double eta = (nn - 1.0) * (nn - 1.0) * std::pow(std::sin(theta_plus / 2.0), 2);
    return {gamma, eta};
}

Landmarks q_landmarks(int n, double theta_plus, double theta_minus) {
    if (n < 3) {
        throw std::invalid_argument("q_landmarks: need n >= 3");
    }
    const GammaEta ge = gamma_eta(n, theta_plus, theta_minus);
    if (!(ge.gamma > 0.0)) {
        throw std::invalid_argument("q_landmarks: gamma vanishes at these angles");
    }
    const double r = ge.eta / ge.gamma;
    return {q_min_of(n), q_beta_of(n), std::sqrt(r * (1.0 + r)) - r};
}

double beta_p0(int n, double q0) {
    if (n < 3) {
        throw std::invalid_argument("beta_p0: need n >= 3");
    }
    const double qm = q_min_of(n);
    if (!(q0 < 1.0) || q0 < qm * (1.0 - 1e-12)) {
        throw std::invalid_argument("beta_p0: q0 outside [q_min, 1)");
    }
    const double c = central_binom(n);
    const double den = 2.0 + (c - 2.0) * q0;
    if (q0 < q_beta_of(n)) {
        return 1.0 - 1.0 / (2.0 * n - 1.0) - 2.0 * q0 / den;
    }
    return c * q0 / den;
}

double objective_H(int n, double q0, double theta_plus, double theta_minus) {
    const sensing::SensitivityBound g = sensing::sensitivity_bounds(n, q0, theta_plus, theta_minus);
    return g.g_plus * g.g_minus * beta_p0(n, q0);
}

OptimumReport minimize_H(int n, double theta_plus, double theta_minus) {
    const Landmarks lm = q_landmarks(n, theta_plus, theta_minus);
    Counter f{n, theta_plus, theta_minus};
    OptimumReport rep{};
    rep.n = n;
    rep.theta_plus = theta_plus;
    rep.theta_minus = theta_minus;
    rep.q_min = lm.q_min;
    rep.q_beta = lm.q_beta;
    rep.q_G = lm.q_G;
    rep.flagged = lm.q_beta >= lm.q_G;

    const double lo = lm.q_min;
    const double hi = 1.0;
    Scan s = scan(f, lo, hi, kGridPoints);
    int points = kGridPoints;
    if (!unimodal(s)) {
        rep.fallback_scan = true;
        s = scan(f, lo, hi, kFallbackPoints);
        points = kFallbackPoints;
    }
    const double step = (hi - lo) / points;
    const double q_best = s.q[s.best];
    rep.bracket_lo = s.best == 0 ? lo : q_best - step;
    rep.bracket_hi = std::min(q_best + step, std::nextafter(hi, 0.0));
    rep.q_H = golden(f, rep.bracket_lo, rep.bracket_hi);
    rep.H_min = f(rep.q_H);
    if (s.h[s.best] < rep.H_min) {
        rep.q_H = q_best;
        rep.H_min = s.h[s.best];
    }
    rep.evaluations = f.evaluations;
    return rep;
}

std::vector<SweepRow> sweep(int n_min, int n_max, const std::vector<AngleExample> &examples) {
    if (n_min < 3 || n_max < n_min) {
        throw std::invalid_argument("sweep: need 3 <= n_min <= n_max");
    }
    std::vector<SweepRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        for (const auto &e : examples) {
            rows.push_back({e.label, minimize_H(n, e.theta_plus, e.theta_minus)});
        }
    }
    return rows;
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << "n,label,theta_plus,theta_minus,q_min,q_beta,q_G,q_H,H_min\n";
    char buf[512];
    for (const auto &row : rows) {
        const OptimumReport &r = row.report;
        std::snprintf(buf, sizeof buf, "%d,%c,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.n, row.label,
                      r.theta_plus, r.theta_minus, r.q_min, r.q_beta, r.q_G, r.q_H, r.H_min);
        out << buf;
    }
}

} // namespace aqs::qopt

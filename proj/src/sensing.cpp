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

#include "aqs/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aqs/measure.hpp"

namespace aqs::sensing {

namespace {

constexpr int kMaxPovmN = 5;
constexpr std::uint64_t kShotBlock = std::uint64_t{1} << 20;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

void check_n_q0(int n, double q0) {
    if (n < 3) {
        throw std::invalid_argument("sensing needs n >= 3 (at least 6 participants)");
    }
    if (!(q0 > 0.0 && q0 <= 1.0)) {
        throw std::invalid_argument("sensing needs 0 < q0 <= 1");
    }
}

} // namespace

std::vector<double> Scenario::omegas() const {
    std::vector<double> w(2 * n, 0.0);
    w[t1 - 1] = omega_a;
    w[t2 - 1] = omega_b;
    return w;
}

void Scenario::validate() const {
    if (n < 3) {
        throw std::invalid_argument("scenario needs n >= 3");
    }
    if (!(q0 > 0.0 && q0 < 1.0)) {
        throw std::invalid_argument("scenario needs 0 < q0 < 1");
    }
    if (t1 < 1 || t1 > 2 * n || t2 < 1 || t2 > 2 * n || t1 == t2) {
        throw std::invalid_argument("positions t1, t2 must be distinct and within 1.." +
                                    std::to_string(2 * n));
    }
    if (!(t > 0.0)) {
        throw std::invalid_argument("interaction time must be positive");
    }
    const double cap = std::numbers::pi / (2.0 * t);
    if (!(omega_a > 0.0 && omega_a < omega_b && omega_b <= cap * (1.0 + 1e-12))) {
        throw std::invalid_argument("frequencies must satisfy 0 < omega_a < omega_b <= pi/(2t)");
    }
}

Scenario scenario_from_angles(int n, double q0, double theta_plus, double theta_minus, int t1, int t2) {
    Scenario s;
    s.n = n;
    s.q0 = q0;
    s.t1 = t1;
    s.t2 = t2;
    s.t = 1.0;
    s.omega_a = 0.5 * (theta_plus + theta_minus);
    s.omega_b = 0.5 * (theta_plus - theta_minus);
    s.validate();
    return s;
}

Povm build_povm(int n) {
    if (n < 3) {
        throw std::invalid_argument("build_povm: need n >= 3");
    }
    if (n > kMaxPovmN) {
        throw std::invalid_argument("build_povm: dense POVM limited to n <= " + std::to_string(kMaxPovmN));
    }
    const int m = 2 * n;
    const PureState ghz = make_ghz(m);
    PureState ghz_z = ghz;
    apply_z(ghz_z, 0);
    const PureState dicke = make_dicke(m, n);
    Povm povm{n, {}};
    povm.elements[0] = ghz.amplitudes() * ghz.amplitudes().adjoint();
    povm.elements[1] = ghz_z.amplitudes() * ghz_z.amplitudes().adjoint();
    povm.elements[2] = dicke.amplitudes() * dicke.amplitudes().adjoint();
    const Eigen::Index dim = Eigen::Index{1} << m;
    povm.elements[3] = CMat::Identity(dim, dim) - povm.elements[0] - povm.elements[1] - povm.elements[2];
    return povm;
}

Probs povm_probs(const PureState &psi) {
    const int m = psi.qubits();
    if (m % 2 != 0 || m < 6) {
        throw std::invalid_argument("povm_probs: need an even register of at least 6 qubits");
    }
    const CVec &a = psi.amplitudes();
    const Eigen::Index last = a.size() - 1;
    const double p1 = 0.5 * std::norm(a[0] + a[last]);
    const double p2 = 0.5 * std::norm(a[0] - a[last]);
    cplx dicke_overlap = 0.0;
    const symcomb::WeightBasis basis(m, m / 2);
    for (symcomb::Bits x : basis) {
        dicke_overlap += a[static_cast<Eigen::Index>(x)];
    }
    const double p3 = std::norm(dicke_overlap) / static_cast<double>(basis.size());
    // Everything outside span{|0..0>, |1..1>} that is not Dicke weight.
    const double bulk = a.segment(1, last - 1).squaredNorm();
    const double p4 = std::max(0.0, bulk - p3);
    return {p1, p2, p3, p4};
}

Probs analytic_probs(int n, double q0, double theta_plus, double theta_minus) {
    check_n_q0(n, q0);
    const double q1 = 1.0 - q0;
    const double p1 = q0 * (1.0 + std::cos(theta_plus)) / 2.0;
    const double p2 = q0 * (1.0 - std::cos(theta_plus)) / 2.0;
    const double r = ((n - 1) * std::cos(theta_plus / 2.0) + n * std::cos(theta_minus / 2.0)) / (2.0 * n - 1.0);
    const double p3 = q1 * r * r;
    const double p4 = q1 * (1.0 - r * r);
    return {p1, p2, p3, p4};
}

Probs simulate_probs(const Scenario &s) {
    s.validate();
    return povm_probs(evolve_phases(make_target(s.n, s.q0), s.omegas(), s.t));
}

Counts sample_run(const Scenario &s, std::uint64_t shots, RngStream &rng) {
    const Probs p = simulate_probs(s);
    const std::vector<double> probs(p.begin(), p.end());
    const RngStream base(rng.seed(), rng.engine()());
    Counts counts{0, 0, 0, 0};
    std::uint64_t block = 0;
    for (std::uint64_t done = 0; done < shots; done += kShotBlock, ++block) {
        RngStream sub = base.substream(block);
        const auto c = sample_multinomial(probs, std::min(kShotBlock, shots - done), sub);
        for (int j = 0; j < 4; ++j) {
            counts[j] += c[j];
        }
    }
    return counts;
}

AngleEstimate estimate_angles(double p1, double p2, double p3, int n, double q0) {
    if (!(q0 > 0.0)) {
        throw std::invalid_argument("estimate_angles: q0 must be positive");
    }
    const double q1 = 1.0 - q0;
    if (q1 <= 0.0 || p3 < 0.0) {
        throw GhzCollapseError("theta_minus is unrecoverable: the state carries no Dicke component");
    }
    const double theta_plus = std::acos(clamp_unit((p1 - p2) / q0));
    const double f = (2.0 * n - 1.0) / n * std::sqrt(p3 / q1) - (n - 1.0) / n * std::cos(theta_plus / 2.0);
    return {theta_plus, 2.0 * std::acos(clamp_unit(f))};
}

AngleEstimate estimate_from_counts(const Counts &counts, int n, double q0) {
    const std::uint64_t total = counts[0] + counts[1] + counts[2] + counts[3];
    if (total == 0) {
        throw std::invalid_argument("estimate_from_counts: no shots");
    }
    if (counts[2] + counts[3] == 0) {
        throw GhzCollapseError("theta_minus is unrecoverable: no outcome left the GHZ subspace");
    }
    const double N = static_cast<double>(total);
    return estimate_angles(counts[0] / N, counts[1] / N, counts[2] / N, n, q0);
}

SensitivityBound sensitivity_bounds(int n, double q0, double theta_plus, double theta_minus) {
    if (!(q0 > 0.0 && q0 < 1.0)) {
        throw std::invalid_argument("sensitivity_bounds: need 0 < q0 < 1");
    }
    const double s2m = std::pow(std::sin(theta_minus / 2.0), 2);
    if (theta_minus == 0.0 || s2m == 0.0) {
        throw std::invalid_argument("sensitivity_bounds: theta_minus must be nonzero");
    }
    const double q1 = 1.0 - q0;
    const double k = 1.0 - 1.0 / n;
    const double s2p = std::pow(std::sin(theta_plus / 2.0), 2);
    const double cc = std::cos(theta_plus / 2.0) * std::cos(theta_minus / 2.0);
    const double g_minus = 1.0 / q1 + k * k * s2p / (q0 * q1 * s2m) + 2.0 * k * (1.0 - cc) / (q1 * s2m);
    return {1.0 / q0, g_minus};
}

AuditReport anonymity_audit(int n, double q0, double omega_a, double omega_b, double t,
                            const std::function<Probs(const PureState &)> &measure) {
    std::vector<Probs> dists;
    const PureState target = make_target(n, q0);
    for (int t1 = 1; t1 <= 2 * n; ++t1) {
        for (int t2 = 1; t2 <= 2 * n; ++t2) {
            if (t1 == t2) {
                continue;
            }
            Scenario s{n, q0, t1, t2, omega_a, omega_b, t};
            s.validate();
            dists.push_back(measure(evolve_phases(target, s.omegas(), s.t)));
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < dists.size(); ++i) {
        for (std::size_t j = i + 1; j < dists.size(); ++j) {
            for (int k = 0; k < 4; ++k) {
                worst = std::max(worst, std::abs(dists[i][k] - dists[j][k]));
            }
        }
    }
    return {static_cast<int>(dists.size()), worst, worst < 1e-12};
}

AuditReport anonymity_audit(int n, double q0, double omega_a, double omega_b, double t) {
    return anonymity_audit(n, q0, omega_a, omega_b, t, povm_probs);
}

} // namespace aqs::sensing

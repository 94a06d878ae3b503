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

#include <cmath>
#include <numbers>

#include "doctest.h"

#include "aqs/channel.hpp"
#include "aqs/eig.hpp"
#include "aqs/measure.hpp"
#include "aqs/state.hpp"

using namespace aqs;

namespace {

constexpr double kPi = std::numbers::pi;

double binom_d(int m, int k) { return static_cast<double>(symcomb::binom(m, k)); }

} // namespace

TEST_CASE("canonical states") {
    const PureState g2 = make_ghz(2);
    CHECK(std::abs(g2[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(g2[1]) == 0.0);
    CHECK(std::abs(g2[2]) == 0.0);
    CHECK(std::abs(g2[3] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(make_ghz(6).norm() - 1.0) < 1e-15);
    CHECK_THROWS(make_ghz(1));

    // <GHZ|Z^0|GHZ> on 6 qubits.
    const PureState g6 = make_ghz(6);
    const Eigen::VectorXd z0 = symcomb::sector_projector(6, 0b111111, 0);
    double e = 0.0;
    for (int x = 0; x < 64; ++x) {
        e += z0[x] * std::norm(g6[x]);
    }
    CHECK(e == doctest::Approx(0.5));

    const PureState d21 = make_dicke(2, 1);
    CHECK(std::abs(d21[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(d21[2] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(d21[0]) + std::abs(d21[3]) == 0.0);
    CHECK_THROWS(make_dicke(4, 5));

    // <D_6^3|J(6,3)|D_6^3> = 9
    const PureState d63 = make_dicke(6, 3);
    const Eigen::SparseMatrix<double> j = symcomb::johnson_adjacency(6, 3);
    Eigen::VectorXd sector(20);
    const symcomb::WeightBasis b(6, 3);
    for (std::size_t i = 0; i < 20; ++i) {
        sector[i] = d63[b.unrank(i)].real();
    }
    CHECK(sector.dot(j * sector) == doctest::Approx(9.0));
}

TEST_CASE("Dicke partial measurement leaves a smaller Dicke state") {
    const int n = 3;
    const PureState d = make_dicke(2 * n, n);
    // Project the first n qubits onto each weight-l string u.
    for (int l = 0; l <= n; ++l) {
        for (symcomb::Bits u : symcomb::WeightBasis(n, l)) {
            CVec rest = CVec::Zero(1 << n);
            for (symcomb::Bits v = 0; v < (1u << n); ++v) {
                rest[v] = d[(u << n) | v];
            }
            const PureState post = PureState::normalized(n, rest);
            CHECK(post.fidelity(make_dicke(n, n - l)) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("target state") {
    for (int n = 3; n <= 6; ++n) {
        for (double q0 : {0.05, 0.33, 0.5, 0.9}) {
            const PureState t = make_target(n, q0);
            CHECK(std::abs(t.norm() - 1.0) < 1e-12);
            CHECK(t.fidelity(make_ghz(2 * n)) == doctest::Approx(q0).epsilon(1e-13));
            CHECK(t.fidelity(make_dicke(2 * n, n)) == doctest::Approx(1.0 - q0).epsilon(1e-13));
            CHECK(std::abs(t.inner(make_target_complement(n, q0))) < 1e-12);
        }
    }
    CHECK(make_target(3, 0.33).fidelity(make_dicke(6, 3)) == doctest::Approx(0.67));
    CHECK_THROWS(make_target(2, 0.5));
    CHECK_THROWS(make_target(3, 0.0));
    CHECK_THROWS(make_target(3, 1.0));
}

TEST_CASE("phase evolution") {
    RngStream rng(11);
    const PureState psi = random_state(6, rng);
    const PureState same = evolve_phases(psi, std::vector<double>(6, 0.0), 1.0);
    CHECK((same.amplitudes() - psi.amplitudes()).norm() == 0.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> w(6);
        for (double &x : w) {
            x = 3.0 * rng.uniform();
        }
        CHECK(std::abs(evolve_phases(random_state(6, rng), w, 0.7).norm() - 1.0) < 1e-12);
    }

    // |+> under a pi rotation becomes |-> up to phase.
    const PureState plus = PureState::normalized(1, CVec::Ones(2));
    const PureState minus = PureState::normalized(1, (CVec(2) << 1.0, -1.0).finished());
    CHECK(evolve_phases(plus, {kPi}, 1.0).fidelity(minus) == doctest::Approx(1.0));

    // GHZ with pi/2 on qubits 1 and 4: <E1> = (1 + cos pi)/2 = 0.
    std::vector<double> w(6, 0.0);
    w[0] = kPi / 2;
    w[3] = kPi / 2;
    const PureState g = evolve_phases(make_ghz(6), w, 1.0);
    CHECK(g.fidelity(make_ghz(6)) < 1e-30);
    CHECK_THROWS(evolve_phases(g, {1.0}, 1.0));
}

TEST_CASE("channels are complete") {
    for (double x : {0.0, 0.1, 0.5, 1.0}) {
        CHECK(KrausChannel::dephase(x).completeness_error(1) < 1e-12);
        CHECK(KrausChannel::dephase(x).completeness_error(3) < 1e-12);
        CHECK(KrausChannel::depolarize(x).completeness_error(1) < 1e-12);
        CHECK(KrausChannel::depolarize(x).completeness_error(3) < 1e-12);
        CHECK(KrausChannel::coherent_mix(x, 3, 0.33).completeness_error(6) < 1e-12);
    }
    CHECK(KrausChannel::identity().completeness_error(2) < 1e-15);
    CHECK_THROWS(KrausChannel::dephase(1.5));
    CHECK_THROWS(KrausChannel::coherent_mix(-0.1, 3, 0.33));
}

TEST_CASE("channel actions") {
    const PureState t = make_target(3, 0.33);
    const DensityOperator rho = DensityOperator::from_pure(t);
    CHECK((KrausChannel::dephase(0.0).apply(rho).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(KrausChannel::coherent_mix(0.67, 3, 0.33).apply(rho).fidelity(t) == doctest::Approx(0.33).epsilon(1e-13));
    CHECK(KrausChannel::coherent_mix(0.1, 3, 0.33).apply(rho).fidelity(t) == doctest::Approx(0.9).epsilon(1e-13));

    // Single-qubit depolarizing sends |0><0| to diag(1 - q/2, q/2).
    const DensityOperator zero = DensityOperator::from_pure(PureState::basis(1, 0));
    const DensityOperator out = KrausChannel::depolarize(0.4).apply(zero);
    CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.8));
    CHECK(out.matrix()(1, 1).real() == doctest::Approx(0.2));

    // Trajectory average reproduces the channel (dephasing on |+>).
    const KrausChannel deph = KrausChannel::dephase(0.3);
    const PureState plus = PureState::normalized(1, CVec::Ones(2));
    RngStream rng(5);
    const int shots = 100000;
    double coherence = 0.0;
    for (int i = 0; i < shots; ++i) {
        const PureState s = deph.sample(plus, rng);
        coherence += (s[0] * std::conj(s[1])).real();
    }
    coherence /= shots;
    const double exact = deph.apply(DensityOperator::from_pure(plus)).matrix()(0, 1).real();
    CHECK(std::abs(coherence - exact) < 4.0 * 0.5 / std::sqrt(shots));

    CHECK(standard_channel("none", 3, 0.33).kind() == KrausChannel::Kind::Identity);
    CHECK(standard_channel("dephase:0.2", 3, 0.33).strength() == 0.2);
    CHECK(standard_channel("coherent_mix:0.1", 3, 0.33).kind() == KrausChannel::Kind::CoherentMix);
    CHECK_THROWS(standard_channel("bitflip:0.1", 3, 0.33));
    CHECK_THROWS(standard_channel("dephase:abc", 3, 0.33));
}

TEST_CASE("projective measurement") {
    RngStream rng(3);
    std::vector<CMat> zbasis(2, CMat::Zero(2, 2));
    zbasis[0](0, 0) = 1.0;
    zbasis[1](1, 1) = 1.0;
    const MeasureResult r = projective_measure(PureState::basis(1, 0), zbasis, rng);
    CHECK(r.outcome == 0);
    CHECK(r.probability == 1.0);

    std::vector<CMat> bad = zbasis;
    bad.pop_back();
    CHECK_THROWS(projective_measure(PureState::basis(1, 0), bad, rng));

    // Weight of the first three qubits of |D_6^3>: C(3,l)^2 / C(6,3).
    const PureState d = make_dicke(6, 3);
    std::vector<CMat> weights(4, CMat::Zero(64, 64));
    for (int x = 0; x < 64; ++x) {
        weights[symcomb::weight(static_cast<symcomb::Bits>(x) >> 3)](x, x) = 1.0;
    }
    const auto probs = outcome_probabilities(d, weights);
    for (int l = 0; l <= 3; ++l) {
        CHECK(probs[l] == doctest::Approx(binom_d(3, l) * binom_d(3, l) / 20.0).epsilon(1e-14));
    }

    // Frequencies within 4 sigma over 1e5 shots.
    const int shots = 100000;
    std::vector<int> hist(4, 0);
    for (int i = 0; i < shots; ++i) {
        ++hist[sample_discrete(probs, rng)];
    }
    for (int l = 0; l <= 3; ++l) {
        const double p = probs[l];
        CHECK(std::abs(hist[l] / double(shots) - p) <= 4.0 * std::sqrt(p * (1 - p) / shots));
    }

    // Sequential single-qubit Z measurements sample the same law.
    std::vector<int> seq(4, 0);
    for (int i = 0; i < shots / 10; ++i) {
        PureState s = d;
        int w = 0;
        for (int q = 0; q < 3; ++q) {
            w += measure_z(s, q, rng);
        }
        ++seq[w];
    }
    for (int l = 0; l <= 3; ++l) {
        const double p = probs[l];
        const int n = shots / 10;
        CHECK(std::abs(seq[l] / double(n) - p) <= 4.0 * std::sqrt(p * (1 - p) / n));
    }
}

TEST_CASE("multinomial sampling") {
    RngStream rng(7);
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    const auto c = sample_multinomial(p, 100000, rng);
    std::uint64_t total = 0;
    for (int j = 0; j < 4; ++j) {
        total += c[j];
        CHECK(std::abs(c[j] / 1e5 - p[j]) <= 4.0 * std::sqrt(p[j] * (1 - p[j]) / 1e5));
    }
    CHECK(total == 100000);
    const auto z = sample_multinomial({0.5, 0.5, 0.0, 0.0}, 1000, rng);
    CHECK(z[2] == 0);
    CHECK(z[3] == 0);
}

TEST_CASE("rng streams are reproducible") {
    RngStream a(42, 3), b(42, 3), c(42, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        differs = differs || x != c.uniform();
    }
    CHECK(differs);
    RngStream s = a.substream(1);
    RngStream t = a.substream(1);
    CHECK(s.uniform() == t.uniform());
}

TEST_CASE("eig_top2") {
    const Top2 id = eig_top2(Eigen::MatrixXd(Eigen::MatrixXd::Identity(4, 4)));
    CHECK(id.first == doctest::Approx(1.0));
    CHECK(id.second == doctest::Approx(1.0));

    const Top2 j = eig_top2(symcomb::johnson_adjacency(6, 3));
    CHECK(j.first == doctest::Approx(9.0));
    CHECK(j.second == doctest::Approx(3.0));

    const PureState d = make_dicke(6, 3);
    const Top2 proj = eig_top2(CMat(d.amplitudes() * d.amplitudes().adjoint()));
    CHECK(proj.first == doctest::Approx(1.0));
    CHECK(std::abs(proj.second) < 1e-12);

    CMat bad = CMat::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(eig_top2(bad), EigError);

    RngStream rng(99);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        CMat a(64, 64);
        for (int r = 0; r < 64; ++r) {
            for (int c = 0; c < 64; ++c) {
                a(r, c) = cplx(g(rng.engine()), g(rng.engine()));
            }
        }
        const CMat h = (a + a.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<CMat> es(h);
        const Top2 t = eig_top2(h);
        CHECK(std::abs(t.first - es.eigenvalues()[63]) < 1e-10);
        CHECK(std::abs(t.second - es.eigenvalues()[62]) < 1e-10);

        // Force the iterative path on the same matrix.
        EigOptions opt;
        opt.dense_limit = 8;
        const Top2 it = eig_top2(h, opt);
        CHECK_FALSE(it.dense);
        CHECK(std::abs(it.first - es.eigenvalues()[63]) < 1e-10);
        CHECK(std::abs(it.second - es.eigenvalues()[62]) < 1e-10);
    }

    // Iterative path on J(10,5), degenerate second eigenvalue.
    EigOptions opt;
    opt.dense_limit = 16;
    const Top2 big = eig_top2(symcomb::johnson_adjacency(10, 5), opt);
    CHECK_FALSE(big.dense);
    CHECK(std::abs(big.first - 25.0) < 1e-10);
    CHECK(std::abs(big.second - 15.0) < 1e-10);
}

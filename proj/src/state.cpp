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

#include "aqs/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aqs {

using symcomb::Bits;

namespace {

void check_qubits(int m) {
    if (m < 1 || m > kMaxDenseQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(m) + " outside 1.." +
                                    std::to_string(kMaxDenseQubits));
    }
}

Eigen::Index dim_of(int m) { return Eigen::Index{1} << m; }

} // namespace

PureState::PureState(int m, CVec amplitudes) : m_(m), amp_(std::move(amplitudes)) {
    check_qubits(m);
    if (amp_.size() != dim_of(m)) {
        throw std::invalid_argument("PureState: amplitude vector has wrong length");
    }
    if (std::abs(amp_.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("PureState: amplitudes are not normalized");
    }
}

PureState PureState::normalized(int m, CVec amplitudes) {
    const double nrm = amplitudes.norm();
    if (nrm == 0.0) {
        throw std::invalid_argument("PureState: zero vector");
    }
    amplitudes /= nrm;
    return PureState(m, std::move(amplitudes));
}

PureState PureState::basis(int m, Bits x) {
    check_qubits(m);
    CVec v = CVec::Zero(dim_of(m));
    v[static_cast<Eigen::Index>(x)] = 1.0;
    return PureState(m, std::move(v));
}

void PureState::normalize() {
    const double nrm = amp_.norm();
    if (nrm == 0.0) {
        throw std::runtime_error("PureState::normalize: zero vector");
    }
    amp_ /= nrm;
}

cplx PureState::inner(const PureState &other) const {
    if (other.m_ != m_) {
        throw std::invalid_argument("PureState::inner: qubit count mismatch");
    }
    return amp_.dot(other.amp_);
}

DensityOperator::DensityOperator(int m, CMat rho) : m_(m), rho_(std::move(rho)) {
    check_qubits(m);
    if (rho_.rows() != dim_of(m) || rho_.cols() != dim_of(m)) {
        throw std::invalid_argument("DensityOperator: matrix has wrong shape");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    }
    if (std::abs(rho_.trace().real() - 1.0) > 1e-12) {
        throw std::invalid_argument("DensityOperator: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
    }
}

DensityOperator DensityOperator::from_pure(const PureState &psi) {
    return DensityOperator(psi.qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::mixture(const std::vector<double> &weights,
                                         const std::vector<PureState> &states) {
    if (weights.size() != states.size() || states.empty()) {
        throw std::invalid_argument("DensityOperator::mixture: size mismatch");
    }
    const int m = states.front().qubits();
    CMat rho = CMat::Zero(dim_of(m), dim_of(m));
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (weights[i] < 0.0) {
            throw std::invalid_argument("DensityOperator::mixture: negative weight");
        }
        rho += weights[i] * states[i].amplitudes() * states[i].amplitudes().adjoint();
    }
    return DensityOperator(m, std::move(rho));
}

double DensityOperator::fidelity(const PureState &psi) const {
    return psi.amplitudes().dot(rho_ * psi.amplitudes()).real();
}

double DensityOperator::expectation(const CMat &op) const { return (op * rho_).trace().real(); }

void DensityOperator::spectral(std::vector<double> &weights, std::vector<PureState> &states) const {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho_);
    weights.clear();
    states.clear();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double w = es.eigenvalues()[i];
        if (w <= 0.0) {
            continue;
        }
        weights.push_back(w);
        states.push_back(PureState::normalized(m_, es.eigenvectors().col(i)));
    }
}

PureState make_ghz(int m) {
    if (m < 2) {
        throw std::invalid_argument("make_ghz: need at least 2 qubits");
    }
    return make_ghz_like(m, 0.5);
}

PureState make_ghz_like(int m, double lambda0) {
    check_qubits(m);
    if (lambda0 < 0.0 || lambda0 > 1.0) {
        throw std::invalid_argument("make_ghz_like: lambda0 outside [0,1]");
    }
    CVec v = CVec::Zero(dim_of(m));
    v[0] = std::sqrt(lambda0);
    v[dim_of(m) - 1] = std::sqrt(1.0 - lambda0);
    return PureState::normalized(m, std::move(v));
}

PureState make_dicke(int m, int k) {
    check_qubits(m);
    if (k < 0 || k > m) {
        throw std::invalid_argument("make_dicke: excitation count out of range");
    }
    const symcomb::WeightBasis basis(m, k);
    const double a = 1.0 / std::sqrt(static_cast<double>(basis.size()));
    CVec v = CVec::Zero(dim_of(m));
    for (Bits x : basis) {
        v[static_cast<Eigen::Index>(x)] = a;
    }
    return PureState::normalized(m, std::move(v));
}

namespace {

PureState ghz_dicke_combination(int n, double c_ghz, double c_dicke) {
    const int m = 2 * n;
    CVec v = c_ghz * make_ghz(m).amplitudes() + c_dicke * make_dicke(m, n).amplitudes();
    return PureState::normalized(m, std::move(v));
}

void check_target_args(int n, double q0) {
    if (n < 3) {
        throw std::invalid_argument("target state needs n >= 3");
    }
    if (!(q0 > 0.0 && q0 < 1.0)) {
        throw std::invalid_argument("target state needs 0 < q0 < 1");
    }
}

} // namespace

PureState make_target(int n, double q0) {
    check_target_args(n, q0);
    return ghz_dicke_combination(n, std::sqrt(q0), std::sqrt(1.0 - q0));
}

PureState make_target_complement(int n, double q0) {
    check_target_args(n, q0);
    return ghz_dicke_combination(n, std::sqrt(1.0 - q0), -std::sqrt(q0));
}

PureState evolve_phases(const PureState &state, const std::vector<double> &omegas, double t) {
    const int m = state.qubits();
    if (static_cast<int>(omegas.size()) != m) {
        throw std::invalid_argument("evolve_phases: need one frequency per qubit");
    }
    for (double w : omegas) {
        if (w < 0.0) {
            throw std::invalid_argument("evolve_phases: negative frequency");
        }
    }
    PureState out = state;
    CVec &amp = out.amplitudes();
    for (Eigen::Index x = 0; x < amp.size(); ++x) {
        double phase = 0.0;
        for (int q = 0; q < m; ++q) {
            const double half = 0.5 * omegas[q] * t;
            phase += (static_cast<Bits>(x) & symcomb::qubit_bit(m, q)) ? half : -half;
        }
        amp[x] *= std::polar(1.0, phase);
    }
    return out;
}

void apply_x(PureState &state, int qubit) {
    const Bits b = symcomb::qubit_bit(state.qubits(), qubit);
    CVec &amp = state.amplitudes();
    for (Eigen::Index x = 0; x < amp.size(); ++x) {
        if (static_cast<Bits>(x) & b) {
            std::swap(amp[x], amp[x ^ static_cast<Eigen::Index>(b)]);
        }
    }
}

void apply_z(PureState &state, int qubit) {
    const Bits b = symcomb::qubit_bit(state.qubits(), qubit);
    CVec &amp = state.amplitudes();
    for (Eigen::Index x = 0; x < amp.size(); ++x) {
        if (static_cast<Bits>(x) & b) {
            amp[x] = -amp[x];
        }
    }
}

void apply_x_all(PureState &state) {
    CVec &amp = state.amplitudes();
    amp.reverseInPlace();
}

void apply_1q(PureState &state, int qubit, const Eigen::Matrix2cd &u) {
    const Bits b = symcomb::qubit_bit(state.qubits(), qubit);
    CVec &amp = state.amplitudes();
    for (Eigen::Index x = 0; x < amp.size(); ++x) {
        if (static_cast<Bits>(x) & b) {
            continue;
        }
        const Eigen::Index y = x | static_cast<Eigen::Index>(b);
        const cplx a0 = amp[x];
        const cplx a1 = amp[y];
        amp[x] = u(0, 0) * a0 + u(0, 1) * a1;
        amp[y] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

PureState random_state(int m, RngStream &rng) {
    check_qubits(m);
    std::normal_distribution<double> g(0.0, 1.0);
    CVec v(dim_of(m));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = g(rng.engine());
        const double im = g(rng.engine());
        v[i] = cplx(re, im);
    }
    return PureState::normalized(m, std::move(v));
}

} // namespace aqs

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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "aqs/rng.hpp"
#include "aqs/symcomb.hpp"

namespace aqs {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Largest register handled by dense state vectors.
constexpr int kMaxDenseQubits = 20;

/// Pure state of m qubits as a dense amplitude vector (qubit 1 = MSB).
class PureState {
  public:
    PureState() = default;
    /// Throws unless `amplitudes` has length 2^m and unit norm (1e-12).
    PureState(int m, CVec amplitudes);
    /// Same as the constructor but rescales instead of checking the norm.
    static PureState normalized(int m, CVec amplitudes);
    static PureState basis(int m, symcomb::Bits x);

    int qubits() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(amp_.size()); }
    const CVec &amplitudes() const { return amp_; }
    CVec &amplitudes() { return amp_; }
    cplx operator[](std::size_t x) const { return amp_[static_cast<Eigen::Index>(x)]; }

    double norm() const { return amp_.norm(); }
    void normalize();
    /// <this|other>
    cplx inner(const PureState &other) const;
    double fidelity(const PureState &other) const { return std::norm(inner(other)); }

  private:
    int m_ = 0;
    CVec amp_;
};

/// Mixed state as a dense Hermitian matrix.
class DensityOperator {
  public:
    DensityOperator() = default;
    /// Throws if rho is not Hermitian, trace-one, PSD (tolerances 1e-12/1e-10).
    DensityOperator(int m, CMat rho);
    static DensityOperator from_pure(const PureState &psi);
    /// Convex combination sum_i w_i |psi_i><psi_i|; weights must sum to 1.
    static DensityOperator mixture(const std::vector<double> &weights,
                                   const std::vector<PureState> &states);

    int qubits() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const CMat &matrix() const { return rho_; }

    double trace() const { return rho_.trace().real(); }
    double fidelity(const PureState &psi) const;
    /// Tr[A rho] for Hermitian A.
    double expectation(const CMat &op) const;

    /// Eigen-decomposition rho = sum_i p_i |v_i><v_i| with p_i >= 0 clipped.
    void spectral(std::vector<double> &weights, std::vector<PureState> &states) const;

  private:
    int m_ = 0;
    CMat rho_;
};

PureState make_ghz(int m);
PureState make_dicke(int m, int k);
/// sqrt(l0)|0^m> + sqrt(1-l0)|1^m>
PureState make_ghz_like(int m, double lambda0);
/// sqrt(q0)|GHZ_2n> + sqrt(1-q0)|D_2n^n>
PureState make_target(int n, double q0);
/// sqrt(1-q0)|GHZ_2n> - sqrt(q0)|D_2n^n>, the in-plane complement of the target.
PureState make_target_complement(int n, double q0);

/// Applies diag(e^{-i w_i t/2}, e^{+i w_i t/2}) to every qubit i.
PureState evolve_phases(const PureState &state, const std::vector<double> &omegas, double t);

/// Pauli operators on one qubit (0-based) or the whole register.
void apply_x(PureState &state, int qubit);
void apply_z(PureState &state, int qubit);
void apply_x_all(PureState &state);
/// Applies a 2x2 matrix to one qubit (0-based).
void apply_1q(PureState &state, int qubit, const Eigen::Matrix2cd &u);

/// Uniformly random pure state (normalized complex Gaussian vector).
PureState random_state(int m, RngStream &rng);

} // namespace aqs

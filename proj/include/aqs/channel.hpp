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

#include <Eigen/Dense>

#include "aqs/rng.hpp"
#include "aqs/state.hpp"

namespace aqs {

/**
 * Kraus operator acting on the whole register, stored in low-rank form
 *   K = identity * I + sum_j coeff_j |ket_j><bra_j|.
 */
struct RegisterKraus {
    cplx identity = 0.0;
    std::vector<cplx> coeff;
    std::vector<CVec> ket;
    std::vector<CVec> bra;

    CVec apply(const CVec &v) const;
    CMat dense(std::size_t dim) const;
};

/**
 * CPTP map given either as one set of single-qubit Kraus operators applied
 * independently to every qubit, or as register-level Kraus operators.
 */
class KrausChannel {
  public:
    enum class Kind { Identity, Dephase, Depolarize, CoherentMix };

    static KrausChannel identity();
    /// Per-qubit phase flip with probability gamma/2.
    static KrausChannel dephase(double gamma);
    /// Per-qubit depolarizing: rho -> (1-q) rho + q I/2.
    static KrausChannel depolarize(double q);
    /**
     * Register channel mapping the (n, q0) target |t> to
     * (1-eps)|t><t| + eps|c><c| with c = make_target_complement(n, q0).
     */
    static KrausChannel coherent_mix(double eps, int n, double q0);

    Kind kind() const { return kind_; }
    const std::string &label() const { return label_; }
    double strength() const { return strength_; }
    bool is_local() const { return !local_.empty(); }
    const std::vector<Eigen::Matrix2cd> &local_kraus() const { return local_; }
    const std::vector<RegisterKraus> &register_kraus() const { return global_; }

    /// Quantum-trajectory step: one Kraus branch sampled by the Born rule.
    PureState sample(const PureState &psi, RngStream &rng) const;
    DensityOperator apply(const DensityOperator &rho) const;

    /// Full Kraus list on an m-qubit register (size 4^m for local channels).
    std::vector<CMat> dense_kraus(int m) const;
    /// max |sum K^dag K - I| over an m-qubit register.
    double completeness_error(int m) const;

  private:
    Kind kind_ = Kind::Identity;
    std::string label_ = "none";
    double strength_ = 0.0;
    int register_qubits_ = 0;
    std::vector<Eigen::Matrix2cd> local_;
    std::vector<RegisterKraus> global_;
};

/**
 * Parses "none", "dephase:G", "depolarize:Q" or "coherent_mix:E". The
 * coherent mixture is tied to the (n, q0) target.
 */
KrausChannel standard_channel(const std::string &spec, int n, double q0);

} // namespace aqs

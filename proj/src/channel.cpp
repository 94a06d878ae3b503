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

#include "aqs/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace aqs {

namespace {

void check_param(double x, const char *what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": parameter outside [0,1]");
    }
}

CMat kron(const CMat &a, const CMat &b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMat embed(const Eigen::Matrix2cd &k, int m, int qubit) {
    const Eigen::Index left = Eigen::Index{1} << qubit;
    const Eigen::Index right = Eigen::Index{1} << (m - 1 - qubit);
    return kron(kron(CMat::Identity(left, left), k), CMat::Identity(right, right));
}

std::size_t sample_branch(const std::vector<double> &weights, RngStream &rng) {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    double u = rng.uniform() * total;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        if (u < weights[j]) {
            return j;
        }
        u -= weights[j];
    }
    // Rounding left u just above the last bucket.
    for (std::size_t j = weights.size(); j-- > 0;) {
        if (weights[j] > 0.0) {
            return j;
        }
    }
    throw std::runtime_error("KrausChannel: all branch weights vanish");
}

} // namespace

CVec RegisterKraus::apply(const CVec &v) const {
    CVec out = identity * v;
    for (std::size_t j = 0; j < coeff.size(); ++j) {
        out += coeff[j] * bra[j].dot(v) * ket[j];
    }
    return out;
}

CMat RegisterKraus::dense(std::size_t dim) const {
    const auto d = static_cast<Eigen::Index>(dim);
    CMat out = identity * CMat::Identity(d, d);
    for (std::size_t j = 0; j < coeff.size(); ++j) {
        out += coeff[j] * ket[j] * bra[j].adjoint();
    }
    return out;
}

KrausChannel KrausChannel::identity() {
    KrausChannel ch;
    ch.local_.push_back(Eigen::Matrix2cd::Identity());
    return ch;
}

KrausChannel KrausChannel::dephase(double gamma) {
    check_param(gamma, "dephase");
    KrausChannel ch;
    ch.kind_ = Kind::Dephase;
    ch.label_ = "dephase";
    ch.strength_ = gamma;
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    ch.local_.push_back(std::sqrt(1.0 - gamma / 2.0) * Eigen::Matrix2cd::Identity());
    ch.local_.push_back(std::sqrt(gamma / 2.0) * z);
    return ch;
}

KrausChannel KrausChannel::depolarize(double q) {
    check_param(q, "depolarize");
    KrausChannel ch;
    ch.kind_ = Kind::Depolarize;
    ch.label_ = "depolarize";
    ch.strength_ = q;
    const cplx i(0.0, 1.0);
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, -i, i, 0;
    z << 1, 0, 0, -1;
    ch.local_.push_back(std::sqrt(1.0 - 0.75 * q) * Eigen::Matrix2cd::Identity());
    ch.local_.push_back(std::sqrt(q / 4.0) * x);
    ch.local_.push_back(std::sqrt(q / 4.0) * y);
    ch.local_.push_back(std::sqrt(q / 4.0) * z);
    return ch;
}

KrausChannel KrausChannel::coherent_mix(double eps, int n, double q0) {
    check_param(eps, "coherent_mix");
    KrausChannel ch;
    ch.kind_ = Kind::CoherentMix;
    ch.label_ = "coherent_mix";
    ch.strength_ = eps;
    ch.register_qubits_ = 2 * n;
    const CVec t = make_target(n, q0).amplitudes();
    const CVec c = make_target_complement(n, q0).amplitudes();

    RegisterKraus keep;
    keep.identity = std::sqrt(1.0 - eps);
    ch.global_.push_back(keep);

    // Swap |t> and |c>, identity elsewhere.
    const double s = std::sqrt(eps);
    RegisterKraus swap;
    swap.identity = s;
    swap.coeff = {-s, -s, s, s};
    swap.ket = {t, c, c, t};
    swap.bra = {t, c, t, c};
    ch.global_.push_back(swap);
    return ch;
}

PureState KrausChannel::sample(const PureState &psi, RngStream &rng) const {
    if (kind_ == Kind::Identity) {
        return psi;
    }
    if (is_local()) {
        PureState cur = psi;
        for (int q = 0; q < cur.qubits(); ++q) {
            std::vector<PureState> branches;
            std::vector<double> weights;
            for (const auto &k : local_) {
                PureState b = cur;
                apply_1q(b, q, k);
                weights.push_back(b.amplitudes().squaredNorm());
                branches.push_back(std::move(b));
            }
            cur = std::move(branches[sample_branch(weights, rng)]);
            cur.normalize();
        }
        return cur;
    }
    if (psi.qubits() != register_qubits_) {
        throw std::invalid_argument("KrausChannel::sample: register size mismatch");
    }
    std::vector<CVec> branches;
    std::vector<double> weights;
    for (const auto &k : global_) {
        branches.push_back(k.apply(psi.amplitudes()));
        weights.push_back(branches.back().squaredNorm());
    }
    return PureState::normalized(psi.qubits(), branches[sample_branch(weights, rng)]);
}

DensityOperator KrausChannel::apply(const DensityOperator &rho) const {
    const int m = rho.qubits();
    if (kind_ == Kind::Identity) {
        return rho;
    }
    CMat cur = rho.matrix();
    if (is_local()) {
        for (int q = 0; q < m; ++q) {
            CMat next = CMat::Zero(cur.rows(), cur.cols());
            for (const auto &k : local_) {
                const CMat full = embed(k, m, q);
                next += full * cur * full.adjoint();
            }
            cur = std::move(next);
        }
    } else {
        if (m != register_qubits_) {
            throw std::invalid_argument("KrausChannel::apply: register size mismatch");
        }
        CMat next = CMat::Zero(cur.rows(), cur.cols());
        for (const auto &k : global_) {
            const CMat full = k.dense(rho.dim());
            next += full * cur * full.adjoint();
        }
        cur = std::move(next);
    }
    // Remove rounding asymmetry before the validating constructor.
    cur = 0.5 * (cur + cur.adjoint()).eval();
    cur /= cur.trace().real();
    return DensityOperator(m, std::move(cur));
}

std::vector<CMat> KrausChannel::dense_kraus(int m) const {
    std::vector<CMat> out;
    if (is_local()) {
        out.push_back(CMat::Identity(1, 1));
        for (int q = 0; q < m; ++q) {
            std::vector<CMat> next;
            for (const auto &prefix : out) {
                for (const auto &k : local_) {
                    next.push_back(kron(prefix, k));
                }
            }
            out = std::move(next);
        }
        return out;
    }
    if (m != register_qubits_) {
        throw std::invalid_argument("KrausChannel::dense_kraus: register size mismatch");
    }
    for (const auto &k : global_) {
        out.push_back(k.dense(std::size_t{1} << m));
    }
    return out;
}

double KrausChannel::completeness_error(int m) const {
    const Eigen::Index dim = Eigen::Index{1} << m;
    CMat sum = CMat::Zero(dim, dim);
    for (const auto &k : dense_kraus(m)) {
        sum += k.adjoint() * k;
    }
    return (sum - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

KrausChannel standard_channel(const std::string &spec, int n, double q0) {
    if (spec.empty() || spec == "none" || spec == "identity") {
        return KrausChannel::identity();
    }
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("noise spec '" + spec + "' needs the form kind:param");
    }
    const std::string kind = spec.substr(0, colon);
    double param;
    try {
        std::size_t used = 0;
        param = std::stod(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) {
            throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception &) {
        throw std::invalid_argument("noise spec '" + spec + "' has a malformed parameter");
    }
    if (kind == "dephase") {
        return KrausChannel::dephase(param);
    }
    if (kind == "depolarize") {
        return KrausChannel::depolarize(param);
    }
    if (kind == "coherent_mix") {
        return KrausChannel::coherent_mix(param, n, q0);
    }
    throw std::invalid_argument("unknown noise kind '" + kind + "'");
}

} // namespace aqs

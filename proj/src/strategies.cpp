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

#include "aqs/strategies.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace aqs::qsv {

using symcomb::Bits;
using symcomb::WeightBasis;
using Triplets = std::vector<Eigen::Triplet<double>>;

namespace {

constexpr int kMaxBruteForceN = 5;

Eigen::SparseMatrix<double> sparse(std::size_t size, const Triplets &t) {
    Eigen::SparseMatrix<double> mat(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    mat.setFromTriplets(t.begin(), t.end());
    return mat;
}

SectorBlock diagonal_block(int m, int w, double value) {
    const std::size_t size = WeightBasis(m, w).size();
    Triplets t;
    for (std::size_t i = 0; i < size; ++i) {
        t.emplace_back(i, i, value);
    }
    return SectorBlock{{w}, sparse(size, t)};
}

/// Pairs (u, v) with u of weight w, v of weight w + 2 and u a subset of v.
void add_cross(int m, int w, std::size_t off_u, std::size_t off_v, double value, Triplets &t) {
    const WeightBasis lower(m, w);
    const WeightBasis upper(m, w + 2);
    const Bits full = (Bits{1} << m) - 1;
    std::size_t i = 0;
    for (Bits u : lower) {
        for (Bits z1 = ~u & full; z1 != 0; z1 &= z1 - 1) {
            const Bits b1 = z1 & (~z1 + 1);
            for (Bits z2 = z1 & (z1 - 1); z2 != 0; z2 &= z2 - 1) {
                const Bits b2 = z2 & (~z2 + 1);
                const std::size_t j = upper.rank(u | b1 | b2);
                t.emplace_back(off_u + i, off_v + j, value);
                t.emplace_back(off_v + j, off_u + i, value);
            }
        }
        ++i;
    }
}

void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("Z-test probability p must lie in [0,1]");
    }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::Matrix2cd ket_projector(const Eigen::Vector2cd &v) {
    const Eigen::Vector2cd u = v.normalized();
    return u * u.adjoint();
}

} // namespace

double q_min(int n) {
    if (n < 3) {
        throw std::invalid_argument("q_min: need n >= 3");
    }
    return 2.0 / (static_cast<double>(symcomb::binom_real(2 * n, n)) + 2.0);
}

LambdaPair lambda_map(int n, double q0) {
    if (n < 3) {
        throw std::invalid_argument("lambda_map: need n >= 3");
    }
    const double c = static_cast<double>(symcomb::binom_real(2 * n, n));
    const double qm = 2.0 / (c + 2.0);
    if (!(q0 < 1.0) || q0 < qm * (1.0 - 1e-12)) {
        throw std::invalid_argument("lambda_map: q0 must lie in [q_min(n), 1) with q_min = " +
                                    std::to_string(qm));
    }
    const double q1 = 1.0 - q0;
    const double den = c * q0 + 2.0 * q1;
    if (c * q0 <= 2.0 * q1) {
        return {0.5, 0.5};
    }
    return {c * q0 / den, 2.0 * q1 / den};
}

StrategyOperator strategy_ghz_like(int m, double p, double lambda0) {
    check_p(p);
    if (m < 2) {
        throw std::invalid_argument("strategy_ghz_like: need m >= 2");
    }
    if (!(lambda0 >= 0.5 && lambda0 < 1.0)) {
        throw std::invalid_argument("strategy_ghz_like: need 1/2 <= lambda0 < 1 (conjugate by X otherwise)");
    }
    const double lambda1 = 1.0 - lambda0;
    StrategyOperator op(m);
    Triplets t;
    t.emplace_back(0, 0, p + (1.0 - p) * lambda0);
    t.emplace_back(1, 1, p + (1.0 - p) * lambda1);
    t.emplace_back(0, 1, (1.0 - p) * std::sqrt(lambda0 * lambda1));
    t.emplace_back(1, 0, (1.0 - p) * std::sqrt(lambda0 * lambda1));
    op.add_block(SectorBlock{{0, m}, sparse(2, t)});
    for (int w = 1; w < m; ++w) {
        op.add_block(diagonal_block(m, w, (1.0 - p) * ((m - w) * lambda0 + w * lambda1) / m));
    }
    return op;
}

StrategyOperator strategy_dicke(int m, int k) {
    if (m < 3 || k < 1 || k > m - 1) {
        throw std::invalid_argument("strategy_dicke: need m >= 3 and 1 <= k <= m-1");
    }
    const double norm = static_cast<double>(m) * (m - 1);
    StrategyOperator op(m);

    SectorBlock centre = diagonal_block(m, k, (norm - static_cast<double>(k) * (m - k)) / norm);
    centre.matrix += symcomb::johnson_adjacency(m, k) / norm;
    op.add_block(std::move(centre));

    const std::size_t lo = WeightBasis(m, k - 1).size();
    const std::size_t hi = WeightBasis(m, k + 1).size();
    Triplets t;
    const double dlo = static_cast<double>(symcomb::binom(m - k + 1, 2)) / norm;
    const double dhi = static_cast<double>(symcomb::binom(k + 1, 2)) / norm;
    for (std::size_t i = 0; i < lo; ++i) {
        t.emplace_back(i, i, dlo);
    }
    for (std::size_t i = 0; i < hi; ++i) {
        t.emplace_back(lo + i, lo + i, dhi);
    }
    add_cross(m, k - 1, 0, lo, 1.0 / norm, t);
    op.add_block(SectorBlock{{k - 1, k + 1}, sparse(lo + hi, t)});
    return op;
}

Eigen::MatrixXd ghz_like_protocol_dense(int m, double p, double lambda0, bool flipped) {
    check_p(p);
    if (m < 2 || m > 10) {
        throw std::invalid_argument("ghz_like_protocol_dense: need 2 <= m <= 10");
    }
    const double lambda1 = 1.0 - lambda0;
    const Eigen::Index dim = Eigen::Index{1} << m;
    const std::complex<double> i1(0.0, 1.0);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);

    // a = 0: Z on every qubit, accept iff all outcomes agree.
    acc(0, 0) += p;
    acc(dim - 1, dim - 1) += p;

    // a = 1: verifier k is the one measuring the lambda-dependent basis.
    const double weight = (1.0 - p) / m / static_cast<double>(Eigen::Index{1} << (m - 1));
    for (int k = 0; k < m; ++k) {
        for (Bits rbits = 0; rbits < (Bits{1} << (m - 1)); ++rbits) {
            for (Bits obits = 0; obits < (Bits{1} << (m - 1)); ++obits) {
                std::vector<int> r(m, 0), o(m, 0);
                int j = 0;
                for (int q = 0; q < m; ++q) {
                    if (q == k) {
                        continue;
                    }
                    r[q] = static_cast<int>((rbits >> j) & 1);
                    o[q] = static_cast<int>((obits >> j) & 1);
                    ++j;
                }
                int rk = 0, ok = 0, rsum = 0;
                for (int q = 0; q < m; ++q) {
                    if (q != k) {
                        rk ^= r[q];
                        ok ^= o[q];
                        rsum += r[q];
                    }
                }
                rsum += rk;
                const int s = (ok + rsum / 2) % 2;
                Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(1, 1);
                for (int q = 0; q < m; ++q) {
                    Eigen::Vector2cd v;
                    if (q == k) {
                        v << std::sqrt(lambda0), (s ? -1.0 : 1.0) * std::pow(i1, rk) * std::sqrt(lambda1);
                    } else {
                        v << 1.0, (o[q] ? -1.0 : 1.0) * std::pow(i1, r[q]);
                    }
                    prod = kron(prod, ket_projector(v));
                }
                acc += weight * prod;
            }
        }
    }
    if ((acc.imag()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::logic_error("ghz_like_protocol_dense: strategy is not real");
    }
    Eigen::MatrixXd out = acc.real();
    if (flipped) {
        out = out.reverse().eval();
    }
    return out;
}

Eigen::MatrixXd dicke_protocol_dense(int m, int k) {
    if (m < 3 || m > 12 || k < 1 || k > m - 1) {
        throw std::invalid_argument("dicke_protocol_dense: need 3 <= m <= 12 and 1 <= k <= m-1");
    }
    const Eigen::Index dim = Eigen::Index{1} << m;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    const double weight = 1.0 / static_cast<double>(symcomb::binom(m, 2));
    for (int k1 = 0; k1 < m; ++k1) {
        for (int k2 = k1 + 1; k2 < m; ++k2) {
            const Bits b1 = symcomb::qubit_bit(m, k1);
            const Bits b2 = symcomb::qubit_bit(m, k2);
            const Bits pair = b1 | b2;
            for (Bits x = 0; x < static_cast<Bits>(dim); ++x) {
                const int rest = symcomb::weight(x & ~pair);
                const int o1 = (x & b1) ? 1 : 0;
                const int o2 = (x & b2) ? 1 : 0;
                const auto xi = static_cast<Eigen::Index>(x);
                if ((rest == k && o1 == 0 && o2 == 0) || (rest == k - 2 && o1 == 1 && o2 == 1)) {
                    out(xi, xi) += weight;
                }
                if (rest == k - 1) {
                    // (X x X)^+ = (I + X x X) / 2 on the pair.
                    out(xi, xi) += 0.5 * weight;
                    out(xi, static_cast<Eigen::Index>(x ^ pair)) += 0.5 * weight;
                }
            }
        }
    }
    return out;
}

Eigen::MatrixXd assemble_strategy_bruteforce(int n, double q0, double p) {
    if (n < 3 || n > kMaxBruteForceN) {
        throw std::invalid_argument("assemble_strategy_bruteforce: need 3 <= n <= " +
                                    std::to_string(kMaxBruteForceN));
    }
    const LambdaPair lam = lambda_map(n, q0);
    const int m = 2 * n;
    std::vector<Eigen::MatrixXd> sub(n + 1);
    sub[0] = ghz_like_protocol_dense(n, p, lam.lambda0, false);
    sub[n] = ghz_like_protocol_dense(n, p, lam.lambda0, true);
    for (int l = 1; l < n; ++l) {
        sub[l] = dicke_protocol_dense(n, n - l);
    }
    const Eigen::Index dim = Eigen::Index{1} << m;
    const Bits full = (Bits{1} << m) - 1;
    const auto subsets = symcomb::subsets(m, n);
    const double weight = 1.0 / static_cast<double>(subsets.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (Bits r : subsets) {
        const Bits rc = full & ~r;
        for (Bits x = 0; x <= full; ++x) {
            const Bits xr = symcomb::extract_bits(x, r);
            const auto xc = static_cast<Eigen::Index>(symcomb::extract_bits(x, rc));
            const Eigen::MatrixXd &op = sub[symcomb::weight(xr)];
            const Bits fixed = symcomb::deposit_bits(xr, r);
            for (Bits yc = 0; yc < (Bits{1} << n); ++yc) {
                const double v = op(xc, static_cast<Eigen::Index>(yc));
                if (v != 0.0) {
                    const Bits y = fixed | symcomb::deposit_bits(yc, rc);
                    out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) += weight * v;
                }
            }
        }
    }
    return out;
}

Decomposition assemble_strategy_decomposed(int n, double q0, double p) {
    check_p(p);
    const LambdaPair lam = lambda_map(n, q0);
    const double l0 = lam.lambda0;
    const int m = 2 * n;
    const double c_nn = static_cast<double>(symcomb::binom(m, n));
    const WeightBasis centre(m, n);
    const std::size_t cs = centre.size();

    Decomposition dec{StrategyOperator(m), StrategyOperator(m), StrategyOperator(m)};

    // Omega^(1): |0^2n>, weight-n strings, |1^2n>.
    {
        const double a = p + (1.0 - p) * l0;
        const double b = (3.0 * n - 2.0) / (2.0 * (2.0 * n - 1.0)) - 2.0 * (1.0 - p) * l0 / c_nn;
        const double c = 1.0 / (2.0 * n * (2.0 * n - 1.0));
        const double d = (1.0 - p) * std::sqrt(l0 * lam.lambda1) / c_nn;
        Triplets t;
        t.emplace_back(0, 0, a);
        t.emplace_back(cs + 1, cs + 1, a);
        for (std::size_t i = 0; i < cs; ++i) {
            t.emplace_back(1 + i, 1 + i, b);
            for (std::size_t end : {std::size_t{0}, cs + 1}) {
                t.emplace_back(end, 1 + i, d);
                t.emplace_back(1 + i, end, d);
            }
        }
        const Eigen::SparseMatrix<double> j = symcomb::johnson_adjacency(m, n);
        for (Eigen::Index k = 0; k < j.outerSize(); ++k) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(j, k); it; ++it) {
                t.emplace_back(1 + it.row(), 1 + it.col(), c * it.value());
            }
        }
        dec.omega1.add_block(SectorBlock{{0, n, m}, sparse(cs + 2, t)});
    }

    // Omega^(2): weights n-1 and n+1.
    {
        const std::size_t half = WeightBasis(m, n - 1).size();
        const double diag = (n + 1.0) * (1.0 / (4.0 * (2.0 * n - 1.0)) +
                                         (1.0 - p) / c_nn * (1.0 - 1.0 / n - (1.0 - 2.0 / n) * l0));
        Triplets t;
        for (std::size_t i = 0; i < 2 * half; ++i) {
            t.emplace_back(i, i, diag);
        }
        add_cross(m, n - 1, 0, half, 1.0 / (2.0 * n * (2.0 * n - 1.0)), t);
        dec.omega2.add_block(SectorBlock{{n - 1, n + 1}, sparse(2 * half, t)});
    }

    // Omega^(3): diagonal on weights l and 2n-l.
    for (int l = 1; l <= n - 2; ++l) {
        const double g = (1.0 - p) / c_nn * static_cast<double>(symcomb::binom(m - l, n)) *
                         (static_cast<double>(l) / n + (1.0 - 2.0 * l / static_cast<double>(n)) * l0);
        dec.omega3.add_block(diagonal_block(m, l, g));
        dec.omega3.add_block(diagonal_block(m, m - l, g));
    }
    return dec;
}

} // namespace aqs::qsv

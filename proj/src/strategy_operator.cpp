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

#include "aqs/strategy_operator.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace aqs::qsv {

using symcomb::Bits;
using symcomb::WeightBasis;

namespace {

std::size_t group_size(int m, const std::vector<int> &weights) {
    std::size_t s = 0;
    for (int w : weights) {
        s += WeightBasis(m, w).size();
    }
    return s;
}

} // namespace

void StrategyOperator::add_block(SectorBlock block) {
    for (int w : block.weights) {
        if (w < 0 || w > m_) {
            throw std::invalid_argument("StrategyOperator: sector weight out of range");
        }
        for (const auto &b : blocks_) {
            if (std::find(b.weights.begin(), b.weights.end(), w) != b.weights.end()) {
                throw std::invalid_argument("StrategyOperator: sector already covered");
            }
        }
    }
    const auto size = static_cast<Eigen::Index>(group_size(m_, block.weights));
    if (block.matrix.rows() != size || block.matrix.cols() != size) {
        throw std::invalid_argument("StrategyOperator: block matrix has wrong size");
    }
    blocks_.push_back(std::move(block));
}

StrategyOperator StrategyOperator::merged(const StrategyOperator &other) const {
    if (other.m_ != m_) {
        throw std::invalid_argument("StrategyOperator::merged: qubit count mismatch");
    }
    StrategyOperator out = *this;
    for (const auto &b : other.blocks_) {
        out.add_block(b);
    }
    return out;
}

std::vector<Bits> StrategyOperator::block_basis(std::size_t index) const {
    std::vector<Bits> basis;
    for (int w : blocks_.at(index).weights) {
        for (Bits x : WeightBasis(m_, w)) {
            basis.push_back(x);
        }
    }
    return basis;
}

Eigen::MatrixXd StrategyOperator::to_dense() const {
    if (m_ > 14) {
        throw std::invalid_argument("StrategyOperator::to_dense: register too large");
    }
    const Eigen::Index dim = Eigen::Index{1} << m_;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto basis = block_basis(i);
        const auto &mat = blocks_[i].matrix;
        for (Eigen::Index k = 0; k < mat.outerSize(); ++k) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(mat, k); it; ++it) {
                out(static_cast<Eigen::Index>(basis[it.row()]), static_cast<Eigen::Index>(basis[it.col()])) =
                    it.value();
            }
        }
    }
    return out;
}

StrategyOperator StrategyOperator::from_dense(int m, const Eigen::MatrixXd &dense,
                                              const std::vector<std::vector<int>> &groups) {
    StrategyOperator out(m);
    for (const auto &weights : groups) {
        std::vector<Bits> basis;
        for (int w : weights) {
            for (Bits x : WeightBasis(m, w)) {
                basis.push_back(x);
            }
        }
        std::vector<Eigen::Triplet<double>> entries;
        for (std::size_t r = 0; r < basis.size(); ++r) {
            for (std::size_t c = 0; c < basis.size(); ++c) {
                const double v = dense(static_cast<Eigen::Index>(basis[r]), static_cast<Eigen::Index>(basis[c]));
                if (v != 0.0) {
                    entries.emplace_back(r, c, v);
                }
            }
        }
        Eigen::SparseMatrix<double> mat(basis.size(), basis.size());
        mat.setFromTriplets(entries.begin(), entries.end());
        out.add_block(SectorBlock{weights, std::move(mat)});
    }
    return out;
}

CVec StrategyOperator::apply(const CVec &v) const {
    if (v.size() != (Eigen::Index{1} << m_)) {
        throw std::invalid_argument("StrategyOperator::apply: vector has wrong length");
    }
    CVec out = CVec::Zero(v.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto basis = block_basis(i);
        CVec local(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            local[static_cast<Eigen::Index>(j)] = v[static_cast<Eigen::Index>(basis[j])];
        }
        const CVec res = blocks_[i].matrix.cast<cplx>() * local;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            out[static_cast<Eigen::Index>(basis[j])] = res[static_cast<Eigen::Index>(j)];
        }
    }
    return out;
}

double StrategyOperator::expectation(const PureState &psi) const {
    if (psi.qubits() != m_) {
        throw std::invalid_argument("StrategyOperator::expectation: qubit count mismatch");
    }
    return psi.amplitudes().dot(apply(psi.amplitudes())).real();
}

double StrategyOperator::expectation(const DensityOperator &rho) const {
    if (rho.qubits() != m_) {
        throw std::invalid_argument("StrategyOperator::expectation: qubit count mismatch");
    }
    return rho.expectation(to_dense().cast<cplx>());
}

Top2 StrategyOperator::top2(const EigOptions &opt) const {
    std::vector<double> cand;
    std::size_t covered = 0;
    bool dense = true;
    long iterations = 0;
    for (const auto &b : blocks_) {
        covered += static_cast<std::size_t>(b.matrix.rows());
        const Top2 t = eig_top2(b.matrix, opt);
        dense = dense && t.dense;
        iterations += t.iterations;
        cand.push_back(t.first);
        if (b.matrix.rows() > 1) {
            cand.push_back(t.second);
        }
    }
    if (covered < (std::size_t{1} << m_)) {
        cand.push_back(0.0);
        if (covered + 1 < (std::size_t{1} << m_)) {
            cand.push_back(0.0);
        }
    }
    std::sort(cand.begin(), cand.end(), std::greater<>());
    return Top2{cand.at(0), cand.size() > 1 ? cand[1] : cand[0], dense, iterations};
}

std::vector<double> StrategyOperator::spectrum() const {
    std::vector<double> out;
    std::size_t covered = 0;
    for (const auto &b : blocks_) {
        covered += static_cast<std::size_t>(b.matrix.rows());
        const Eigen::VectorXd ev = eig_all(Eigen::MatrixXd(b.matrix));
        out.insert(out.end(), ev.data(), ev.data() + ev.size());
    }
    out.resize(out.size() + ((std::size_t{1} << m_) - covered), 0.0);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

} // namespace aqs::qsv

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

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "aqs/eig.hpp"
#include "aqs/state.hpp"

namespace aqs::qsv {

/**
 * One diagonal block of a weight-preserving-up-to-coupling operator. The block
 * acts on the direct sum of the listed weight sectors, each enumerated in
 * lexicographic order and concatenated in the order given.
 */
struct SectorBlock {
    std::vector<int> weights;
    Eigen::SparseMatrix<double> matrix;
};

/**
 * Real symmetric operator on m qubits stored as blocks over disjoint groups of
 * Hamming-weight sectors. Sectors not covered by any block are zero.
 */
class StrategyOperator {
  public:
    explicit StrategyOperator(int m = 0) : m_(m) {}

    int qubits() const { return m_; }
    const std::vector<SectorBlock> &blocks() const { return blocks_; }

    /// Throws if the block touches a sector that is already covered.
    void add_block(SectorBlock block);
    /// Union of two operators with disjoint sector support.
    StrategyOperator merged(const StrategyOperator &other) const;

    /// Basis strings of a block, in block order.
    std::vector<symcomb::Bits> block_basis(std::size_t index) const;

    /// Dense 2^m x 2^m matrix (m <= 14).
    Eigen::MatrixXd to_dense() const;
    /// Extracts the blocks of a dense operator for the given sector groups.
    static StrategyOperator from_dense(int m, const Eigen::MatrixXd &dense,
                                       const std::vector<std::vector<int>> &groups);

    CVec apply(const CVec &v) const;
    double expectation(const PureState &psi) const;
    double expectation(const DensityOperator &rho) const;

    /// Two largest eigenvalues over all blocks (zero sectors contribute 0).
    Top2 top2(const EigOptions &opt = {}) const;
    /// All eigenvalues, descending, including zeros of uncovered sectors.
    std::vector<double> spectrum() const;

  private:
    int m_;
    std::vector<SectorBlock> blocks_;
};

} // namespace aqs::qsv

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

#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace aqs {

struct EigOptions {
    /// Dimensions up to this use dense diagonalization.
    std::size_t dense_limit = 512;
    /// Residual tolerance of the iterative path.
    double tolerance = 1e-10;
    long max_iterations = 100000;
};

struct Top2 {
    double first;
    double second;
    bool dense;
    long iterations;
};

class EigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Two largest eigenvalues (first >= second) of a Hermitian operator. Throws
 * EigError for non-Hermitian input (1e-10) or when the iterative path hits its
 * iteration cap. A 1x1 operator reports its eigenvalue twice.
 */
Top2 eig_top2(const Eigen::MatrixXd &op, const EigOptions &opt = {});
Top2 eig_top2(const Eigen::MatrixXcd &op, const EigOptions &opt = {});
Top2 eig_top2(const Eigen::SparseMatrix<double> &op, const EigOptions &opt = {});

/// Full spectrum of a real symmetric matrix, descending.
Eigen::VectorXd eig_all(const Eigen::MatrixXd &op);

} // namespace aqs

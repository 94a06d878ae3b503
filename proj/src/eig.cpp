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

#include "aqs/eig.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace aqs {

namespace {

constexpr double kHermitianTol = 1e-10;

template <typename Matrix> void check_square(const Matrix &op) {
    if (op.rows() != op.cols() || op.rows() == 0) {
        throw EigError("eig_top2: operator must be square and non-empty");
    }
}

template <typename Dense> Top2 dense_top2(const Dense &op) {
    if ((op - op.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw EigError("eig_top2: operator is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Dense> es(op, Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    const Eigen::Index d = ev.size();
    return Top2{ev[d - 1], d > 1 ? ev[d - 2] : ev[d - 1], true, 0};
}

/**
 * Block Krylov iteration with block size 2 and Rayleigh-Ritz extraction. The
 * block size covers a doubly degenerate top eigenvalue. The basis is fully
 * reorthogonalized and restarted from the current Ritz vectors when it
 * reaches kMaxBasis columns.
 */
template <typename Scalar>
Top2 block_krylov_top2(const Eigen::SparseMatrix<Scalar> &op, const EigOptions &opt) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    constexpr Eigen::Index kMaxBasis = 240;
    const Eigen::Index dim = op.rows();
    const Eigen::Index cap = std::min<Eigen::Index>(kMaxBasis, dim);

    std::mt19937_64 gen(0x5eedULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat block(dim, 2);
    for (Eigen::Index i = 0; i < dim; ++i) {
        block(i, 0) = Scalar(u(gen));
        block(i, 1) = Scalar(u(gen));
    }

    Mat basis(dim, cap);
    Mat image(dim, cap);
    Eigen::Index cols = 0;
    long products = 0;
    // Appends the columns of `block` that survive orthogonalization.
    auto extend = [&](const Mat &cand) {
        for (Eigen::Index j = 0; j < cand.cols() && cols < cap; ++j) {
            Vec v = cand.col(j);
            const double before = v.norm();
            for (int pass = 0; pass < 2; ++pass) {
                v -= basis.leftCols(cols) * (basis.leftCols(cols).adjoint() * v);
            }
            const double after = v.norm();
            if (after <= 1e-10 * std::max(before, 1e-300)) {
                continue;
            }
            basis.col(cols) = v / after;
            image.col(cols) = op * basis.col(cols);
            ++products;
            ++cols;
        }
    };

    extend(block);
    while (products < opt.max_iterations) {
        const Mat h = basis.leftCols(cols).adjoint() * image.leftCols(cols);
        Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
        const auto &theta = es.eigenvalues();
        const Eigen::Index k = std::min<Eigen::Index>(2, cols);
        const Mat ritz = basis.leftCols(cols) * es.eigenvectors().rightCols(k);
        const Mat aritz = image.leftCols(cols) * es.eigenvectors().rightCols(k);
        double worst = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
            const double lam = theta[cols - k + j];
            worst = std::max(worst, (aritz.col(j) - lam * ritz.col(j)).norm());
        }
        if (worst <= opt.tolerance || cols == dim) {
            const double first = theta[cols - 1];
            const double second = cols > 1 ? theta[cols - 2] : first;
            return Top2{first, second, false, products};
        }
        const Mat residual = aritz - ritz * theta.tail(k).asDiagonal();
        if (cols + 2 > cap) {
            // Restart from the Ritz vectors and their residual directions.
            cols = 0;
            extend(ritz);
            extend(residual);
            continue;
        }
        const Eigen::Index before = cols;
        extend(residual);
        if (cols == before) {
            // Invariant subspace found; the Ritz pairs are exact.
            const double first = theta[cols - 1];
            const double second = cols > 1 ? theta[cols - 2] : first;
            return Top2{first, second, false, products};
        }
    }
    throw EigError("eig_top2: iterative solver did not converge");
}

template <typename Scalar> Top2 sparse_top2(const Eigen::SparseMatrix<Scalar> &op, const EigOptions &opt) {
    check_square(op);
    const Eigen::SparseMatrix<Scalar> diff = op - Eigen::SparseMatrix<Scalar>(op.adjoint());
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(diff, k); it; ++it) {
            if (std::abs(it.value()) > kHermitianTol) {
                throw EigError("eig_top2: operator is not Hermitian");
            }
        }
    }
    if (static_cast<std::size_t>(op.rows()) <= opt.dense_limit) {
        return dense_top2(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(op));
    }
    return block_krylov_top2(op, opt);
}

} // namespace

Top2 eig_top2(const Eigen::MatrixXd &op, const EigOptions &opt) {
    check_square(op);
    if (static_cast<std::size_t>(op.rows()) <= opt.dense_limit) {
        return dense_top2(op);
    }
    return sparse_top2(Eigen::SparseMatrix<double>(op.sparseView()), opt);
}

Top2 eig_top2(const Eigen::MatrixXcd &op, const EigOptions &opt) {
    check_square(op);
    if (static_cast<std::size_t>(op.rows()) <= opt.dense_limit) {
        return dense_top2(op);
    }
    return sparse_top2(Eigen::SparseMatrix<std::complex<double>>(op.sparseView()), opt);
}

Top2 eig_top2(const Eigen::SparseMatrix<double> &op, const EigOptions &opt) { return sparse_top2(op, opt); }

Eigen::VectorXd eig_all(const Eigen::MatrixXd &op) {
    check_square(op);
    if ((op - op.transpose()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw EigError("eig_all: operator is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op, Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
}

} // namespace aqs

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

#include "aqs/symcomb.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace aqs::symcomb {

namespace {
constexpr Bits kEnd = ~Bits{0};
constexpr int kMaxQubits = 62;
} // namespace

std::uint64_t binom(unsigned m, unsigned k) {
    if (k > m) {
        return 0;
    }
    k = std::min(k, m - k);
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        // r == C(m, i) here, so the division is exact.
        r = r * (m - i) / (i + 1);
        if (r > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("binom(" + std::to_string(m) + ", " + std::to_string(k) +
                                      ") exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(r);
}

long double binom_real(unsigned m, unsigned k) {
    if (k > m) {
        return 0.0L;
    }
    k = std::min(k, m - k);
    long double r = 1.0L;
    for (unsigned i = 0; i < k; ++i) {
        r = r * static_cast<long double>(m - i) / static_cast<long double>(i + 1);
    }
    return r;
}

WeightBasis::WeightBasis(int m, int k) : m_(m), k_(k) {
    if (m < 0 || m > kMaxQubits) {
        throw std::invalid_argument("WeightBasis: qubit count out of range");
    }
    if (k < 0 || k > m) {
        throw std::invalid_argument("WeightBasis: weight out of range");
    }
    size_ = binom(m, k);
}

std::size_t WeightBasis::rank(Bits x) const {
    if (symcomb::weight(x) != k_ || (m_ < 64 && (x >> m_) != 0)) {
        throw std::invalid_argument("WeightBasis::rank: string has wrong weight or length");
    }
    std::size_t r = 0;
    int j = 0;
    while (x != 0) {
        const int pos = __builtin_ctzll(x);
        ++j;
        r += binom(pos, j);
        x &= x - 1;
    }
    return r;
}

Bits WeightBasis::unrank(std::size_t index) const {
    if (index >= size_) {
        throw std::out_of_range("WeightBasis::unrank: index out of range");
    }
    Bits x = 0;
    int pos = m_ - 1;
    for (int j = k_; j >= 1; --j) {
        while (binom(pos, j) > index) {
            --pos;
        }
        x |= Bits{1} << pos;
        index -= binom(pos, j);
        --pos;
    }
    return x;
}

WeightBasis::Iterator &WeightBasis::Iterator::operator++() {
    if (cur_ == end_) {
        cur_ = kEnd;
        return *this;
    }
    // Gosper's hack: next integer with the same popcount.
    const Bits c = cur_ & (~cur_ + 1);
    const Bits r = cur_ + c;
    cur_ = (((r ^ cur_) >> 2) / c) | r;
    return *this;
}

WeightBasis::Iterator WeightBasis::begin() const {
    const Bits first = k_ == 0 ? 0 : (Bits{1} << k_) - 1;
    const Bits last = first << (m_ - k_);
    return Iterator(first, last);
}

WeightBasis::Iterator WeightBasis::end() const { return Iterator(kEnd, kEnd); }

std::vector<Bits> WeightBasis::elements() const {
    std::vector<Bits> out;
    out.reserve(size_);
    for (Bits x : *this) {
        out.push_back(x);
    }
    return out;
}

std::vector<Bits> subsets(int universe, int size) { return WeightBasis(universe, size).elements(); }

Eigen::SparseMatrix<double> johnson_adjacency(int m, int k) {
    if (k < 1 || k > m - 1) {
        throw std::invalid_argument("johnson_adjacency: need 1 <= k <= m-1");
    }
    const WeightBasis basis(m, k);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(basis.size() * static_cast<std::size_t>(k * (m - k)));
    const Bits full = (Bits{1} << m) - 1;
    std::size_t row = 0;
    for (Bits u : basis) {
        for (Bits ones = u; ones != 0; ones &= ones - 1) {
            const Bits a = ones & (~ones + 1);
            for (Bits zeros = ~u & full; zeros != 0; zeros &= zeros - 1) {
                const Bits b = zeros & (~zeros + 1);
                entries.emplace_back(row, basis.rank(u ^ a ^ b), 1.0);
            }
        }
        ++row;
    }
    Eigen::SparseMatrix<double> adj(basis.size(), basis.size());
    adj.setFromTriplets(entries.begin(), entries.end());
    return adj;
}

long johnson_eigenvalue(int m, int k, int l) {
    if (k < 0 || k > m || l < 0 || l > std::min(k, m - k)) {
        throw std::invalid_argument("johnson_eigenvalue: l out of range");
    }
    return static_cast<long>(k) * (m - k) - static_cast<long>(l) * (m + 1 - l);
}

std::uint64_t johnson_multiplicity(int m, int l) {
    if (l == 0) {
        return 1;
    }
    return binom(m, l) - binom(m, l - 1);
}

Eigen::VectorXd sector_projector(int m, Bits subset, int w) {
    const std::size_t dim = std::size_t{1} << m;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    if (w < 0) {
        return diag;
    }
    for (std::size_t x = 0; x < dim; ++x) {
        if (in_sector(x, subset, w)) {
            diag[static_cast<Eigen::Index>(x)] = 1.0;
        }
    }
    return diag;
}

Bits extract_bits(Bits x, Bits mask) {
    Bits out = 0;
    for (int bit = 63; bit >= 0; --bit) {
        if ((mask >> bit) & 1) {
            out = (out << 1) | ((x >> bit) & 1);
        }
    }
    return out;
}

Bits deposit_bits(Bits packed, Bits mask) {
    Bits out = 0;
    for (int bit = 0; bit < 64 && mask != 0; ++bit) {
        if ((mask >> bit) & 1) {
            out |= (packed & 1) << bit;
            packed >>= 1;
        }
    }
    return out;
}

} // namespace aqs::symcomb

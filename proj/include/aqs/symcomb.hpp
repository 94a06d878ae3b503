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

/**
 * @file
 * Combinatorics over Hamming-weight classes of bit strings.
 *
 * Bit-string convention used throughout the project: an m-qubit basis state
 * |z_1 z_2 ... z_m> is stored at index sum_i z_i 2^(m-i), i.e. qubit 1 is the
 * most significant bit. Lexicographic order over strings is then increasing
 * integer order, and every weight sector is enumerated in that order.
 */

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace aqs::symcomb {

using Bits = std::uint64_t;

/// Exact binomial coefficient C(m, k); zero when k > m.
/// Throws std::overflow_error if the result does not fit in 64 bits.
std::uint64_t binom(unsigned m, unsigned k);

/// Binomial coefficient in extended precision, for sizes beyond 64 bits
/// (C(2n, n) up to n ~ 2000).
long double binom_real(unsigned m, unsigned k);

inline int weight(Bits x) { return __builtin_popcountll(x); }

/// Bit mask of qubit `q` (0-based) in an m-qubit register.
inline Bits qubit_bit(int m, int q) { return Bits{1} << (m - 1 - q); }

/**
 * The set B_{m,k} of m-bit strings of Hamming weight k, in lexicographic
 * order. rank/unrank use the combinatorial number system.
 */
class WeightBasis {
  public:
    WeightBasis(int m, int k);

    int qubits() const { return m_; }
    int weight() const { return k_; }
    std::size_t size() const { return size_; }

    std::size_t rank(Bits x) const;
    Bits unrank(std::size_t index) const;

    /// All members in order. Materialised; fine for the sizes used here.
    std::vector<Bits> elements() const;

    class Iterator {
      public:
        Iterator(Bits current, Bits end) : cur_(current), end_(end) {}
        Bits operator*() const { return cur_; }
        Iterator &operator++();
        bool operator==(const Iterator &o) const { return cur_ == o.cur_; }
        bool operator!=(const Iterator &o) const { return cur_ != o.cur_; }

      private:
        Bits cur_;
        Bits end_;
    };
    Iterator begin() const;
    Iterator end() const;

  private:
    int m_;
    int k_;
    std::size_t size_;
};

/// Every `size`-element subset of a `universe`-qubit register, as qubit masks
/// in the same lexicographic order as WeightBasis(universe, size).
std::vector<Bits> subsets(int universe, int size);

/// Adjacency matrix of the Johnson graph J(m, k) over B_{m,k}.
Eigen::SparseMatrix<double> johnson_adjacency(int m, int k);

/// Eigenvalue k(m-k) - l(m+1-l), the (l+1)-th largest of J(m, k).
long johnson_eigenvalue(int m, int k, int l);

/// Multiplicity C(m,l) - C(m,l-1) of johnson_eigenvalue(m, k, l).
std::uint64_t johnson_multiplicity(int m, int l);

/**
 * Diagonal of the projector Z_A^w = sum_{z in B_{|A|,w}} |z><z|_A on an
 * m-qubit register, where A is given as a qubit mask. A negative weight (or
 * one above |A|) gives the zero operator.
 */
Eigen::VectorXd sector_projector(int m, Bits subset, int w);

/// True iff basis state x lies in the range of Z_A^w.
inline bool in_sector(Bits x, Bits subset, int w) { return w >= 0 && weight(x & subset) == w; }

/// Compresses the bits of x selected by `mask` into a |mask|-bit index,
/// keeping their relative order (lowest-numbered qubit stays most significant).
Bits extract_bits(Bits x, Bits mask);

/// Inverse of extract_bits: scatters the low |mask| bits of `packed` into mask.
Bits deposit_bits(Bits packed, Bits mask);

} // namespace aqs::symcomb

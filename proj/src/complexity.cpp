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

#include "aqs/complexity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aqs/state.hpp"

namespace aqs::qsv {

namespace {

std::uint64_t ceil_count(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("sample count is not a finite nonnegative number");
    }
    return static_cast<std::uint64_t>(std::ceil(x));
}

} // namespace

SampleComplexity sample_complexity(int n, double q0, double epsilon, double delta, double p) {
    if (n < 3) {
        throw std::invalid_argument("sample_complexity: need n >= 3");
    }
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("sample_complexity: epsilon must lie in (0,1]");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("sample_complexity: delta must lie in (0,1)");
    }
    if (!(q0 > 0.0 && q0 < 1.0)) {
        throw std::invalid_argument("sample_complexity: q0 must lie in (0,1)");
    }
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("sample_complexity: p must lie in [0,1)");
    }
    const double log_term = std::log(1.0 / delta) / epsilon;
    const double q1 = 1.0 - q0;
    const double wallis = q0 * std::pow(4.0, n) / (2.0 * q1 * std::sqrt(std::numbers::pi * n));
    SampleComplexity out{};
    out.johnson_term = ceil_count((2.0 * n - 1.0) * log_term);
    out.ghz_term = ceil_count((wallis + 1.0) / (1.0 - p) * log_term);
    out.copies = std::max(out.johnson_term, out.ghz_term);
    return out;
}

std::uint64_t exact_copy_bound(double nu, double epsilon, double delta) {
    const double x = nu * epsilon;
    if (!(x > 0.0 && x <= 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("exact_copy_bound: need 0 < nu*eps <= 1 and 0 < delta < 1");
    }
    if (x == 1.0) {
        return 1;
    }
    return ceil_count(std::log(delta) / std::log1p(-x));
}

double failure_bound(double nu, double epsilon, std::uint64_t copies) {
    const double x = nu * epsilon;
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("failure_bound: need 0 <= nu*eps <= 1");
    }
    return std::pow(1.0 - x, static_cast<double>(copies));
}

double pauli_witness_bound(int n, double q0) {
    if (!(q0 > 0.0 && q0 < 1.0)) {
        throw std::invalid_argument("pauli_witness_bound: q0 must lie in (0,1)");
    }
    const double c_nn = static_cast<double>(symcomb::binom_real(2 * n, n));
    return 2.0 * std::sqrt(2.0 * q0 * (1.0 - q0) / c_nn);
}

double pauli_witness_value(int n, double q0) {
    if (n > 8) {
        throw std::invalid_argument("pauli_witness_value: need n <= 8");
    }
    const PureState psi = make_target(n, q0);
    PureState flipped = psi;
    for (int q = 0; q < n; ++q) {
        apply_x(flipped, q);
    }
    return psi.inner(flipped).real();
}

} // namespace aqs::qsv

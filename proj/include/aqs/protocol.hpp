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

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqs/channel.hpp"
#include "aqs/rng.hpp"
#include "aqs/state.hpp"

namespace aqs::qsv {

/// Which sub-protocol ran on the unmeasured half.
enum class Branch { GhzLike, Dicke, GhzLikeFlipped };
std::string to_string(Branch b);

/// Record of one run of the GHZ-like sub-protocol. Qubit labels are 1-based.
struct GhzLikeRecord {
    int a = 0;                ///< 0: Z test, 1: phase test
    int k = 0;                ///< special qubit (a = 1 only)
    std::vector<int> qubits;  ///< register labels of the measured half
    std::vector<int> r;       ///< r_i per qubit (a = 1), r_k derived
    std::vector<int> o;       ///< o_i per qubit; o_k is the derived parity
    int s = 0;                ///< Z exponent of the special basis (a = 1)
    int final_outcome = 0;    ///< 0 = first POVM element (a = 1)
};

/// Record of one run of the Dicke sub-protocol. Qubit labels are 1-based.
struct DickeRecord {
    int k = 0;               ///< excitation number being verified
    int k1 = 0;              ///< pair, register labels
    int k2 = 0;
    std::vector<int> qubits; ///< register labels of the measured half
    std::vector<int> o;      ///< outcome per qubit, -1 if not measured
    std::string pair_basis;  ///< "Z", "X" or "none"
};

struct CopyVerdict {
    std::uint64_t copy = 0;
    std::vector<int> subset;     ///< R, sorted 1-based labels
    std::vector<int> z_outcomes; ///< Z outcomes on R, same order
    Branch branch = Branch::GhzLike;
    std::optional<GhzLikeRecord> ghz;
    std::optional<DickeRecord> dicke;
    bool accepted = false;
};

struct ProtocolParams {
    int n;
    double q0;
    double p = 0.0;
};

/// Runs the combined verification protocol once on a 2n-qubit copy.
CopyVerdict verify_copy(const PureState &copy, const ProtocolParams &params, RngStream &rng);
/// Mixed copies are handled by sampling a pure component of rho.
CopyVerdict verify_copy(const DensityOperator &copy, const ProtocolParams &params, RngStream &rng);

/// Sub-protocols on an explicit list of register qubits (0-based). Exposed for tests.
bool run_ghz_like(PureState &psi, const std::vector<int> &qubits, double p, double lambda0, bool flipped,
                  RngStream &rng, GhzLikeRecord *record = nullptr);
bool run_dicke(PureState &psi, const std::vector<int> &qubits, int k, RngStream &rng,
               DickeRecord *record = nullptr);

struct VerificationPlan {
    int n;
    double q0;
    double p = 0.0;
    double epsilon;
    double delta;
    std::uint64_t copies;

    /// Plan with copies = sample_complexity(n, q0, epsilon, delta, p).
    static VerificationPlan make(int n, double q0, double epsilon, double delta, double p = 0.0);
};

class SourceExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Yields copy `index`, or nullopt when the source has run dry.
using CopySource = std::function<std::optional<PureState>(std::uint64_t index, RngStream &rng)>;

struct SessionResult {
    bool accepted = true;
    std::uint64_t copies_checked = 0;
    std::vector<CopyVerdict> verdicts;
};

/**
 * Verifies plan.copies copies from `source`. The session accepts iff every
 * copy is accepted. With stop_on_reject the session ends at the first
 * rejected copy (the verdict is already decided).
 */
SessionResult verify_batch(const CopySource &source, const VerificationPlan &plan, RngStream &rng,
                           bool stop_on_reject = false, bool keep_transcript = true);

/// Copies of the target passed through `noise` independently.
CopySource noisy_target_source(int n, double q0, const KrausChannel &noise);

} // namespace aqs::qsv

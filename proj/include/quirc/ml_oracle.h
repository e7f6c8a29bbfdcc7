// Copyright 2026 The QuIRC Workbench Authors
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
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "quirc/circuit.h"
#include "quirc/detector_graph.h"

namespace quirc {

/// One mutually exclusive Pauli outcome of one noise channel.
struct RawFault {
    uint32_t instruction;
    uint32_t channel;  // global channel index; faults of one channel never co-occur
    double p;
    double weight;  // ln((1 - p) / p)
    FaultSignature signature;
};

/// Every Pauli outcome of every noise channel in `c` with its signature,
/// found by propagating a single sparse frame per elementary flip. This path
/// shares no code with the bit-parallel frame simulator.
std::vector<RawFault> enumerate_raw_faults(const Circuit &c);

/// No fault subset of the permitted size explains the syndrome.
class OracleIncomplete : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    uint64_t observables = 0;
    double weight = 0;
    /// Indices into the raw fault list of the chosen explanation.
    std::vector<uint32_t> faults;
    /// Distinct observable masks among all minimum-weight explanations
    /// (weights equal to relative 1e-12). Size > 1 means a tie.
    std::vector<uint64_t> optimal_observables;

    bool tie() const {
        return optimal_observables.size() > 1;
    }
};

/// Exhaustive minimum-weight search over raw fault subsets. Reusable across
/// syndromes of one circuit.
class MlOracle {
   public:
    explicit MlOracle(const Circuit &c);
    explicit MlOracle(std::vector<RawFault> faults);

    /// Lowest total weight explanation with at most max_faults faults (≤ 3),
    /// ties broken by the lexicographically smallest sorted index tuple.
    OracleResult decode(std::span<const uint32_t> syndrome, size_t max_faults) const;

    const std::vector<RawFault> &faults() const {
        return faults_;
    }

   private:
    struct Hash {
        size_t operator()(const std::vector<uint32_t> &v) const;
    };

    std::vector<RawFault> faults_;
    std::unordered_map<std::vector<uint32_t>, std::vector<uint32_t>, Hash> by_signature_;
    std::vector<std::vector<uint32_t>> by_detector_;
};

/// Convenience wrapper that builds a fresh oracle.
OracleResult ml_oracle_decode(const Circuit &c, std::span<const uint32_t> syndrome, size_t max_faults);

}  // namespace quirc

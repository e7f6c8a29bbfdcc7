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

#include <complex>
#include <cstdint>
#include <vector>

#include "quirc/gate.h"
#include "quirc/pauli_string.h"
#include "quirc/tableau.h"

namespace quirc::testing {

/// One step of a test program: a Clifford gate, or a Pauli measurement with a
/// forced outcome.
struct DenseOp {
    Gate gate;
    std::vector<uint32_t> targets;
    PauliString measured{};  // used when gate is a measurement marker (M_Z is used for all Paulis)
    bool forced_outcome = false;

    static DenseOp gate_op(Gate g, std::vector<uint32_t> t) {
        return DenseOp{g, std::move(t)};
    }
    static DenseOp measure_op(PauliString p, bool outcome) {
        return DenseOp{Gate::M_Z, {}, std::move(p), outcome};
    }
};

/// Exact state vector for at most 12 qubits. Qubit q is bit q of the basis index.
class DenseState {
   public:
    static constexpr size_t MAX_QUBITS = 12;

    explicit DenseState(size_t num_qubits);

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<std::complex<double>> &amplitudes() const {
        return amps_;
    }

    void apply(Gate gate, const std::vector<uint32_t> &targets);
    void apply_pauli(const PauliString &p);

    /// Probability of outcome `outcome` when measuring the Hermitian Pauli p.
    double probability(const PauliString &p, bool outcome) const;
    /// Projects onto the outcome and renormalizes. Throws if the outcome has
    /// zero probability.
    void project(const PauliString &p, bool outcome);

    double expectation(const PauliString &p) const;

   private:
    std::vector<std::complex<double>> pauli_applied(const PauliString &p) const;

    size_t n_;
    std::vector<std::complex<double>> amps_;
};

/// Runs `ops` from |0...0>. Throws std::length_error when n > 12.
std::vector<std::complex<double>> dense_state_oracle(size_t num_qubits, const std::vector<DenseOp> &ops);

/// The state vector stabilized by the tableau (n <= 12), normalized, with the
/// first nonzero amplitude made real and positive.
std::vector<std::complex<double>> tableau_state_vector(const StabilizerTableau &t);

/// True when the two vectors agree up to a global phase.
bool equal_up_to_global_phase(const std::vector<std::complex<double>> &a, const std::vector<std::complex<double>> &b,
                              double tol = 1e-9);

}  // namespace quirc::testing

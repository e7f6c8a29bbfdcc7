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
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "quirc/gate.h"
#include "quirc/pauli_string.h"

namespace quirc {

struct MeasureResult {
    bool outcome;        // false <=> eigenvalue +1
    bool deterministic;  // true when the Pauli was already in the stabilizer group (up to sign)
};

/// Stabilizer state in destabilizer/stabilizer form.
///
/// Row i < n is destabilizer i, row n + i is stabilizer i. Rows carry a phase
/// mod 4; for a valid state every stored row is Hermitian.
class StabilizerTableau {
   public:
    /// |0...0>: stabilizers Z_i, destabilizers X_i.
    explicit StabilizerTableau(size_t num_qubits);

    size_t num_qubits() const {
        return n_;
    }
    const PauliString &destabilizer(size_t i) const {
        return rows_[i];
    }
    const PauliString &stabilizer(size_t i) const {
        return rows_[n_ + i];
    }

    /// Conjugates every row by a Clifford gate. Two-qubit gates take target
    /// pairs. Throws std::out_of_range / std::invalid_argument on bad targets.
    void apply(Gate gate, std::span<const uint32_t> targets);

    void h(size_t q);
    void s(size_t q);
    void s_dag(size_t q);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);
    void cx(size_t control, size_t target);
    void cz(size_t a, size_t b);
    void swap(size_t a, size_t b);

    /// Measures a Hermitian Pauli. Random outcomes are fair coin flips from rng.
    MeasureResult measure(const PauliString &p, std::mt19937_64 &rng);
    /// Measures a Hermitian Pauli, resolving a random outcome to `forced`.
    MeasureResult measure_forced(const PauliString &p, bool forced);
    /// Outcome of measuring p if it is deterministic, without changing the state.
    std::optional<bool> peek(const PauliString &p) const;

    void reset_z(size_t q);
    void reset_x(size_t q);

    /// Checks that stabilizers commute pairwise, destabilizers commute pairwise,
    /// and destabilizer i anticommutes exactly with stabilizer i.
    bool has_valid_symplectic_form() const;

    bool operator==(const StabilizerTableau &other) const = default;

   private:
    MeasureResult measure_impl(const PauliString &p, std::optional<bool> forced, std::mt19937_64 *rng);
    void check_qubit(size_t q) const;

    size_t n_;
    std::vector<PauliString> rows_;
};

}  // namespace quirc

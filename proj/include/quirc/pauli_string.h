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
#include <string>
#include <string_view>
#include <vector>

namespace quirc {

inline size_t words_for_bits(size_t bits) {
    return (bits + 63) / 64;
}

/// A Pauli operator on n qubits with a phase in {+1, +i, -1, -i}.
///
/// Qubit q carries bits (x, z) with (1,0)=X, (0,1)=Z, (1,1)=Y; the operator is
/// i^phase times the tensor product of those Hermitian single-qubit Paulis.
class PauliString {
   public:
    explicit PauliString(size_t num_qubits = 0);

    /// Parses text such as "+XYZ_", "-iZZ" or "XIX". 'I' and '_' are identity.
    static PauliString from_str(std::string_view text);

    /// Single-qubit Pauli ('X', 'Y' or 'Z') on qubit `q` of an n-qubit string.
    static PauliString single(size_t num_qubits, size_t q, char pauli);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_words() const {
        return xs_.size();
    }

    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    void set(size_t q, char pauli);
    char pauli_at(size_t q) const;

    /// Exponent of i, always in [0, 4).
    uint8_t phase() const {
        return phase_;
    }
    void set_phase(uint8_t p) {
        phase_ = p & 3;
    }
    /// True for phase +-1.
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }
    /// Sign bit of a Hermitian string: false for +1, true for -1.
    bool sign() const {
        return phase_ == 2;
    }

    std::span<uint64_t> xs() {
        return xs_;
    }
    std::span<uint64_t> zs() {
        return zs_;
    }
    std::span<const uint64_t> xs() const {
        return xs_;
    }
    std::span<const uint64_t> zs() const {
        return zs_;
    }

    bool is_identity() const;
    size_t weight() const;

    /// Right-multiplies in place: *this = (*this) * rhs, phase exact.
    PauliString &operator*=(const PauliString &rhs);
    PauliString operator*(const PauliString &rhs) const;

    bool commutes(const PauliString &other) const;

    bool operator==(const PauliString &other) const = default;

    /// Signed text form, e.g. "+X_Z" or "-iYY".
    std::string str() const;

   private:
    size_t num_qubits_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    uint8_t phase_;
};

/// Phase exponent (mod 4) picked up when the bit-packed Paulis (x1,z1) and
/// (x2,z2) are multiplied left to right, ignoring their own phases.
uint8_t product_phase(std::span<const uint64_t> x1, std::span<const uint64_t> z1, std::span<const uint64_t> x2,
                      std::span<const uint64_t> z2);

/// True when the two bit-packed Paulis anticommute.
bool anticommutes(std::span<const uint64_t> x1, std::span<const uint64_t> z1, std::span<const uint64_t> x2,
                  std::span<const uint64_t> z2);

}  // namespace quirc

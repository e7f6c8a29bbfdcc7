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

#include "quirc/pauli_string.h"

#include <bit>
#include <stdexcept>

namespace quirc {

uint8_t product_phase(std::span<const uint64_t> x1, std::span<const uint64_t> z1, std::span<const uint64_t> x2,
                      std::span<const uint64_t> z2) {
    // Per qubit: X*Y, Y*Z, Z*X contribute +i; the reversed orders contribute -i.
    int64_t total = 0;
    for (size_t w = 0; w < x1.size(); w++) {
        uint64_t a = x1[w], b = z1[w], c = x2[w], d = z2[w];
        uint64_t plus = (a & ~b & c & d) | (a & b & ~c & d) | (~a & b & c & ~d);
        uint64_t minus = (a & b & c & ~d) | (a & ~b & ~c & d) | (~a & b & c & d);
        total += std::popcount(plus);
        total -= std::popcount(minus);
    }
    return static_cast<uint8_t>(((total % 4) + 4) % 4);
}

bool anticommutes(std::span<const uint64_t> x1, std::span<const uint64_t> z1, std::span<const uint64_t> x2,
                  std::span<const uint64_t> z2) {
    uint64_t acc = 0;
    for (size_t w = 0; w < x1.size(); w++) {
        acc ^= (x1[w] & z2[w]) ^ (z1[w] & x2[w]);
    }
    return std::popcount(acc) & 1;
}

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for_bits(num_qubits), 0), zs_(words_for_bits(num_qubits), 0), phase_(0) {
}

PauliString PauliString::from_str(std::string_view text) {
    uint8_t phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') {
            phase = 2;
        }
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase = (phase + 1) & 3;
        text.remove_prefix(1);
    }
    PauliString result(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        result.set(q, text[q]);
    }
    result.phase_ = phase;
    return result;
}

PauliString PauliString::single(size_t num_qubits, size_t q, char pauli) {
    if (q >= num_qubits) {
        throw std::out_of_range("Qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits) +
                                " qubits.");
    }
    PauliString result(num_qubits);
    result.set(q, pauli);
    return result;
}

void PauliString::set_x(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    if (v) {
        xs_[q >> 6] |= mask;
    } else {
        xs_[q >> 6] &= ~mask;
    }
}

void PauliString::set_z(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    if (v) {
        zs_[q >> 6] |= mask;
    } else {
        zs_[q >> 6] &= ~mask;
    }
}

void PauliString::set(size_t q, char pauli) {
    switch (pauli) {
        case 'I':
        case '_':
            set_x(q, false);
            set_z(q, false);
            break;
        case 'X':
            set_x(q, true);
            set_z(q, false);
            break;
        case 'Y':
            set_x(q, true);
            set_z(q, true);
            break;
        case 'Z':
            set_x(q, false);
            set_z(q, true);
            break;
        default:
            throw std::invalid_argument(std::string("Not a Pauli character: '") + pauli + "'.");
    }
}

char PauliString::pauli_at(size_t q) const {
    static constexpr char table[4] = {'_', 'X', 'Z', 'Y'};
    return table[x(q) | (z(q) << 1)];
}

bool PauliString::is_identity() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    if (rhs.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Pauli string size mismatch.");
    }
    uint8_t extra = product_phase(xs_, zs_, rhs.xs_, rhs.zs_);
    phase_ = (phase_ + rhs.phase_ + extra) & 3;
    for (size_t w = 0; w < xs_.size(); w++) {
        xs_[w] ^= rhs.xs_[w];
        zs_[w] ^= rhs.zs_[w];
    }
    return *this;
}

PauliString PauliString::operator*(const PauliString &rhs) const {
    PauliString result = *this;
    result *= rhs;
    return result;
}

bool PauliString::commutes(const PauliString &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Pauli string size mismatch.");
    }
    return !anticommutes(xs_, zs_, other.xs_, other.zs_);
}

std::string PauliString::str() const {
    static constexpr const char *prefixes[4] = {"+", "+i", "-", "-i"};
    std::string result = prefixes[phase_];
    result.reserve(result.size() + num_qubits_);
    for (size_t q = 0; q < num_qubits_; q++) {
        result.push_back(pauli_at(q));
    }
    return result;
}

}  // namespace quirc

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

#include "quirc/tableau.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace quirc {

namespace {

inline uint64_t bit_mask(size_t q) {
    return uint64_t{1} << (q & 63);
}

inline void flip_sign(PauliString &row) {
    row.set_phase(row.phase() ^ 2);
}

}  // namespace

StabilizerTableau::StabilizerTableau(size_t num_qubits) : n_(num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("A tableau needs at least one qubit.");
    }
    rows_.reserve(2 * n_);
    for (size_t i = 0; i < n_; i++) {
        rows_.push_back(PauliString::single(n_, i, 'X'));
    }
    for (size_t i = 0; i < n_; i++) {
        rows_.push_back(PauliString::single(n_, i, 'Z'));
    }
}

void StabilizerTableau::check_qubit(size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("Qubit target " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                                "-qubit tableau.");
    }
}

void StabilizerTableau::apply(Gate gate, std::span<const uint32_t> targets) {
    const GateInfo &info = gate_info(gate);
    if (!info.unitary) {
        throw std::invalid_argument("Gate " + std::string(info.name) + " is not a Clifford unitary.");
    }
    if (targets.size() % info.arity != 0) {
        throw std::invalid_argument("Gate " + std::string(info.name) + " needs a multiple of " +
                                    std::to_string(info.arity) + " targets.");
    }
    std::vector<uint32_t> seen(targets.begin(), targets.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw std::out_of_range("Duplicate qubit target for gate " + std::string(info.name) + ".");
    }
    for (uint32_t q : targets) {
        check_qubit(q);
    }
    for (size_t k = 0; k < targets.size(); k += info.arity) {
        size_t a = targets[k];
        switch (gate) {
            case Gate::H:
                h(a);
                break;
            case Gate::S:
                s(a);
                break;
            case Gate::S_DAG:
                s_dag(a);
                break;
            case Gate::X:
                x(a);
                break;
            case Gate::Y:
                y(a);
                break;
            case Gate::Z:
                z(a);
                break;
            case Gate::CX:
                cx(a, targets[k + 1]);
                break;
            case Gate::CZ:
                cz(a, targets[k + 1]);
                break;
            case Gate::SWAP:
                swap(a, targets[k + 1]);
                break;
            default:
                break;
        }
    }
}

void StabilizerTableau::h(size_t q) {
    check_qubit(q);
    size_t w = q >> 6;
    uint64_t m = bit_mask(q);
    for (auto &row : rows_) {
        uint64_t &xw = row.xs()[w];
        uint64_t &zw = row.zs()[w];
        bool xb = xw & m, zb = zw & m;
        if (xb && zb) {
            flip_sign(row);
        }
        if (xb != zb) {
            xw ^= m;
            zw ^= m;
        }
    }
}

void StabilizerTableau::s(size_t q) {
    check_qubit(q);
    size_t w = q >> 6;
    uint64_t m = bit_mask(q);
    for (auto &row : rows_) {
        uint64_t xw = row.xs()[w];
        uint64_t &zw = row.zs()[w];
        if ((xw & m) && (zw & m)) {
            flip_sign(row);
        }
        zw ^= xw & m;
    }
}

void StabilizerTableau::s_dag(size_t q) {
    check_qubit(q);
    size_t w = q >> 6;
    uint64_t m = bit_mask(q);
    for (auto &row : rows_) {
        uint64_t xw = row.xs()[w];
        uint64_t &zw = row.zs()[w];
        if ((xw & m) && !(zw & m)) {
            flip_sign(row);
        }
        zw ^= xw & m;
    }
}

void StabilizerTableau::x(size_t q) {
    check_qubit(q);
    size_t w = q >> 6;
    uint64_t m = bit_mask(q);
    for (auto &row : rows_) {
        if (row.zs()[w] & m) {
            flip_sign(row);
        }
    }
}

void StabilizerTableau::y(size_t q) {
    check_qubit(q);
    size_t w = q >> 6;
    uint64_t m = bit_mask(q);
    for (auto &row : rows_) {
        if ((row.xs()[w] ^ row.zs()[w]) & m) {
            flip_sign(row);
        }
    }
}

void StabilizerTableau::z(size_t q) {
    check_qubit(q);
    size_t w = q >> 6;
    uint64_t m = bit_mask(q);
    for (auto &row : rows_) {
        if (row.xs()[w] & m) {
            flip_sign(row);
        }
    }
}

void StabilizerTableau::cx(size_t control, size_t target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::out_of_range("CX control and target coincide.");
    }
    for (auto &row : rows_) {
        bool xc = row.x(control), zc = row.z(control), xt = row.x(target), zt = row.z(target);
        if (xc && zt && (xt == zc)) {
            flip_sign(row);
        }
        row.set_x(target, xt ^ xc);
        row.set_z(control, zc ^ zt);
    }
}

void StabilizerTableau::cz(size_t a, size_t b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::out_of_range("CZ targets coincide.");
    }
    for (auto &row : rows_) {
        bool xa = row.x(a), za = row.z(a), xb = row.x(b), zb = row.z(b);
        if (xa && xb && (za != zb)) {
            flip_sign(row);
        }
        row.set_z(a, za ^ xb);
        row.set_z(b, zb ^ xa);
    }
}

void StabilizerTableau::swap(size_t a, size_t b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::out_of_range("SWAP targets coincide.");
    }
    for (auto &row : rows_) {
        bool xa = row.x(a), za = row.z(a);
        row.set_x(a, row.x(b));
        row.set_z(a, row.z(b));
        row.set_x(b, xa);
        row.set_z(b, za);
    }
}

std::optional<bool> StabilizerTableau::peek(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Measured Pauli has the wrong qubit count.");
    }
    for (size_t i = 0; i < n_; i++) {
        if (!rows_[n_ + i].commutes(p)) {
            return std::nullopt;
        }
    }
    PauliString acc(n_);
    for (size_t i = 0; i < n_; i++) {
        if (!rows_[i].commutes(p)) {
            acc *= rows_[n_ + i];
        }
    }
    return acc.phase() != p.phase();
}

MeasureResult StabilizerTableau::measure_impl(const PauliString &p, std::optional<bool> forced,
                                              std::mt19937_64 *rng) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Measured Pauli has the wrong qubit count.");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("Cannot measure a Pauli with imaginary phase: " + p.str());
    }
    size_t pivot = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (!rows_[r].commutes(p)) {
            pivot = r;
            break;
        }
    }
    if (pivot == 2 * n_) {
        return {*peek(p), true};
    }

    bool outcome = forced.has_value() ? *forced : static_cast<bool>((*rng)() & 1);
    for (size_t r = 0; r < 2 * n_; r++) {
        if (r != pivot && r != pivot - n_ && !rows_[r].commutes(p)) {
            rows_[r] *= rows_[pivot];
        }
    }
    rows_[pivot - n_] = rows_[pivot];
    rows_[pivot] = p;
    rows_[pivot].set_phase(p.phase() ^ (outcome ? 2 : 0));
    return {outcome, false};
}

MeasureResult StabilizerTableau::measure(const PauliString &p, std::mt19937_64 &rng) {
    return measure_impl(p, std::nullopt, &rng);
}

MeasureResult StabilizerTableau::measure_forced(const PauliString &p, bool forced) {
    return measure_impl(p, forced, nullptr);
}

void StabilizerTableau::reset_z(size_t q) {
    check_qubit(q);
    if (measure_forced(PauliString::single(n_, q, 'Z'), false).outcome) {
        x(q);
    }
}

void StabilizerTableau::reset_x(size_t q) {
    check_qubit(q);
    if (measure_forced(PauliString::single(n_, q, 'X'), false).outcome) {
        z(q);
    }
}

bool StabilizerTableau::has_valid_symplectic_form() const {
    for (size_t i = 0; i < 2 * n_; i++) {
        if (!rows_[i].is_hermitian()) {
            return false;
        }
        for (size_t j = i + 1; j < 2 * n_; j++) {
            bool expect_anti = (j == i + n_);
            if (rows_[i].commutes(rows_[j]) == expect_anti) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace quirc

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
#include <string_view>

namespace quirc {

/// Every opcode understood by the circuit representation. The first nine are
/// the Clifford unitaries accepted by the tableau simulator.
enum class Gate : uint8_t {
    H,
    S,
    S_DAG,
    X,
    Y,
    Z,
    CX,
    CZ,
    SWAP,
    R_Z,
    R_X,
    M_Z,
    M_X,
    M_Y,
    X_ERROR,
    Z_ERROR,
    DEPOLARIZE1,
    DEPOLARIZE2,
};

inline constexpr size_t NUM_GATES = 18;

struct GateInfo {
    std::string_view name;
    uint8_t arity;  // targets consumed per application (1 or 2)
    bool unitary;
    bool noise;
    bool measurement;
    bool reset;
};

const GateInfo &gate_info(Gate gate);
std::string_view gate_name(Gate gate);
std::optional<Gate> gate_from_name(std::string_view name);

/// Inverse of a Clifford gate; throws std::invalid_argument for non-unitaries.
Gate gate_inverse(Gate gate);

inline bool is_clifford(Gate gate) {
    return gate_info(gate).unitary;
}

}  // namespace quirc

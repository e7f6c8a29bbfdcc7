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

#include "quirc/gate.h"

#include <array>
#include <stdexcept>
#include <string>

namespace quirc {

namespace {

constexpr std::array<GateInfo, NUM_GATES> GATE_TABLE{{
    {"H", 1, true, false, false, false},
    {"S", 1, true, false, false, false},
    {"S_DAG", 1, true, false, false, false},
    {"X", 1, true, false, false, false},
    {"Y", 1, true, false, false, false},
    {"Z", 1, true, false, false, false},
    {"CX", 2, true, false, false, false},
    {"CZ", 2, true, false, false, false},
    {"SWAP", 2, true, false, false, false},
    {"R_Z", 1, false, false, false, true},
    {"R_X", 1, false, false, false, true},
    {"M_Z", 1, false, false, true, false},
    {"M_X", 1, false, false, true, false},
    {"M_Y", 1, false, false, true, false},
    {"X_ERROR", 1, false, true, false, false},
    {"Z_ERROR", 1, false, true, false, false},
    {"DEPOLARIZE1", 1, false, true, false, false},
    {"DEPOLARIZE2", 2, false, true, false, false},
}};

}  // namespace

const GateInfo &gate_info(Gate gate) {
    return GATE_TABLE[static_cast<size_t>(gate)];
}

std::string_view gate_name(Gate gate) {
    return gate_info(gate).name;
}

std::optional<Gate> gate_from_name(std::string_view name) {
    for (size_t k = 0; k < NUM_GATES; k++) {
        if (GATE_TABLE[k].name == name) {
            return static_cast<Gate>(k);
        }
    }
    return std::nullopt;
}

Gate gate_inverse(Gate gate) {
    switch (gate) {
        case Gate::S:
            return Gate::S_DAG;
        case Gate::S_DAG:
            return Gate::S;
        case Gate::H:
        case Gate::X:
        case Gate::Y:
        case Gate::Z:
        case Gate::CX:
        case Gate::CZ:
        case Gate::SWAP:
            return gate;
        default:
            throw std::invalid_argument("Gate " + std::string(gate_name(gate)) + " has no unitary inverse.");
    }
}

}  // namespace quirc

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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quirc/gate.h"

namespace quirc {

struct Instruction {
    Gate gate;
    std::vector<uint32_t> targets;
    double prob = 0.0;  // meaningful for noise channels only

    bool operator==(const Instruction &other) const = default;
};

/// Thrown by validation and parsing. `instruction` is the offending
/// instruction index when one applies.
class CircuitError : public std::invalid_argument {
   public:
    enum class Kind { Arity, TargetRange, Probability, Reference, Parse, Marker };

    CircuitError(Kind kind, std::optional<size_t> instruction, const std::string &message)
        : std::invalid_argument(message), kind(kind), instruction(instruction) {
    }

    Kind kind;
    std::optional<size_t> instruction;
};

/// An instruction list with detectors and observables over the global
/// measurement record. Record indices are assigned in instruction order.
struct Circuit {
    size_t num_qubits = 0;
    std::vector<Instruction> instructions;
    std::vector<std::vector<uint32_t>> detectors;
    std::vector<std::vector<uint32_t>> observables;

    /// Appends an instruction, widening num_qubits to cover its targets.
    /// Returns the instruction index.
    size_t append(Gate gate, std::vector<uint32_t> targets, double prob = 0.0);

    size_t count_measurements() const;

    bool operator==(const Circuit &other) const = default;
};

/// Returns the first violation, or nullopt when the circuit is valid.
std::optional<CircuitError> find_violation(const Circuit &c);

/// Throws the first violation found by find_violation.
void validate(const Circuit &c);

/// Text form, one instruction per line:
///   QUBITS n
///   OPCODE[(prob)] target...
///   DETECTOR rec...
///   OBSERVABLE rec...
/// Lines starting with '#' are comments.
std::string to_text(const Circuit &c);
/// Parses the text form and validates the result.
Circuit parse_circuit(std::string_view text);

std::ostream &operator<<(std::ostream &out, const Circuit &c);

}  // namespace quirc

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

#include "quirc/circuit.h"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

namespace quirc {

size_t Circuit::append(Gate gate, std::vector<uint32_t> targets, double prob) {
    for (uint32_t t : targets) {
        num_qubits = std::max<size_t>(num_qubits, size_t{t} + 1);
    }
    instructions.push_back({gate, std::move(targets), prob});
    return instructions.size() - 1;
}

size_t Circuit::count_measurements() const {
    size_t total = 0;
    for (const auto &inst : instructions) {
        if (gate_info(inst.gate).measurement) {
            total += inst.targets.size();
        }
    }
    return total;
}

std::optional<CircuitError> find_violation(const Circuit &c) {
    using K = CircuitError::Kind;
    for (size_t k = 0; k < c.instructions.size(); k++) {
        const auto &inst = c.instructions[k];
        const GateInfo &info = gate_info(inst.gate);
        std::string where = "instruction " + std::to_string(k) + " (" + std::string(info.name) + ")";
        if (inst.targets.size() % info.arity != 0) {
            return CircuitError(K::Arity, k, where + " needs an even number of targets.");
        }
        for (uint32_t t : inst.targets) {
            if (t >= c.num_qubits) {
                return CircuitError(K::TargetRange, k,
                                    where + " targets qubit " + std::to_string(t) + " beyond " +
                                        std::to_string(c.num_qubits) + " qubits.");
            }
        }
        if (info.arity == 2) {
            for (size_t j = 0; j < inst.targets.size(); j += 2) {
                if (inst.targets[j] == inst.targets[j + 1]) {
                    return CircuitError(K::TargetRange, k, where + " pairs a qubit with itself.");
                }
            }
        }
        if (info.noise) {
            if (!(inst.prob >= 0.0 && inst.prob <= 1.0)) {
                return CircuitError(K::Probability, k, where + " has probability outside [0, 1].");
            }
        } else if (inst.prob != 0.0) {
            return CircuitError(K::Probability, k, where + " is not a noise channel but carries a probability.");
        }
    }
    size_t measurements = c.count_measurements();
    auto check_refs = [&](const std::vector<std::vector<uint32_t>> &sets,
                          const char *label) -> std::optional<CircuitError> {
        for (size_t k = 0; k < sets.size(); k++) {
            for (uint32_t r : sets[k]) {
                if (r >= measurements) {
                    return CircuitError(K::Reference, std::nullopt,
                                        std::string(label) + " " + std::to_string(k) + " references record " +
                                            std::to_string(r) + " but the circuit has " +
                                            std::to_string(measurements) + " measurements.");
                }
            }
        }
        return std::nullopt;
    };
    if (auto e = check_refs(c.detectors, "DETECTOR")) {
        return e;
    }
    return check_refs(c.observables, "OBSERVABLE");
}

void validate(const Circuit &c) {
    if (auto e = find_violation(c)) {
        throw *e;
    }
}

namespace {

std::string format_prob(double p) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), p);
    return std::string(buf, res.ptr);
}

void write_list(std::ostringstream &out, const char *label, const std::vector<uint32_t> &refs) {
    out << label;
    for (uint32_t r : refs) {
        out << ' ' << r;
    }
    out << '\n';
}

uint32_t parse_index(std::string_view token, size_t line_no) {
    uint32_t value = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw CircuitError(CircuitError::Kind::Parse, std::nullopt,
                           "Line " + std::to_string(line_no) + ": bad index '" + std::string(token) + "'.");
    }
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
            k++;
        }
        size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
            k++;
        }
        if (k > start) {
            out.push_back(line.substr(start, k - start));
        }
    }
    return out;
}

}  // namespace

std::string to_text(const Circuit &c) {
    std::ostringstream out;
    out << "QUBITS " << c.num_qubits << '\n';
    for (const auto &inst : c.instructions) {
        const GateInfo &info = gate_info(inst.gate);
        out << info.name;
        if (info.noise) {
            out << '(' << format_prob(inst.prob) << ')';
        }
        for (uint32_t t : inst.targets) {
            out << ' ' << t;
        }
        out << '\n';
    }
    for (const auto &d : c.detectors) {
        write_list(out, "DETECTOR", d);
    }
    for (const auto &o : c.observables) {
        write_list(out, "OBSERVABLE", o);
    }
    return out.str();
}

Circuit parse_circuit(std::string_view text) {
    using K = CircuitError::Kind;
    Circuit c;
    std::optional<size_t> declared_qubits;
    size_t line_no = 0;
    while (!text.empty()) {
        size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        line_no++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        std::string_view head = tokens[0];
        std::vector<uint32_t> args;
        for (size_t k = 1; k < tokens.size(); k++) {
            args.push_back(parse_index(tokens[k], line_no));
        }
        if (head == "QUBITS") {
            if (args.size() != 1) {
                throw CircuitError(K::Parse, std::nullopt, "Line " + std::to_string(line_no) + ": QUBITS takes one value.");
            }
            declared_qubits = args[0];
            continue;
        }
        if (head == "DETECTOR") {
            c.detectors.push_back(std::move(args));
            continue;
        }
        if (head == "OBSERVABLE") {
            c.observables.push_back(std::move(args));
            continue;
        }
        double prob = 0.0;
        std::string_view name = head;
        if (auto open = head.find('('); open != std::string_view::npos) {
            if (head.back() != ')') {
                throw CircuitError(K::Parse, std::nullopt, "Line " + std::to_string(line_no) + ": unbalanced '('.");
            }
            name = head.substr(0, open);
            std::string_view num = head.substr(open + 1, head.size() - open - 2);
            auto res = std::from_chars(num.data(), num.data() + num.size(), prob);
            if (res.ec != std::errc() || res.ptr != num.data() + num.size()) {
                throw CircuitError(K::Parse, std::nullopt,
                                   "Line " + std::to_string(line_no) + ": bad probability '" + std::string(num) + "'.");
            }
        }
        auto gate = gate_from_name(name);
        if (!gate) {
            throw CircuitError(K::Parse, std::nullopt,
                               "Line " + std::to_string(line_no) + ": unknown opcode '" + std::string(name) + "'.");
        }
        if (gate_info(*gate).noise != (name.size() != head.size())) {
            throw CircuitError(K::Parse, std::nullopt,
                               "Line " + std::to_string(line_no) + ": probability must be given exactly for noise channels.");
        }
        c.append(*gate, std::move(args), prob);
    }
    if (declared_qubits) {
        if (*declared_qubits < c.num_qubits) {
            throw CircuitError(K::TargetRange, std::nullopt, "QUBITS declaration smaller than the largest target.");
        }
        c.num_qubits = *declared_qubits;
    }
    validate(c);
    return c;
}

std::ostream &operator<<(std::ostream &out, const Circuit &c) {
    return out << to_text(c);
}

}  // namespace quirc

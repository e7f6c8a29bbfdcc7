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

#include <gtest/gtest.h>

#include <sstream>

using namespace quirc;

TEST(circuit, empty_circuit_is_valid) {
    EXPECT_FALSE(find_violation(Circuit{}).has_value());
    EXPECT_NO_THROW(validate(Circuit{}));
}

TEST(circuit, dangling_detector_is_a_reference_error) {
    Circuit c;
    c.append(Gate::M_Z, {0, 1, 2});
    c.detectors.push_back({5});
    auto e = find_violation(c);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->kind, CircuitError::Kind::Reference);
}

TEST(circuit, odd_depolarize2_is_an_arity_error) {
    Circuit c;
    c.append(Gate::DEPOLARIZE2, {0, 1, 2}, 0.1);
    auto e = find_violation(c);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->kind, CircuitError::Kind::Arity);
    EXPECT_EQ(e->instruction, std::optional<size_t>(0));
}

TEST(circuit, probability_rules) {
    Circuit bad_range;
    bad_range.append(Gate::X_ERROR, {0}, 1.5);
    EXPECT_EQ(find_violation(bad_range)->kind, CircuitError::Kind::Probability);
    Circuit prob_on_gate;
    prob_on_gate.append(Gate::H, {0}, 0.5);
    EXPECT_EQ(find_violation(prob_on_gate)->kind, CircuitError::Kind::Probability);
}

TEST(circuit, targets_must_be_in_range_and_pairs_distinct) {
    Circuit c;
    c.num_qubits = 2;
    c.instructions.push_back({Gate::H, {2}, 0});
    EXPECT_EQ(find_violation(c)->kind, CircuitError::Kind::TargetRange);
    Circuit self;
    self.append(Gate::CX, {1, 1});
    EXPECT_EQ(find_violation(self)->kind, CircuitError::Kind::TargetRange);
}

TEST(circuit, text_round_trip) {
    Circuit c;
    c.append(Gate::R_Z, {0, 1});
    c.append(Gate::H, {0});
    c.append(Gate::CX, {0, 1});
    c.append(Gate::DEPOLARIZE2, {0, 1}, 0.001);
    c.append(Gate::X_ERROR, {1}, 0.1);
    c.append(Gate::M_Z, {0, 1});
    c.detectors.push_back({0, 1});
    c.observables.push_back({1});
    std::string text = to_text(c);
    EXPECT_NE(text.find("DEPOLARIZE2(0.001) 0 1"), std::string::npos);
    Circuit back = parse_circuit(text);
    EXPECT_EQ(back, c);
    std::ostringstream out;
    out << c;
    EXPECT_EQ(out.str(), text);
}

TEST(circuit, parser_accepts_comments_and_rejects_garbage) {
    Circuit c = parse_circuit("# header\nQUBITS 3\nH 0\n\nM_Z 0 2\nDETECTOR 1\n");
    EXPECT_EQ(c.num_qubits, 3u);
    EXPECT_EQ(c.instructions.size(), 2u);
    EXPECT_EQ(c.detectors.size(), 1u);
    EXPECT_THROW(parse_circuit("FOO 1\n"), CircuitError);
    EXPECT_THROW(parse_circuit("X_ERROR(abc) 0\n"), CircuitError);
    EXPECT_THROW(parse_circuit("M_Z 0\nDETECTOR 3\n"), CircuitError);
}

TEST(circuit, record_indices_follow_instruction_order) {
    Circuit c;
    c.append(Gate::M_Z, {2, 0});
    c.append(Gate::H, {1});
    c.append(Gate::M_X, {1});
    EXPECT_EQ(c.count_measurements(), 3u);
}

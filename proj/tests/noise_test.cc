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

#include "quirc/noise.h"

#include <gtest/gtest.h>

using namespace quirc;

namespace {

size_t count_gate(const Circuit &c, Gate g, double p) {
    size_t n = 0;
    for (const auto &inst : c.instructions) {
        if (inst.gate == g && inst.prob == p) {
            n += inst.targets.size() / gate_info(g).arity;
        }
    }
    return n;
}

Circuit small_circuit() {
    Circuit c;
    c.append(Gate::R_Z, {0, 1});
    c.append(Gate::R_X, {2});
    c.append(Gate::H, {3});
    c.append(Gate::CX, {0, 1});
    c.append(Gate::CX, {2, 3});
    c.append(Gate::M_Z, {0});
    c.append(Gate::M_X, {2});
    c.detectors.push_back({0});
    return c;
}

}  // namespace

TEST(noise_params, rejects_out_of_range_rates) {
    NoiseParams np;
    EXPECT_NO_THROW(np.validate());
    np.p_latency = -0.1;
    EXPECT_THROW(np.validate(), std::invalid_argument);
    np.p_latency = 0;
    np.p_remote_x = 1.5;
    EXPECT_THROW(np.validate(), std::invalid_argument);
}

TEST(append_noise_model, zero_rates_leave_circuit_unchanged) {
    Circuit c = small_circuit();
    EXPECT_EQ(append_noise_model(c, NoiseParams{}, {4}, {{2, {0, 1}}}), c);
}

TEST(append_noise_model, seam_cx_gets_remote_flips) {
    Circuit c = small_circuit();
    NoiseParams np;
    np.p_remote_x = 0.06;
    np.p_remote_z = 0.03;
    Circuit out = append_noise_model(c, np, {4}, {});
    ASSERT_EQ(out.instructions.size(), c.instructions.size() + 2);
    EXPECT_EQ(out.instructions[5], (Instruction{Gate::X_ERROR, {3}, 0.06}));
    EXPECT_EQ(out.instructions[6], (Instruction{Gate::Z_ERROR, {2}, 0.03}));
}

TEST(append_noise_model, latency_marker_depolarizes_each_marked_qubit) {
    Circuit c;
    c.num_qubits = 5;
    c.append(Gate::H, {0});
    NoiseParams np;
    np.p_latency = 0.01;
    Circuit out = append_noise_model(c, np, {}, {{1, {0, 1, 2, 3, 4}}});
    EXPECT_EQ(count_gate(out, Gate::DEPOLARIZE1, 0.01), 5u);
    EXPECT_EQ(out.instructions.back().gate, Gate::DEPOLARIZE1);
}

TEST(append_noise_model, spam_and_local_placement) {
    Circuit c = small_circuit();
    NoiseParams np;
    np.p_spam = 0.01;
    np.p_local = 0.002;
    Circuit out = append_noise_model(c, np, {}, {});
    // X flips after R_Z and before M_Z; Z flips after R_X and before M_X.
    EXPECT_EQ(out.instructions[1], (Instruction{Gate::X_ERROR, {0, 1}, 0.01}));
    EXPECT_EQ(out.instructions[3], (Instruction{Gate::Z_ERROR, {2}, 0.01}));
    EXPECT_EQ(count_gate(out, Gate::DEPOLARIZE1, 0.002), 1u);
    EXPECT_EQ(count_gate(out, Gate::DEPOLARIZE2, 0.002), 2u);
    size_t m = 0;
    for (size_t k = 0; k < out.instructions.size(); k++) {
        if (out.instructions[k].gate == Gate::M_Z) {
            m = k;
        }
    }
    EXPECT_EQ(out.instructions[m - 1], (Instruction{Gate::X_ERROR, {0}, 0.01}));
    EXPECT_EQ(out.detectors, c.detectors);
}

TEST(append_noise_model, bad_markers_are_marker_errors) {
    Circuit c = small_circuit();
    try {
        append_noise_model(c, NoiseParams{}, {2}, {});
        FAIL();
    } catch (const CircuitError &e) {
        EXPECT_EQ(e.kind, CircuitError::Kind::Marker);
        EXPECT_EQ(e.instruction, std::optional<size_t>(2));
    }
    EXPECT_THROW(append_noise_model(c, NoiseParams{}, {99}, {}), CircuitError);
    EXPECT_THROW(append_noise_model(c, NoiseParams{}, {}, {{99, {0}}}), CircuitError);
    EXPECT_THROW(append_noise_model(c, NoiseParams{}, {}, {}, {2}), CircuitError);
}

TEST(append_noise_model, noiseless_resets_skip_spam_only) {
    Circuit c = small_circuit();
    NoiseParams np;
    np.p_spam = 0.01;
    Circuit out = append_noise_model(c, np, {}, {}, {0, 1});
    EXPECT_EQ(out.instructions[0].gate, Gate::R_Z);
    EXPECT_EQ(out.instructions[1].gate, Gate::R_X);
    EXPECT_EQ(count_gate(out, Gate::X_ERROR, 0.01), 1u);
    EXPECT_EQ(count_gate(out, Gate::Z_ERROR, 0.01), 1u);
}

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

#include "quirc/latsurg.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "quirc/frame_simulator.h"
#include "quirc/tableau.h"

using namespace quirc;

namespace {

PauliString plaquette_operator(const PatchLayout &L, const Plaquette &p) {
    PauliString s(L.num_data());
    for (uint32_t q : p.support()) {
        s.set(q, p.basis == Basis::X ? 'X' : 'Z');
    }
    return s;
}

std::vector<uint32_t> detector_values(const Circuit &c, const std::vector<bool> &record) {
    std::vector<uint32_t> fired;
    auto v = evaluate_parities(c.detectors, record);
    for (size_t k = 0; k < v.size(); k++) {
        if (v[k]) {
            fired.push_back(static_cast<uint32_t>(k));
        }
    }
    return fired;
}

/// Inserts `inst` before clean-circuit instruction `position`.
Circuit with_inserted(const Circuit &c, size_t position, Instruction inst) {
    Circuit out = c;
    out.instructions.insert(out.instructions.begin() + position, std::move(inst));
    return out;
}

/// Detectors fired by a deterministic fault, through an explicit tableau run.
std::vector<uint32_t> tableau_fired(const Circuit &c, std::mt19937_64 &rng) {
    return detector_values(c, reference_sample(c, &rng));
}

std::vector<uint32_t> frame_fired(const Circuit &c, bool *observable) {
    SampleMatrix s = frame_sample(c, 1, 0);
    if (observable) {
        *observable = s.observable(0, 0);
    }
    return s.fired_detectors(0);
}

size_t first_index_of_merged_round(const MergeExperiment &ex, size_t round) {
    return ex.latency_sites.size() > round ? ex.latency_sites[round].before_instruction : 0;
}

}  // namespace

TEST(build_layout, d3_sizes) {
    PatchLayout L = build_layout(3);
    EXPECT_EQ(L.ancilla_width, 7);
    EXPECT_EQ(L.num_data(), 39u);
    EXPECT_EQ(L.seam_column, 3);
    EXPECT_EQ(L.patch1.size(), 8u);
    EXPECT_EQ(L.patch2.size(), 8u);
    EXPECT_EQ(L.merged.size(), 3u * 13 - 1);
    EXPECT_EQ(L.num_qubits(), 39u + L.merged.size());
}

TEST(build_layout, bad_distance_and_width) {
    EXPECT_THROW(build_layout(4), std::invalid_argument);
    EXPECT_THROW(build_layout(1), std::invalid_argument);
    EXPECT_THROW(build_layout(3, 6), std::invalid_argument);
}

TEST(build_layout, plaquettes_are_weight_two_or_four_and_commute) {
    for (int d = 3; d <= 7; d += 2) {
        PatchLayout L = build_layout(d);
        for (const auto *group : {&L.merged, &L.patch1, &L.patch2}) {
            std::vector<PauliString> ops;
            for (const Plaquette &p : *group) {
                size_t w = p.support().size();
                EXPECT_TRUE(w == 2 || w == 4) << d;
                ops.push_back(plaquette_operator(L, p));
            }
            for (size_t a = 0; a < ops.size(); a++) {
                for (size_t b = a + 1; b < ops.size(); b++) {
                    ASSERT_TRUE(ops[a].commutes(ops[b])) << d << " " << a << " " << b;
                }
            }
        }
        // A rotated d x n patch has d*n - 1 independent stabilizers.
        EXPECT_EQ(L.merged.size(), static_cast<size_t>(d * L.width - 1));
        EXPECT_EQ(L.patch1.size(), static_cast<size_t>(d * d - 1));
    }
}

TEST(build_layout, logical_operators) {
    PatchLayout L = build_layout(5);
    for (int patch : {1, 2}) {
        auto zs = L.logical_z(patch);
        EXPECT_EQ(zs.size(), 5u);
        PauliString z(L.num_data()), x(L.num_data());
        for (uint32_t q : zs) {
            z.set(q, 'Z');
        }
        for (uint32_t q : L.logical_x(patch, 2)) {
            x.set(q, 'X');
        }
        EXPECT_FALSE(z.commutes(x));
        for (const Plaquette &p : patch == 1 ? L.patch1 : L.patch2) {
            EXPECT_TRUE(z.commutes(plaquette_operator(L, p)));
            EXPECT_TRUE(x.commutes(plaquette_operator(L, p)));
        }
    }
}

TEST(build_layout, joint_plaquettes_multiply_to_both_logical_zs) {
    for (int d = 3; d <= 7; d += 2) {
        PatchLayout L = build_layout(d);
        PauliString prod(L.num_data()), expected(L.num_data());
        for (size_t k : L.joint_z_plaquettes()) {
            prod *= plaquette_operator(L, L.merged[k]);
        }
        for (int patch : {1, 2}) {
            for (uint32_t q : L.logical_z(patch)) {
                expected.set(q, 'Z');
            }
        }
        EXPECT_EQ(prod, expected) << d;
    }
}

TEST(build_layout, dump_lists_every_qubit_and_the_seam) {
    PatchLayout L = build_layout(3);
    std::string text = L.dump();
    EXPECT_NE(text.find("seam_column 3\n"), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), static_cast<long>(2 + L.num_qubits()));
    EXPECT_NE(text.find("data 3 0 3 ancilla"), std::string::npos);
}

TEST(build_merge_circuit, zero_rounds_is_invalid) {
    EXPECT_THROW(build_merge_circuit(build_layout(3), NoiseParams{}, 0), std::invalid_argument);
}

TEST(build_merge_circuit, noiseless_detectors_and_observable_are_deterministic) {
    std::mt19937_64 rng(99);
    for (int d = 3; d <= 7; d += 2) {
        PatchLayout L = build_layout(d);
        Circuit c = build_merge_circuit(L, NoiseParams{});
        int trials = d == 7 ? 3 : 10;
        for (int t = 0; t < trials; t++) {
            auto rec = reference_sample(c, &rng);
            ASSERT_TRUE(detector_values(c, rec).empty()) << d;
            ASSERT_FALSE(evaluate_parities(c.observables, rec)[0]) << d;
        }
        SampleMatrix s = frame_sample(c, 1000, 5);
        for (size_t shot = 0; shot < s.shots(); shot++) {
            ASSERT_TRUE(s.fired_detectors(shot).empty());
            ASSERT_FALSE(s.observable(shot, 0));
        }
    }
}

TEST(build_merge_circuit, joint_outcomes_are_random_but_their_product_is_fixed) {
    PatchLayout L = build_layout(3);
    MergeExperiment ex = build_merge_experiment(L, 3);
    std::mt19937_64 rng(7);
    std::set<std::vector<bool>> seen;
    for (int t = 0; t < 40; t++) {
        auto rec = reference_sample(ex.clean, &rng);
        std::vector<bool> joint;
        for (size_t k : L.joint_z_plaquettes()) {
            joint.push_back(rec[ex.merged_records[0][k]]);
        }
        seen.insert(joint);
    }
    EXPECT_GT(seen.size(), 1u);
}

TEST(build_merge_circuit, seam_gates_per_merged_round) {
    for (int d = 3; d <= 5; d += 2) {
        PatchLayout L = build_layout(d);
        MergeExperiment ex = build_merge_experiment(L, static_cast<size_t>(d));
        size_t pairs = 0;
        for (size_t k : ex.seam_cx) {
            const Instruction &inst = ex.clean.instructions[k];
            ASSERT_EQ(inst.gate, Gate::CX);
            for (size_t j = 0; j < inst.targets.size(); j += 2) {
                // One end is a syndrome qubit, the other ancilla-region data on the seam column.
                uint32_t a = inst.targets[j], b = inst.targets[j + 1];
                uint32_t data = std::min(a, b), syn = std::max(a, b);
                EXPECT_LT(data, L.num_data());
                EXPECT_GE(syn, L.num_data());
                EXPECT_EQ(static_cast<int>(data % L.width), L.seam_column);
            }
            pairs += inst.targets.size() / 2;
        }
        EXPECT_EQ(pairs, static_cast<size_t>(d) * (2 * d - 1));
    }
}

TEST(build_merge_circuit, latency_sites_once_or_every_round) {
    PatchLayout L = build_layout(3);
    EXPECT_EQ(build_merge_experiment(L, 3, true).latency_sites.size(), 1u);
    EXPECT_EQ(build_merge_experiment(L, 3, false).latency_sites.size(), 3u);
    NoiseParams np;
    np.p_latency = 0.05;
    Circuit c = build_merge_circuit(L, np, 3, true);
    size_t n = 0;
    for (const auto &inst : c.instructions) {
        if (inst.gate == Gate::DEPOLARIZE1) {
            n += inst.targets.size();
        }
    }
    EXPECT_EQ(n, L.num_data());
}

TEST(build_merge_circuit, ancilla_data_x_flips_two_adjacent_z_detectors) {
    PatchLayout L = build_layout(3);
    MergeExperiment ex = build_merge_experiment(L, 3, false);
    uint32_t q = L.data_index(1, 6);  // interior of the ancilla region
    size_t pos = first_index_of_merged_round(ex, 1);
    Circuit c = with_inserted(ex.clean, pos, {Gate::X, {q}, 0.0});
    std::mt19937_64 rng(1);
    auto fired = tableau_fired(c, rng);

    // Independent expectation: round-2 comparisons of the Z plaquettes holding q.
    std::vector<uint32_t> expected;
    for (size_t d = 0; d < ex.clean.detectors.size(); d++) {
        const auto &det = ex.clean.detectors[d];
        if (det.size() != 2) {
            continue;
        }
        for (size_t k = 0; k < L.merged.size(); k++) {
            const Plaquette &p = L.merged[k];
            auto sup = p.support();
            if (p.basis == Basis::Z && std::count(sup.begin(), sup.end(), q) &&
                det == std::vector<uint32_t>{ex.merged_records[1][k], ex.merged_records[0][k]}) {
                expected.push_back(static_cast<uint32_t>(d));
            }
        }
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(expected.size(), 2u);
    EXPECT_EQ(fired, expected);

    Circuit noisy = with_inserted(ex.clean, pos, {Gate::X_ERROR, {q}, 1.0});
    EXPECT_EQ(frame_fired(noisy, nullptr), expected);
}

TEST(build_merge_circuit, forced_faults_match_tableau_and_respect_css_split) {
    PatchLayout L = build_layout(3);
    MergeExperiment ex = build_merge_experiment(L, 3);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; trial++) {
        size_t pos = rng() % ex.clean.instructions.size();
        uint32_t q = rng() % L.num_qubits();
        bool is_x = rng() & 1;
        Circuit gate_form = with_inserted(ex.clean, pos, {is_x ? Gate::X : Gate::Z, {q}, 0.0});
        Circuit noise_form = with_inserted(ex.clean, pos, {is_x ? Gate::X_ERROR : Gate::Z_ERROR, {q}, 1.0});
        auto expected = tableau_fired(gate_form, rng);
        auto fired = frame_fired(noise_form, nullptr);
        ASSERT_EQ(fired, expected) << pos << " " << q;
        for (uint32_t d : fired) {
            if (q >= L.num_data()) {
                break;  // syndrome qubits of X plaquettes sit in a rotated frame
            }
            // Data X faults flip Z-type detectors only, and vice versa.
            EXPECT_EQ(ex.detector_basis[d], is_x ? Basis::Z : Basis::X);
        }
    }
}

TEST(build_merge_circuit, two_faults_flip_the_symmetric_difference) {
    PatchLayout L = build_layout(3);
    MergeExperiment ex = build_merge_experiment(L, 3);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; trial++) {
        size_t p1 = rng() % ex.clean.instructions.size(), p2 = rng() % ex.clean.instructions.size();
        if (p1 > p2) {
            std::swap(p1, p2);
        }
        Instruction f1{rng() & 1 ? Gate::X_ERROR : Gate::Z_ERROR, {static_cast<uint32_t>(rng() % L.num_qubits())}, 1};
        Instruction f2{rng() & 1 ? Gate::X_ERROR : Gate::Z_ERROR, {static_cast<uint32_t>(rng() % L.num_qubits())}, 1};
        auto a = frame_fired(with_inserted(ex.clean, p1, f1), nullptr);
        auto b = frame_fired(with_inserted(ex.clean, p2, f2), nullptr);
        Circuit both = with_inserted(with_inserted(ex.clean, p2, f2), p1, f1);
        std::vector<uint32_t> sym;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(sym));
        EXPECT_EQ(frame_fired(both, nullptr), sym);
    }
}

TEST(build_merge_circuit, logical_x_on_patch1_flips_the_observable) {
    for (int d = 3; d <= 5; d += 2) {
        PatchLayout L = build_layout(d);
        MergeExperiment ex = build_merge_experiment(L, static_cast<size_t>(d));
        Circuit c = with_inserted(ex.clean, ex.latency_sites[0].before_instruction,
                                  {Gate::X_ERROR, L.logical_x(1, 1), 1.0});
        bool obs = false;
        EXPECT_TRUE(frame_fired(c, &obs).empty());
        EXPECT_TRUE(obs);
        Circuit g = with_inserted(ex.clean, 2, {Gate::X, L.logical_x(1, 0), 0.0});
        std::mt19937_64 rng(3);
        auto rec = reference_sample(g, &rng);
        EXPECT_TRUE(detector_values(g, rec).empty());
        EXPECT_TRUE(evaluate_parities(g.observables, rec)[0]);
    }
}

TEST(seam_resources, linear_counts) {
    SeamResources r = seam_resources(3, 4);
    EXPECT_EQ(r.cables_per_seam, 3u);
    EXPECT_EQ(r.eps_per_round, 6u);
    EXPECT_EQ(r.routing_cards, 3u);
    EXPECT_EQ(seam_resources(1, 1).eps_per_round, 2u);
    EXPECT_EQ(seam_resources(5, 12).external_nodes_per_card, 24u);
    EXPECT_THROW(seam_resources(0, 1), std::invalid_argument);
}

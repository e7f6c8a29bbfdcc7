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

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "quirc/circuit.h"
#include "quirc/noise.h"

namespace quirc {

enum class Basis : uint8_t { X, Z };
enum class Region : uint8_t { Patch1, Ancilla, Patch2 };

const char *region_name(Region r);

/// A stabilizer plaquette of the rotated surface code. Its corner (row, col)
/// sits between data rows row-1..row and data columns col-1..col.
struct Plaquette {
    Basis basis;
    int row;
    int col;
    /// Data qubit indices at NW, NE, SW, SE, or -1 where the plaquette is cut
    /// by a boundary.
    std::array<int32_t, 4> data;
    uint32_t syndrome;

    std::vector<uint32_t> support() const;
};

/// Two d x d patches joined through a d x w_a ancilla region, laid out as one
/// d-row band of width 2d + w_a. Data qubit (r, c) has index r * width + c;
/// syndrome qubits follow, one per corner of the merged patch.
struct PatchLayout {
    int d = 0;
    int ancilla_width = 0;
    int width = 0;
    /// First data column of the ancilla region. Seam CX gates join syndrome
    /// qubits on corner column `seam_column` to data qubits in this column.
    int seam_column = 0;

    std::vector<Plaquette> merged;
    std::vector<Plaquette> patch1;
    std::vector<Plaquette> patch2;

    size_t num_data() const {
        return static_cast<size_t>(d) * width;
    }
    size_t num_qubits() const {
        return num_data() + merged.size();
    }
    uint32_t data_index(int r, int c) const {
        return static_cast<uint32_t>(r * width + c);
    }
    Region region_of_column(int c) const;

    /// Data qubits of the logical Z of patch 1 (its column facing the ancilla)
    /// or patch 2 (likewise).
    std::vector<uint32_t> logical_z(int patch) const;
    /// Data qubits of a row-0 logical X string across patch 1 or patch 2.
    std::vector<uint32_t> logical_x(int patch, int row = 0) const;

    /// Z plaquettes of the merged patch that touch the ancilla region. The
    /// product of their outcomes is the Z1 Z2 eigenvalue.
    std::vector<size_t> joint_z_plaquettes() const;

    /// Debug dump: one line per data qubit and syndrome qubit, plus the seam.
    std::string dump() const;
};

/// Throws std::invalid_argument for even or too small d, or an even ancilla
/// width (which would break the shared checkerboard coloring).
PatchLayout build_layout(int d, int ancilla_width);
inline PatchLayout build_layout(int d) {
    return build_layout(d, 2 * d + 1);
}

/// A noiseless merge circuit together with the markers that the noise model
/// keys on and the record indices of each measurement group.
struct MergeExperiment {
    Circuit clean;
    std::set<size_t> seam_cx;
    std::vector<LatencySite> latency_sites;
    /// Syndrome-qubit resets; p_spam on syndromes applies at measurement only.
    std::set<size_t> syndrome_resets;
    /// Record index of each pre-merge plaquette, patch1 then patch2.
    std::vector<uint32_t> premerge_records;
    /// merged_records[round][k] is the record of layout.merged[k] in that round.
    std::vector<std::vector<uint32_t>> merged_records;
    /// Record index of the final measurement of data qubit q.
    std::vector<uint32_t> final_data_records;
    /// Stabilizer type compared by each detector of `clean`.
    std::vector<Basis> detector_basis;
};

MergeExperiment build_merge_experiment(const PatchLayout &layout, size_t rounds, bool latency_once = true);

/// The merge circuit with the noise model applied. `rounds` merged rounds
/// (normally d); latency noise is inserted once before the first merged round,
/// or before every merged round when latency_once is false.
Circuit build_merge_circuit(const PatchLayout &layout, const NoiseParams &np, size_t rounds, bool latency_once = true);
inline Circuit build_merge_circuit(const PatchLayout &layout, const NoiseParams &np) {
    return build_merge_circuit(layout, np, static_cast<size_t>(layout.d));
}

struct SeamResources {
    size_t cables_per_seam;
    size_t eps_per_round;
    size_t routing_cards;
    size_t external_nodes_per_card;
};

SeamResources seam_resources(size_t d, size_t modules);

}  // namespace quirc

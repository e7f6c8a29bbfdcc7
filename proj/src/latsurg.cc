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

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace quirc {

namespace {

enum Corner : int { NW = 0, NE = 1, SW = 2, SE = 3 };

// Data positions in CX order. The last two X steps touch a vertical pair and
// the last two Z steps a horizontal pair, perpendicular to the logical string
// of the same type.
constexpr std::array<int, 4> X_ORDER = {NW, SW, NE, SE};
constexpr std::array<int, 4> Z_ORDER = {NW, NE, SW, SE};

Basis corner_basis(int i, int j) {
    return (i + j) % 2 == 0 ? Basis::X : Basis::Z;
}

/// Plaquettes of a rotated patch spanning data columns [c0, c1) and rows
/// [0, d). Syndrome indices are assigned later.
std::vector<Plaquette> make_plaquettes(const PatchLayout &L, int c0, int c1) {
    std::vector<Plaquette> out;
    for (int i = 0; i <= L.d; i++) {
        for (int j = c0; j <= c1; j++) {
            Basis b = corner_basis(i, j);
            bool row_edge = i == 0 || i == L.d;
            bool col_edge = j == c0 || j == c1;
            if (row_edge && col_edge) {
                continue;
            }
            if (row_edge && b != Basis::Z) {
                continue;
            }
            if (col_edge && b != Basis::X) {
                continue;
            }
            Plaquette p{b, i, j, {-1, -1, -1, -1}, 0};
            auto put = [&](int slot, int r, int c) {
                if (r >= 0 && r < L.d && c >= c0 && c < c1) {
                    p.data[slot] = static_cast<int32_t>(L.data_index(r, c));
                }
            };
            put(NW, i - 1, j - 1);
            put(NE, i - 1, j);
            put(SW, i, j - 1);
            put(SE, i, j);
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

const char *region_name(Region r) {
    switch (r) {
        case Region::Patch1:
            return "patch1";
        case Region::Ancilla:
            return "ancilla";
        case Region::Patch2:
            return "patch2";
    }
    return "?";
}

std::vector<uint32_t> Plaquette::support() const {
    std::vector<uint32_t> out;
    for (int32_t q : data) {
        if (q >= 0) {
            out.push_back(static_cast<uint32_t>(q));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Region PatchLayout::region_of_column(int c) const {
    if (c < 0 || c >= width) {
        throw std::out_of_range("Column " + std::to_string(c) + " is outside the layout.");
    }
    if (c < d) {
        return Region::Patch1;
    }
    if (c < d + ancilla_width) {
        return Region::Ancilla;
    }
    return Region::Patch2;
}

std::vector<uint32_t> PatchLayout::logical_z(int patch) const {
    if (patch != 1 && patch != 2) {
        throw std::invalid_argument("Patch must be 1 or 2.");
    }
    int c = patch == 1 ? d - 1 : d + ancilla_width;
    std::vector<uint32_t> out;
    for (int r = 0; r < d; r++) {
        out.push_back(data_index(r, c));
    }
    return out;
}

std::vector<uint32_t> PatchLayout::logical_x(int patch, int row) const {
    if (patch != 1 && patch != 2) {
        throw std::invalid_argument("Patch must be 1 or 2.");
    }
    if (row < 0 || row >= d) {
        throw std::out_of_range("Row " + std::to_string(row) + " is outside the layout.");
    }
    int c0 = patch == 1 ? 0 : d + ancilla_width;
    std::vector<uint32_t> out;
    for (int c = c0; c < c0 + d; c++) {
        out.push_back(data_index(row, c));
    }
    return out;
}

std::vector<size_t> PatchLayout::joint_z_plaquettes() const {
    std::vector<size_t> out;
    for (size_t k = 0; k < merged.size(); k++) {
        const Plaquette &p = merged[k];
        if (p.basis == Basis::Z && p.col >= d && p.col <= d + ancilla_width) {
            out.push_back(k);
        }
    }
    return out;
}

std::string PatchLayout::dump() const {
    std::ostringstream out;
    out << "layout d=" << d << " ancilla_width=" << ancilla_width << " width=" << width << "\n";
    out << "seam_column " << seam_column << "\n";
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < width; c++) {
            out << "data " << data_index(r, c) << " " << r << " " << c << " " << region_name(region_of_column(c))
                << "\n";
        }
    }
    auto in_group = [](const std::vector<Plaquette> &v, const Plaquette &p) {
        return std::any_of(v.begin(), v.end(), [&](const Plaquette &o) { return o.syndrome == p.syndrome; });
    };
    for (const Plaquette &p : merged) {
        out << "syndrome " << p.syndrome << " " << p.row << " " << p.col << " " << (p.basis == Basis::X ? 'X' : 'Z')
            << " weight=" << p.support().size();
        if (in_group(patch1, p)) {
            out << " patch1";
        }
        if (in_group(patch2, p)) {
            out << " patch2";
        }
        if (p.col == seam_column) {
            out << " seam";
        }
        out << "\n";
    }
    return out.str();
}

PatchLayout build_layout(int d, int ancilla_width) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("Code distance must be odd and at least 3, got " + std::to_string(d) + ".");
    }
    if (ancilla_width < 1 || ancilla_width % 2 == 0) {
        throw std::invalid_argument("Ancilla width must be odd and positive, got " + std::to_string(ancilla_width) +
                                    ".");
    }
    PatchLayout L;
    L.d = d;
    L.ancilla_width = ancilla_width;
    L.width = 2 * d + ancilla_width;
    L.seam_column = d;

    L.merged = make_plaquettes(L, 0, L.width);
    std::map<std::pair<int, int>, uint32_t> syndrome_at;
    for (size_t k = 0; k < L.merged.size(); k++) {
        L.merged[k].syndrome = static_cast<uint32_t>(L.num_data() + k);
        syndrome_at[{L.merged[k].row, L.merged[k].col}] = L.merged[k].syndrome;
    }
    auto attach = [&](std::vector<Plaquette> v) {
        for (Plaquette &p : v) {
            p.syndrome = syndrome_at.at({p.row, p.col});
        }
        return v;
    };
    L.patch1 = attach(make_plaquettes(L, 0, d));
    L.patch2 = attach(make_plaquettes(L, d + ancilla_width, L.width));
    return L;
}

namespace {

struct Builder {
    const PatchLayout &L;
    MergeExperiment ex;
    uint32_t num_measurements = 0;

    void push(Gate g, std::vector<uint32_t> targets) {
        if (!targets.empty()) {
            ex.clean.instructions.push_back({g, std::move(targets), 0.0});
        }
    }

    /// One stabilizer round over `plaqs`; returns the record index of each.
    std::vector<uint32_t> round(const std::vector<Plaquette> &plaqs, bool with_seam) {
        std::vector<uint32_t> z_syn, x_syn;
        for (const Plaquette &p : plaqs) {
            (p.basis == Basis::X ? x_syn : z_syn).push_back(p.syndrome);
        }
        for (auto [g, q] : {std::pair{Gate::R_Z, &z_syn}, std::pair{Gate::R_X, &x_syn}}) {
            if (!q->empty()) {
                ex.syndrome_resets.insert(ex.clean.instructions.size());
                push(g, *q);
            }
        }
        for (int step = 0; step < 4; step++) {
            std::vector<uint32_t> local, seam;
            for (const Plaquette &p : plaqs) {
                int slot = p.basis == Basis::X ? X_ORDER[step] : Z_ORDER[step];
                int32_t q = p.data[slot];
                if (q < 0) {
                    continue;
                }
                auto dq = static_cast<uint32_t>(q);
                bool is_seam = with_seam && p.col == L.seam_column && (slot == NE || slot == SE);
                auto &dst = is_seam ? seam : local;
                if (p.basis == Basis::X) {
                    dst.insert(dst.end(), {p.syndrome, dq});
                } else {
                    dst.insert(dst.end(), {dq, p.syndrome});
                }
            }
            push(Gate::CX, local);
            if (!seam.empty()) {
                ex.seam_cx.insert(ex.clean.instructions.size());
                push(Gate::CX, seam);
            }
        }
        push(Gate::M_Z, z_syn);
        push(Gate::M_X, x_syn);
        // Z outcomes precede X outcomes; rec follows plaquette order.
        std::vector<uint32_t> rec;
        uint32_t z_next = num_measurements;
        auto x_next = static_cast<uint32_t>(num_measurements + z_syn.size());
        for (const Plaquette &p : plaqs) {
            rec.push_back(p.basis == Basis::X ? x_next++ : z_next++);
        }
        num_measurements += static_cast<uint32_t>(plaqs.size());
        return rec;
    }
};

}  // namespace

MergeExperiment build_merge_experiment(const PatchLayout &L, size_t rounds, bool latency_once) {
    if (rounds < 1) {
        throw std::invalid_argument("A merge needs at least one merged round.");
    }
    Builder b{L, {}, 0};
    Circuit &c = b.ex.clean;
    c.num_qubits = L.num_qubits();

    std::vector<uint32_t> patch_data, ancilla_data, all_data;
    for (int r = 0; r < L.d; r++) {
        for (int col = 0; col < L.width; col++) {
            uint32_t q = L.data_index(r, col);
            all_data.push_back(q);
            (L.region_of_column(col) == Region::Ancilla ? ancilla_data : patch_data).push_back(q);
        }
    }
    std::sort(patch_data.begin(), patch_data.end());
    b.push(Gate::R_Z, patch_data);
    b.push(Gate::R_X, ancilla_data);

    std::vector<Plaquette> pre = L.patch1;
    pre.insert(pre.end(), L.patch2.begin(), L.patch2.end());
    b.ex.premerge_records = b.round(pre, false);
    std::map<std::pair<int, int>, uint32_t> pre_record;
    for (size_t k = 0; k < pre.size(); k++) {
        pre_record[{pre[k].row, pre[k].col}] = b.ex.premerge_records[k];
        if (pre[k].basis == Basis::Z) {
            c.detectors.push_back({b.ex.premerge_records[k]});
            b.ex.detector_basis.push_back(Basis::Z);
        }
    }

    for (size_t r = 0; r < rounds; r++) {
        if (r == 0 || !latency_once) {
            b.ex.latency_sites.push_back({c.instructions.size(), all_data});
        }
        b.ex.merged_records.push_back(b.round(L.merged, true));
        const auto &now = b.ex.merged_records.back();
        for (size_t k = 0; k < L.merged.size(); k++) {
            const Plaquette &p = L.merged[k];
            if (r > 0) {
                c.detectors.push_back({now[k], b.ex.merged_records[r - 1][k]});
                b.ex.detector_basis.push_back(p.basis);
                continue;
            }
            auto it = pre_record.find({p.row, p.col});
            if (it != pre_record.end()) {
                c.detectors.push_back({now[k], it->second});
            } else if (p.basis == Basis::X) {
                // Entirely inside the ancilla region, which starts in |+>.
                c.detectors.push_back({now[k]});
            } else {
                // Joint Z plaquettes start with random outcomes.
                continue;
            }
            b.ex.detector_basis.push_back(p.basis);
        }
    }

    b.push(Gate::M_Z, all_data);
    uint32_t base = b.num_measurements;
    b.ex.final_data_records.resize(L.num_data());
    for (size_t k = 0; k < all_data.size(); k++) {
        b.ex.final_data_records[all_data[k]] = base + static_cast<uint32_t>(k);
    }
    b.num_measurements += static_cast<uint32_t>(all_data.size());
    const auto &last = b.ex.merged_records.back();
    for (size_t k = 0; k < L.merged.size(); k++) {
        const Plaquette &p = L.merged[k];
        if (p.basis != Basis::Z) {
            continue;
        }
        std::vector<uint32_t> det{last[k]};
        for (uint32_t q : p.support()) {
            det.push_back(b.ex.final_data_records[q]);
        }
        c.detectors.push_back(det);
        b.ex.detector_basis.push_back(Basis::Z);
    }

    std::vector<uint32_t> obs;
    for (size_t k : L.joint_z_plaquettes()) {
        obs.push_back(b.ex.merged_records[0][k]);
    }
    c.observables.push_back(obs);
    validate(c);
    return std::move(b.ex);
}

Circuit build_merge_circuit(const PatchLayout &layout, const NoiseParams &np, size_t rounds, bool latency_once) {
    MergeExperiment ex = build_merge_experiment(layout, rounds, latency_once);
    return append_noise_model(ex.clean, np, ex.seam_cx, ex.latency_sites, ex.syndrome_resets);
}

SeamResources seam_resources(size_t d, size_t modules) {
    if (d < 1 || modules < 1) {
        throw std::invalid_argument("Seam resources need d >= 1 and M >= 1.");
    }
    return {d, 2 * d, d, 2 * modules};
}

}  // namespace quirc

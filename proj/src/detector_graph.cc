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

#include "quirc/detector_graph.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "quirc/frame_simulator.h"

namespace quirc {

FaultSignature operator^(const FaultSignature &a, const FaultSignature &b) {
    FaultSignature out;
    std::set_symmetric_difference(a.detectors.begin(), a.detectors.end(), b.detectors.begin(), b.detectors.end(),
                                  std::back_inserter(out.detectors));
    out.observables = a.observables ^ b.observables;
    return out;
}

double edge_weight(double p) {
    p = std::clamp(p, 1e-300, 0.5 - 1e-12);
    return std::log((1 - p) / p);
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string DetectorGraph::dump() const {
    std::ostringstream out;
    auto node = [&](uint32_t n) { return n == boundary() ? std::string("B") : std::to_string(n); };
    for (const GraphEdge &e : edges) {
        out << "edge " << node(e.a) << " " << node(e.b) << " " << format_double(e.weight) << " " << format_double(e.p)
            << " " << e.observables << " " << e.provenance << "\n";
    }
    return out.str();
}

ElementarySignatures elementary_signatures(const Circuit &c) {
    validate(c);
    if (c.observables.size() > 64) {
        throw std::invalid_argument("At most 64 observables are supported.");
    }
    ElementarySignatures out;
    out.first_lane.resize(c.instructions.size() + 1);
    for (size_t k = 0; k < c.instructions.size(); k++) {
        out.first_lane[k] = static_cast<uint32_t>(out.faults.size());
        const Instruction &inst = c.instructions[k];
        if (!gate_info(inst.gate).noise) {
            continue;
        }
        for (uint32_t q : inst.targets) {
            if (inst.gate != Gate::Z_ERROR) {
                out.faults.push_back({static_cast<uint32_t>(k), q, true});
            }
            if (inst.gate != Gate::X_ERROR) {
                out.faults.push_back({static_cast<uint32_t>(k), q, false});
            }
        }
    }
    out.first_lane[c.instructions.size()] = static_cast<uint32_t>(out.faults.size());

    size_t lanes = out.faults.size();
    out.signatures.resize(lanes);
    if (lanes == 0) {
        return out;
    }
    PauliFrameBatch frames(c.num_qubits, lanes);
    std::vector<uint64_t> record;
    for (size_t k = 0; k < c.instructions.size(); k++) {
        const Instruction &inst = c.instructions[k];
        if (gate_info(inst.gate).noise) {
            for (uint32_t lane = out.first_lane[k]; lane < out.first_lane[k + 1]; lane++) {
                const ElementaryFault &f = out.faults[lane];
                if (f.is_x) {
                    frames.flip_x(f.qubit, lane);
                } else {
                    frames.flip_z(f.qubit, lane);
                }
            }
        } else {
            frames.apply(inst, record);
        }
    }
    size_t W = frames.num_words();
    std::vector<uint64_t> det, obs;
    fold_parities(c.detectors, record, W, det);
    fold_parities(c.observables, record, W, obs);
    for (size_t d = 0; d < c.detectors.size(); d++) {
        for (size_t w = 0; w < W; w++) {
            uint64_t bits = det[d * W + w];
            while (bits) {
                size_t lane = w * 64 + std::countr_zero(bits);
                out.signatures[lane].detectors.push_back(static_cast<uint32_t>(d));
                bits &= bits - 1;
            }
        }
    }
    for (size_t o = 0; o < c.observables.size(); o++) {
        for (size_t w = 0; w < W; w++) {
            uint64_t bits = obs[o * W + w];
            while (bits) {
                size_t lane = w * 64 + std::countr_zero(bits);
                out.signatures[lane].observables |= uint64_t{1} << o;
                bits &= bits - 1;
            }
        }
    }
    return out;
}

namespace {

struct Component {
    double p;
    std::vector<uint32_t> x_lanes;
    std::vector<uint32_t> z_lanes;
};

/// Mutually exclusive Pauli outcomes of one independent channel.
std::vector<Component> channel_components(const Instruction &inst, uint32_t lane) {
    std::vector<Component> out;
    double p = inst.prob;
    switch (inst.gate) {
        case Gate::X_ERROR:
            out.push_back({p, {lane}, {}});
            break;
        case Gate::Z_ERROR:
            out.push_back({p, {}, {lane}});
            break;
        case Gate::DEPOLARIZE1:
            out.push_back({p / 3, {lane}, {}});
            out.push_back({p / 3, {lane}, {lane + 1}});
            out.push_back({p / 3, {}, {lane + 1}});
            break;
        case Gate::DEPOLARIZE2:
            // Lanes: xa = lane, za = lane + 1, xb = lane + 2, zb = lane + 3.
            for (int k = 1; k < 16; k++) {
                Component comp{p / 15, {}, {}};
                if (k & 1) {
                    comp.x_lanes.push_back(lane);
                }
                if (k & 2) {
                    comp.z_lanes.push_back(lane + 1);
                }
                if (k & 4) {
                    comp.x_lanes.push_back(lane + 2);
                }
                if (k & 8) {
                    comp.z_lanes.push_back(lane + 3);
                }
                out.push_back(std::move(comp));
            }
            break;
        default:
            break;
    }
    return out;
}

std::string describe(const Circuit &c, const ElementarySignatures &el, uint32_t instruction,
                     const std::vector<uint32_t> &lanes, bool is_x) {
    std::string s = std::string(gate_name(c.instructions[instruction].gate)) + "@" + std::to_string(instruction) + ":";
    for (size_t k = 0; k < lanes.size(); k++) {
        s += (k ? "," : "") + std::string(is_x ? "X" : "Z") + std::to_string(el.faults[lanes[k]].qubit);
    }
    return s;
}

}  // namespace

DetectorGraph build_detector_graph(const Circuit &c) {
    ElementarySignatures el = elementary_signatures(c);
    DetectorGraph g;
    g.num_detectors = c.detectors.size();
    g.num_observables = c.observables.size();
    const uint32_t B = g.boundary();

    struct Acc {
        double p;
        std::string provenance;
    };
    std::map<std::tuple<uint32_t, uint32_t, uint64_t>, Acc> merged;

    for (size_t k = 0; k < c.instructions.size(); k++) {
        const Instruction &inst = c.instructions[k];
        if (!gate_info(inst.gate).noise || inst.prob <= 0 || inst.targets.empty()) {
            continue;
        }
        size_t arity = gate_info(inst.gate).arity;
        uint32_t lane = el.first_lane[k];
        uint32_t lanes_per_channel = (el.first_lane[k + 1] - el.first_lane[k]) /
                                     static_cast<uint32_t>(inst.targets.size() / arity);
        for (size_t t = 0; t < inst.targets.size(); t += arity, lane += lanes_per_channel) {
            std::map<FaultSignature, Acc> channel;
            auto add = [&](const std::vector<uint32_t> &lanes, bool is_x, double p) {
                if (lanes.empty()) {
                    return;
                }
                FaultSignature sig;
                for (uint32_t l : lanes) {
                    sig = sig ^ el.signatures[l];
                }
                std::vector<std::pair<FaultSignature, std::vector<uint32_t>>> pieces;
                if (sig.detectors.size() <= 2) {
                    pieces.push_back({std::move(sig), lanes});
                } else {
                    for (uint32_t l : lanes) {
                        if (el.signatures[l].detectors.size() > 2) {
                            throw NonGraphlikeError(describe(c, el, static_cast<uint32_t>(k), {l}, is_x),
                                                    el.signatures[l]);
                        }
                        pieces.push_back({el.signatures[l], {l}});
                    }
                }
                for (auto &[piece, piece_lanes] : pieces) {
                    auto it = channel.find(piece);
                    if (it == channel.end()) {
                        channel.emplace(piece, Acc{p, describe(c, el, static_cast<uint32_t>(k), piece_lanes, is_x)});
                    } else {
                        it->second.p += p;
                    }
                }
            };
            for (const Component &comp : channel_components(inst, lane)) {
                add(comp.x_lanes, true, comp.p);
                add(comp.z_lanes, false, comp.p);
            }
            for (auto &[sig, acc] : channel) {
                if (sig.detectors.empty()) {
                    if (sig.observables) {
                        g.num_undetectable_logical++;
                    }
                    continue;
                }
                uint32_t a = sig.detectors[0];
                uint32_t b = sig.detectors.size() == 2 ? sig.detectors[1] : B;
                auto key = std::make_tuple(a, b, sig.observables);
                auto it = merged.find(key);
                if (it == merged.end()) {
                    merged.emplace(key, std::move(acc));
                } else {
                    it->second.p = compose_flip(it->second.p, acc.p);
                }
            }
        }
    }

    g.adjacency.resize(g.num_nodes());
    for (auto &[key, acc] : merged) {
        auto [a, b, mask] = key;
        auto id = static_cast<uint32_t>(g.edges.size());
        g.edges.push_back({a, b, acc.p, edge_weight(acc.p), mask, std::move(acc.provenance)});
        g.adjacency[a].push_back(id);
        g.adjacency[b].push_back(id);
    }
    return g;
}

}  // namespace quirc

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
#include <stdexcept>
#include <string>
#include <vector>

#include "quirc/circuit.h"

namespace quirc {

/// Detectors and observables flipped by a fault.
struct FaultSignature {
    std::vector<uint32_t> detectors;  // sorted
    uint64_t observables = 0;

    bool operator==(const FaultSignature &other) const = default;
    auto operator<=>(const FaultSignature &other) const = default;
};

/// Symmetric difference of two signatures.
FaultSignature operator^(const FaultSignature &a, const FaultSignature &b);

struct GraphEdge {
    uint32_t a;
    uint32_t b;  // == boundary node for single-detector faults
    double p;
    double weight;
    uint64_t observables;
    std::string provenance;  // first contributing fault
};

/// Matching graph over detectors plus one boundary node with index
/// num_detectors. Parallel edges exist only where observable masks differ.
struct DetectorGraph {
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<GraphEdge> edges;
    /// adjacency[node] lists incident edge indices.
    std::vector<std::vector<uint32_t>> adjacency;
    /// Fault parts that flip observables but no detector.
    size_t num_undetectable_logical = 0;

    uint32_t boundary() const {
        return static_cast<uint32_t>(num_detectors);
    }
    size_t num_nodes() const {
        return num_detectors + 1;
    }
    uint32_t other(uint32_t edge, uint32_t node) const {
        const GraphEdge &e = edges[edge];
        return e.a == node ? e.b : e.a;
    }

    /// One line per edge: `edge a b weight p mask provenance`, with `B` for
    /// the boundary node.
    std::string dump() const;
};

class NonGraphlikeError : public std::runtime_error {
   public:
    NonGraphlikeError(std::string provenance, FaultSignature signature)
        : std::runtime_error("Fault " + provenance + " flips " + std::to_string(signature.detectors.size()) +
                             " detectors and cannot be decomposed into graph edges."),
          provenance(std::move(provenance)),
          signature(std::move(signature)) {
    }
    std::string provenance;
    FaultSignature signature;
};

/// Signature of a single-qubit X or Z flip inserted right at a noise
/// instruction. Lane order: per noise instruction, per target, X then Z.
struct ElementaryFault {
    uint32_t instruction;
    uint32_t qubit;
    bool is_x;
};

struct ElementarySignatures {
    std::vector<ElementaryFault> faults;
    std::vector<FaultSignature> signatures;
    /// first_lane[k] is the first fault of instruction k (or of the next
    /// noise instruction when k is not one).
    std::vector<uint32_t> first_lane;
};

/// Propagates every elementary X and Z flip at every noise target through the
/// rest of the circuit in one bit-parallel pass.
ElementarySignatures elementary_signatures(const Circuit &c);

/// Edge weight for probability p, with p clamped into (0, 0.5].
double edge_weight(double p);

/// XOR composition of two independent flips.
inline double compose_flip(double p1, double p2) {
    return p1 * (1 - p2) + p2 * (1 - p1);
}

/// Throws NonGraphlikeError when a per-qubit fault part still flips more
/// than two detectors, and std::invalid_argument for more than 64 observables.
DetectorGraph build_detector_graph(const Circuit &c);

}  // namespace quirc

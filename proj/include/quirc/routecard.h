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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quirc/pauli_string.h"

namespace quirc {

/// A topology violates its construction constraints.
class TopologyError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// An EP request joins nodes that no path connects.
class EpInfeasible : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Undirected coupling graph of a routing card. Neighbor lists are sorted and
/// free of duplicates and self-loops.
class RoutingCardGraph {
   public:
    static constexpr size_t DEFAULT_MAX_DEGREE = 4;

    /// Throws TopologyError on out-of-range edge endpoints, self-loops, or a
    /// node degree above `max_degree`. Duplicate edges are merged.
    RoutingCardGraph(std::vector<bool> external, const std::vector<std::pair<uint32_t, uint32_t>> &edges,
                     int thickness, size_t max_degree = DEFAULT_MAX_DEGREE);

    size_t num_nodes() const {
        return external_.size();
    }
    bool is_external(uint32_t v) const {
        return external_[v];
    }
    /// External node ids in increasing order.
    const std::vector<uint32_t> &externals() const {
        return externals_;
    }
    const std::vector<uint32_t> &neighbors(uint32_t v) const {
        return adj_[v];
    }
    /// Edges (a, b) with a < b in lexicographic order.
    std::vector<std::pair<uint32_t, uint32_t>> edges() const;
    size_t num_edges() const;
    /// Thickness class, 1 (planar chip) or 2 (two layers joined by vias).
    int thickness() const {
        return thickness_;
    }
    size_t max_degree() const {
        return max_degree_;
    }

   private:
    std::vector<bool> external_;
    std::vector<uint32_t> externals_;
    std::vector<std::vector<uint32_t>> adj_;
    int thickness_;
    size_t max_degree_;
};

/// Single cycle of 2M external nodes with `internals_per_gap` internal nodes
/// between consecutive external nodes. External node t has id t·(1 + gap).
RoutingCardGraph make_ring(size_t m, size_t internals_per_gap = 1);

/// The ring of make_ring as outer cycle plus an inner cycle of 2M internal
/// nodes, the t-th of which couples radially to external node t.
RoutingCardGraph make_double_ring(size_t m, size_t internals_per_gap = 1);

/// Ring of `n_ring` nodes where every j-th node gains a chord to the node i
/// positions ahead; 2M external nodes at positions ⌊t·n_ring / 2M⌋.
/// Requires 2 ≤ i < n_ring, j | n_ring and 2M ≤ n_ring.
RoutingCardGraph make_ruche(size_t n_ring, size_t i, size_t j, size_t m);

/// Boyer-Myrvold planarity test.
bool is_planar(const RoutingCardGraph &g);

/// Lines `node <id> <external|internal>` and `edge <a> <b>`; '#' starts a
/// comment. Node ids must be 0..n-1 in order.
void write_topology(std::ostream &out, const RoutingCardGraph &g);
/// Thickness is 1 when the graph is planar and 2 otherwise. Throws
/// TopologyError on malformed input.
RoutingCardGraph read_topology(std::istream &in, size_t max_degree = RoutingCardGraph::DEFAULT_MAX_DEGREE);

using EpRequest = std::pair<uint32_t, uint32_t>;

struct ScheduledEp {
    size_t request;              // index into the request list
    std::vector<uint32_t> path;  // request.first ... request.second
};

struct EpSchedule {
    std::vector<std::vector<ScheduledEp>> layers;

    size_t num_layers() const {
        return layers.size();
    }
};

/// Greedy first-fit layering. Each layer starts with every node free; pending
/// requests, in input order, take a shortest path over free nodes (BFS
/// expanding neighbors by increasing id) and occupy its nodes, or wait for a
/// later layer. Throws std::invalid_argument when an endpoint is not an
/// external node or a request joins a node to itself, and EpInfeasible when
/// the endpoints are disconnected.
EpSchedule schedule_eps(const std::vector<EpRequest> &requests, const RoutingCardGraph &g);

enum class Topology { RING, DOUBLE_RING, RUCHE_4_2, RUCHE_8_4 };

inline constexpr Topology ALL_TOPOLOGIES[] = {Topology::RING, Topology::DOUBLE_RING, Topology::RUCHE_4_2,
                                              Topology::RUCHE_8_4};

/// "ring", "double_ring", "ruche_4_2", "ruche_8_4".
std::string topology_name(Topology t);
/// Throws std::invalid_argument for an unknown name.
Topology parse_topology(const std::string &name);

/// Card for M modules. Ruche cards use a ring of max(2M(1 + gap), 2i) nodes.
RoutingCardGraph make_card(Topology t, size_t m, size_t internals_per_gap = 1);

struct EpSampleRow {
    Topology topology;
    size_t m, sample, ep_layers;
};

struct EpMeanRow {
    Topology topology;
    size_t m;
    double mean_layers;
};

struct EpBenchmark {
    std::vector<EpSampleRow> samples;
    std::vector<EpMeanRow> means;
};

/// For every M and sample, draws a uniform perfect matching of the 2M external
/// nodes as M requests in random order and schedules it on each topology. The
/// matching for a given (M, sample) is shared by all topologies.
EpBenchmark ep_layer_benchmark(const std::vector<size_t> &ms, const std::vector<Topology> &topologies,
                               size_t samples, uint64_t seed, size_t internals_per_gap = 1);

/// CSV with header `topology,M,sample,ep_layers`.
void write_ep_csv(std::ostream &out, const EpBenchmark &b);

struct BellCheck {
    bool ok = false;
    size_t nu = 0;
    /// Outcome m_i of qubit i (2 ≤ i ≤ ν - 1) is bit i - 2.
    uint64_t branch = 0;
    /// Correction Z^z_power X^x_power applied to qubit 1.
    bool z_power = false, x_power = false;
    std::string detail;
};

/// Qubit receiving the Hadamard after the CZ chain.
enum class BellHadamard {
    /// Qubit ν, the far end of the chain.
    END,
    /// Qubit ν - 1, which is then measured in Y; for ν ≥ 3 the ends are left
    /// in a graph state rather than |Φ+⟩.
    PENULTIMATE,
};

/// Runs the linear-graph-state Bell protocol on a chain of ν qubits with the
/// Y-measurement outcomes fixed by `branch`, applies the Pauli correction at
/// qubit 1, and checks that qubits 1 and ν are stabilized by +XX and +ZZ.
/// Throws std::invalid_argument unless 2 ≤ ν ≤ 64.
BellCheck bell_via_graph_state(size_t nu, uint64_t branch, BellHadamard hadamard = BellHadamard::END);

struct BellSweep {
    bool ok = true;
    uint64_t branches_checked = 0;
    std::vector<BellCheck> failures;
};

/// All 2^(ν-2) branches. Throws std::invalid_argument unless 2 ≤ ν ≤ 24.
BellSweep bell_via_graph_state_exhaustive(size_t nu, BellHadamard hadamard = BellHadamard::END);

struct RemoteCxEntry {
    PauliString input;     // on (control, target)
    PauliString expected;  // CX · input · CX
    uint8_t branch;        // bit 0: Z outcome of the control-side EP half; bit 1: X outcome of the other half
    bool ok;
};

struct RemoteCxReport {
    bool ok = true;
    std::vector<RemoteCxEntry> entries;  // 16 inputs × 4 branches
};

/// Checks the EP-consuming remote CX against an ideal CX. The control and
/// target are each maximally entangled with a reference qubit, so the final
/// state fixes the implemented channel; for every input Pauli P the state must
/// be stabilized by P on the references (transposed) times CX·P·CX on the
/// system, in every measurement branch.
RemoteCxReport remote_cx_check();

/// CX conjugation of a two-qubit Hermitian Pauli acting on (control, target).
PauliString conjugate_by_cx(const PauliString &p);

/// (p_remote_x, p_remote_z) = (ν·p_spam, ν·p_spam / 2), clamped to [0, 1].
/// Throws std::invalid_argument unless ν ≥ 2 and p_spam ∈ [0, 1].
std::pair<double, double> derive_remote_errors(size_t nu, double p_spam);

enum class LatencyFormula {
    /// 1 - exp(-layers·t_ep / t1): the decay probability over the wait.
    DECAY,
    /// exp(-layers·t_ep / t1): the survival probability.
    LITERAL,
};

/// Throws std::invalid_argument unless t_ep > 0 and t1 > 0.
double derive_latency_error(size_t ep_layers, double t_ep, double t1, LatencyFormula formula = LatencyFormula::DECAY);

}  // namespace quirc

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

#include "quirc/routecard.h"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <tuple>

#include "quirc/frame_simulator.h"
#include "quirc/tableau.h"

namespace quirc {

RoutingCardGraph::RoutingCardGraph(std::vector<bool> external, const std::vector<std::pair<uint32_t, uint32_t>> &edges,
                                   int thickness, size_t max_degree)
    : external_(std::move(external)), adj_(external_.size()), thickness_(thickness), max_degree_(max_degree) {
    if (thickness != 1 && thickness != 2) {
        throw TopologyError("Thickness class must be 1 or 2.");
    }
    for (auto [a, b] : edges) {
        if (a >= num_nodes() || b >= num_nodes()) {
            throw TopologyError("Edge (" + std::to_string(a) + ", " + std::to_string(b) + ") leaves the " +
                                std::to_string(num_nodes()) + "-node graph.");
        }
        if (a == b) {
            throw TopologyError("Self-loop at node " + std::to_string(a) + ".");
        }
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (uint32_t v = 0; v < num_nodes(); v++) {
        auto &n = adj_[v];
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
        if (n.size() > max_degree) {
            throw TopologyError("Node " + std::to_string(v) + " has degree " + std::to_string(n.size()) +
                                " above the bound " + std::to_string(max_degree) + ".");
        }
        if (external_[v]) {
            externals_.push_back(v);
        }
    }
}

std::vector<std::pair<uint32_t, uint32_t>> RoutingCardGraph::edges() const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t a = 0; a < num_nodes(); a++) {
        for (uint32_t b : adj_[a]) {
            if (a < b) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

size_t RoutingCardGraph::num_edges() const {
    size_t total = 0;
    for (const auto &n : adj_) {
        total += n.size();
    }
    return total / 2;
}

namespace {

void add_cycle(std::vector<std::pair<uint32_t, uint32_t>> &edges, uint32_t first, uint32_t count) {
    if (count < 2) {
        return;
    }
    for (uint32_t k = 0; k < count; k++) {
        edges.emplace_back(first + k, first + (k + 1) % count);
    }
}

void require_modules(size_t m) {
    if (m == 0) {
        throw TopologyError("A routing card needs at least one module.");
    }
}

}  // namespace

RoutingCardGraph make_ring(size_t m, size_t internals_per_gap) {
    require_modules(m);
    size_t stride = 1 + internals_per_gap, n = 2 * m * stride;
    std::vector<bool> external(n, false);
    for (size_t t = 0; t < 2 * m; t++) {
        external[t * stride] = true;
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    add_cycle(edges, 0, static_cast<uint32_t>(n));
    return RoutingCardGraph(std::move(external), edges, 1);
}

RoutingCardGraph make_double_ring(size_t m, size_t internals_per_gap) {
    require_modules(m);
    size_t stride = 1 + internals_per_gap, outer = 2 * m * stride, inner = 2 * m;
    std::vector<bool> external(outer + inner, false);
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    add_cycle(edges, 0, static_cast<uint32_t>(outer));
    add_cycle(edges, static_cast<uint32_t>(outer), static_cast<uint32_t>(inner));
    for (size_t t = 0; t < 2 * m; t++) {
        external[t * stride] = true;
        edges.emplace_back(static_cast<uint32_t>(t * stride), static_cast<uint32_t>(outer + t));
    }
    return RoutingCardGraph(std::move(external), edges, 1);
}

RoutingCardGraph make_ruche(size_t n_ring, size_t i, size_t j, size_t m) {
    require_modules(m);
    if (i < 2 || i >= n_ring) {
        throw TopologyError("Ruche stride i = " + std::to_string(i) + " must lie in [2, " + std::to_string(n_ring) +
                            ").");
    }
    if (j == 0 || n_ring % j != 0) {
        throw TopologyError("Ruche period j = " + std::to_string(j) + " must divide the ring size " +
                            std::to_string(n_ring) + ".");
    }
    if (2 * m > n_ring) {
        throw TopologyError("A " + std::to_string(n_ring) + "-node ring cannot hold " + std::to_string(2 * m) +
                            " external nodes.");
    }
    std::vector<bool> external(n_ring, false);
    for (size_t t = 0; t < 2 * m; t++) {
        external[t * n_ring / (2 * m)] = true;
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    add_cycle(edges, 0, static_cast<uint32_t>(n_ring));
    for (size_t a = 0; a < n_ring; a += j) {
        edges.emplace_back(static_cast<uint32_t>(a), static_cast<uint32_t>((a + i) % n_ring));
    }
    return RoutingCardGraph(std::move(external), edges, 2);
}

bool is_planar(const RoutingCardGraph &g) {
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS> bg(g.num_nodes());
    for (auto [a, b] : g.edges()) {
        boost::add_edge(a, b, bg);
    }
    return boost::boyer_myrvold_planarity_test(bg);
}

void write_topology(std::ostream &out, const RoutingCardGraph &g) {
    for (uint32_t v = 0; v < g.num_nodes(); v++) {
        out << "node " << v << (g.is_external(v) ? " external\n" : " internal\n");
    }
    for (auto [a, b] : g.edges()) {
        out << "edge " << a << " " << b << "\n";
    }
}

RoutingCardGraph read_topology(std::istream &in, size_t max_degree) {
    std::vector<bool> external;
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        line_number++;
        line = line.substr(0, line.find('#'));
        std::istringstream ss(line);
        std::string word;
        if (!(ss >> word)) {
            continue;
        }
        auto fail = [&](const std::string &why) {
            return TopologyError("Topology line " + std::to_string(line_number) + ": " + why);
        };
        if (word == "node") {
            int64_t id;
            std::string kind;
            if (!(ss >> id >> kind) || (kind != "external" && kind != "internal")) {
                throw fail("expected `node <id> <external|internal>`.");
            }
            if (id != static_cast<int64_t>(external.size())) {
                throw fail("node ids must be consecutive from 0.");
            }
            external.push_back(kind == "external");
        } else if (word == "edge") {
            int64_t a, b;
            if (!(ss >> a >> b) || a < 0 || b < 0) {
                throw fail("expected `edge <a> <b>`.");
            }
            edges.emplace_back(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
        } else {
            throw fail("unknown directive '" + word + "'.");
        }
        if (ss >> word) {
            throw fail("trailing text '" + word + "'.");
        }
    }
    RoutingCardGraph flat(external, edges, 1, max_degree);
    return RoutingCardGraph(std::move(external), edges, is_planar(flat) ? 1 : 2, max_degree);
}

namespace {

/// Shortest path from s to t over nodes not marked busy, or empty.
std::vector<uint32_t> bfs_path(const RoutingCardGraph &g, uint32_t s, uint32_t t, const std::vector<bool> &busy) {
    if (busy[s] || busy[t]) {
        return {};
    }
    constexpr uint32_t UNSEEN = UINT32_MAX;
    std::vector<uint32_t> parent(g.num_nodes(), UNSEEN);
    std::deque<uint32_t> queue{s};
    parent[s] = s;
    while (!queue.empty() && parent[t] == UNSEEN) {
        uint32_t u = queue.front();
        queue.pop_front();
        for (uint32_t v : g.neighbors(u)) {
            if (!busy[v] && parent[v] == UNSEEN) {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    if (parent[t] == UNSEEN) {
        return {};
    }
    std::vector<uint32_t> path{t};
    while (path.back() != s) {
        path.push_back(parent[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

EpSchedule schedule_eps(const std::vector<EpRequest> &requests, const RoutingCardGraph &g) {
    std::vector<bool> none(g.num_nodes(), false);
    for (auto [a, b] : requests) {
        if (a >= g.num_nodes() || b >= g.num_nodes() || !g.is_external(a) || !g.is_external(b)) {
            throw std::invalid_argument("EP request (" + std::to_string(a) + ", " + std::to_string(b) +
                                        ") must join external nodes.");
        }
        if (a == b) {
            throw std::invalid_argument("EP request joins node " + std::to_string(a) + " to itself.");
        }
        if (bfs_path(g, a, b, none).empty()) {
            throw EpInfeasible("No path joins external nodes " + std::to_string(a) + " and " + std::to_string(b) +
                               ".");
        }
    }
    EpSchedule sched;
    std::vector<size_t> pending(requests.size());
    std::iota(pending.begin(), pending.end(), 0);
    while (!pending.empty()) {
        std::vector<bool> busy(g.num_nodes(), false);
        std::vector<ScheduledEp> layer;
        std::vector<size_t> deferred;
        for (size_t r : pending) {
            std::vector<uint32_t> path = bfs_path(g, requests[r].first, requests[r].second, busy);
            if (path.empty()) {
                deferred.push_back(r);
                continue;
            }
            for (uint32_t v : path) {
                busy[v] = true;
            }
            layer.push_back(ScheduledEp{r, std::move(path)});
        }
        sched.layers.push_back(std::move(layer));
        pending = std::move(deferred);
    }
    return sched;
}

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::RING:
            return "ring";
        case Topology::DOUBLE_RING:
            return "double_ring";
        case Topology::RUCHE_4_2:
            return "ruche_4_2";
        case Topology::RUCHE_8_4:
            return "ruche_8_4";
    }
    throw std::invalid_argument("Unknown topology.");
}

Topology parse_topology(const std::string &name) {
    for (Topology t : ALL_TOPOLOGIES) {
        if (topology_name(t) == name) {
            return t;
        }
    }
    throw std::invalid_argument("Unknown topology '" + name + "'.");
}

RoutingCardGraph make_card(Topology t, size_t m, size_t internals_per_gap) {
    auto ruche = [&](size_t i, size_t j) {
        size_t n = std::max(2 * m * (1 + internals_per_gap), 2 * i);
        n = (n + j - 1) / j * j;
        return make_ruche(n, i, j, m);
    };
    switch (t) {
        case Topology::RING:
            return make_ring(m, internals_per_gap);
        case Topology::DOUBLE_RING:
            return make_double_ring(m, internals_per_gap);
        case Topology::RUCHE_4_2:
            return ruche(4, 2);
        case Topology::RUCHE_8_4:
            return ruche(8, 4);
    }
    throw std::invalid_argument("Unknown topology.");
}

EpBenchmark ep_layer_benchmark(const std::vector<size_t> &ms, const std::vector<Topology> &topologies,
                               size_t samples, uint64_t seed, size_t internals_per_gap) {
    if (ms.empty() || topologies.empty() || samples == 0) {
        throw std::invalid_argument("The EP benchmark needs modules, topologies and at least one sample.");
    }
    EpBenchmark out;
    for (size_t m : ms) {
        require_modules(m);
        // Pairs of external ordinals, shared across topologies.
        std::vector<std::vector<std::pair<size_t, size_t>>> matchings(samples);
        for (size_t s = 0; s < samples; s++) {
            std::mt19937_64 rng(derive_stream_seed(seed, (static_cast<uint64_t>(m) << 32) ^ s));
            std::vector<size_t> perm(2 * m);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (size_t r = 0; r < m; r++) {
                matchings[s].emplace_back(perm[2 * r], perm[2 * r + 1]);
            }
        }
        for (Topology t : topologies) {
            RoutingCardGraph g = make_card(t, m, internals_per_gap);
            double total = 0;
            for (size_t s = 0; s < samples; s++) {
                std::vector<EpRequest> requests;
                for (auto [a, b] : matchings[s]) {
                    requests.emplace_back(g.externals()[a], g.externals()[b]);
                }
                size_t layers = schedule_eps(requests, g).num_layers();
                out.samples.push_back(EpSampleRow{t, m, s, layers});
                total += static_cast<double>(layers);
            }
            out.means.push_back(EpMeanRow{t, m, total / static_cast<double>(samples)});
        }
    }
    return out;
}

void write_ep_csv(std::ostream &out, const EpBenchmark &b) {
    out << "topology,M,sample,ep_layers\n";
    for (const EpSampleRow &r : b.samples) {
        out << topology_name(r.topology) << "," << r.m << "," << r.sample << "," << r.ep_layers << "\n";
    }
}

BellCheck bell_via_graph_state(size_t nu, uint64_t branch, BellHadamard hadamard) {
    if (nu < 2 || nu > 64) {
        throw std::invalid_argument("Chain length must lie in [2, 64], got " + std::to_string(nu) + ".");
    }
    BellCheck result;
    result.nu = nu;
    result.branch = branch;
    // Protocol qubit i is tableau qubit i - 1.
    StabilizerTableau t(nu);
    for (size_t q = 0; q < nu; q++) {
        t.h(q);
    }
    for (size_t i = 3; i <= nu; i++) {
        t.s_dag(i - 1);
    }
    for (size_t r = 0; r < (nu - 2) % 4; r++) {
        t.s_dag(0);
    }
    for (size_t i = 1; i < nu; i++) {
        t.cz(i - 1, i);
    }
    t.h(hadamard == BellHadamard::END ? nu - 1 : nu - 2);
    size_t z_sum = 0, x_sum = 0;
    for (size_t i = 2; i + 1 <= nu; i++) {
        bool m = (branch >> (i - 2)) & 1;
        MeasureResult r = t.measure_forced(PauliString::single(nu, i - 1, 'Y'), m);
        if (r.outcome != m) {
            result.detail = "Y outcome of qubit " + std::to_string(i) + " is fixed to " +
                            std::to_string(r.outcome) + ".";
            return result;
        }
        z_sum += (nu - i) * m;
        x_sum += m;
    }
    result.x_power = x_sum & 1;
    result.z_power = z_sum & 1;
    if (result.x_power) {
        t.x(0);
    }
    if (result.z_power) {
        t.z(0);
    }
    for (char p : {'X', 'Z'}) {
        PauliString pp = PauliString::single(nu, 0, p);
        pp.set(nu - 1, p);
        std::optional<bool> v = t.peek(pp);
        if (!v.has_value() || *v) {
            result.detail = std::string(v.has_value() ? "-" : "random ") + p + p + " on qubits 1 and " +
                            std::to_string(nu) + ".";
            return result;
        }
    }
    result.ok = true;
    return result;
}

BellSweep bell_via_graph_state_exhaustive(size_t nu, BellHadamard hadamard) {
    if (nu < 2 || nu > 24) {
        throw std::invalid_argument("Exhaustive checks need a chain length in [2, 24], got " + std::to_string(nu) +
                                    ".");
    }
    BellSweep sweep;
    uint64_t branches = uint64_t{1} << (nu - 2);
    for (uint64_t b = 0; b < branches; b++) {
        BellCheck c = bell_via_graph_state(nu, b, hadamard);
        sweep.branches_checked++;
        if (!c.ok) {
            sweep.ok = false;
            sweep.failures.push_back(std::move(c));
        }
    }
    return sweep;
}

PauliString conjugate_by_cx(const PauliString &p) {
    if (p.num_qubits() != 2 || !p.is_hermitian()) {
        throw std::invalid_argument("CX conjugation takes a Hermitian two-qubit Pauli.");
    }
    bool xc = p.x(0), zc = p.z(0), xt = p.x(1), zt = p.z(1);
    PauliString out(2);
    out.set_x(0, xc);
    out.set_z(0, zc ^ zt);
    out.set_x(1, xt ^ xc);
    out.set_z(1, zt);
    bool flip = xc && zt && !(xt ^ zc);
    out.set_phase(static_cast<uint8_t>(p.phase() ^ (flip ? 2 : 0)));
    return out;
}

RemoteCxReport remote_cx_check() {
    // Qubits: control, control-side EP half, target-side EP half, target,
    // reference of control, reference of target.
    constexpr size_t C = 0, EA = 1, EB = 2, T = 3, RC = 4, RT = 5;
    auto prepare = [&]() {
        StabilizerTableau s(6);
        for (auto [r, q] : {std::pair{RC, C}, std::pair{RT, T}, std::pair{EA, EB}}) {
            s.h(r);
            s.cx(r, q);
        }
        return s;
    };
    RemoteCxReport report;
    const char paulis[] = {'I', 'X', 'Y', 'Z'};
    for (uint8_t branch = 0; branch < 4; branch++) {
        StabilizerTableau s = prepare();
        s.cx(C, EA);
        s.cx(EB, T);
        bool mz = branch & 1, mx = (branch >> 1) & 1;
        bool ok_branch = s.measure_forced(PauliString::single(6, EA, 'Z'), mz).outcome == mz;
        ok_branch &= s.measure_forced(PauliString::single(6, EB, 'X'), mx).outcome == mx;
        if (mz) {
            s.x(T);
        }
        if (mx) {
            s.z(C);
        }
        for (char pc : paulis) {
            for (char pt : paulis) {
                PauliString in(2);
                if (pc != 'I') {
                    in.set(0, pc);
                }
                if (pt != 'I') {
                    in.set(1, pt);
                }
                PauliString expected = conjugate_by_cx(in);
                PauliString probe(6);
                uint8_t phase = expected.phase();
                for (auto [sys, ref, in_q] : {std::tuple{C, RC, 0}, std::tuple{T, RT, 1}}) {
                    char a = in.pauli_at(in_q), b = expected.pauli_at(in_q);
                    if (a != 'I') {
                        probe.set(ref, a);
                    }
                    if (b != 'I') {
                        probe.set(sys, b);
                    }
                    if (a == 'Y') {
                        phase ^= 2;
                    }
                }
                probe.set_phase(phase);
                std::optional<bool> v = s.peek(probe);
                bool ok = ok_branch && v.has_value() && !*v;
                report.ok &= ok;
                report.entries.push_back(RemoteCxEntry{in, expected, branch, ok});
            }
        }
    }
    return report;
}

std::pair<double, double> derive_remote_errors(size_t nu, double p_spam) {
    if (nu < 2) {
        throw std::invalid_argument("Chain length must be at least 2.");
    }
    if (!(p_spam >= 0 && p_spam <= 1)) {
        throw std::invalid_argument("p_spam must lie in [0, 1].");
    }
    double n = static_cast<double>(nu);
    return {std::min(1.0, n * p_spam), std::min(1.0, n / 2 * p_spam)};
}

double derive_latency_error(size_t ep_layers, double t_ep, double t1, LatencyFormula formula) {
    if (!(t_ep > 0) || !(t1 > 0)) {
        throw std::invalid_argument("EP generation time and T1 must be positive.");
    }
    double rate = static_cast<double>(ep_layers) * t_ep / t1;
    return formula == LatencyFormula::DECAY ? -std::expm1(-rate) : std::exp(-rate);
}

}  // namespace quirc

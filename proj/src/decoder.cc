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

#include "quirc/decoder.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace quirc {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

}  // namespace

UnionFindDecoder::UnionFindDecoder(const DetectorGraph &graph, DecoderOptions options)
    : g_(graph),
      options_(options),
      parent_(graph.num_nodes()),
      size_(graph.num_nodes(), 1),
      cluster_(graph.num_nodes()),
      in_cluster_(graph.num_nodes(), 0),
      defect_(graph.num_nodes(), 0),
      mark_(graph.num_nodes(), 0),
      growth_(graph.edges.size(), 0.0),
      grown_(graph.edges.size(), 0),
      rate_stamp_(graph.edges.size(), 0),
      rate_(graph.edges.size(), 0),
      dist_(graph.num_nodes(), INF),
      path_obs_(graph.num_nodes(), 0),
      dist_stamp_(graph.num_nodes(), 0) {
    if (g_.adjacency.size() != g_.num_nodes()) {
        throw std::invalid_argument("Detector graph adjacency does not cover every node.");
    }
    for (uint32_t v = 0; v < parent_.size(); v++) {
        parent_[v] = v;
    }
}

uint32_t UnionFindDecoder::find(uint32_t v) {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

void UnionFindDecoder::touch(uint32_t v) {
    if (in_cluster_[v]) {
        return;
    }
    in_cluster_[v] = 1;
    parent_[v] = v;
    size_[v] = 1;
    Cluster &c = cluster_[v];
    c.odd = false;
    c.has_boundary = v == g_.boundary();
    c.frontier.assign(g_.adjacency[v].begin(), g_.adjacency[v].end());
    touched_nodes_.push_back(v);
}

void UnionFindDecoder::unite(uint32_t a, uint32_t b) {
    uint32_t ra = find(a), rb = find(b);
    if (ra == rb) {
        return;
    }
    if (size_[ra] < size_[rb]) {
        std::swap(ra, rb);
    }
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    Cluster &big = cluster_[ra];
    Cluster &small = cluster_[rb];
    big.odd ^= small.odd;
    big.has_boundary |= small.has_boundary;
    if (big.frontier.size() < small.frontier.size()) {
        big.frontier.swap(small.frontier);
    }
    big.frontier.insert(big.frontier.end(), small.frontier.begin(), small.frontier.end());
    small.frontier.clear();
}

void UnionFindDecoder::reset() {
    for (uint32_t v : touched_nodes_) {
        in_cluster_[v] = 0;
        parent_[v] = v;
        size_[v] = 1;
        defect_[v] = 0;
        cluster_[v].frontier.clear();
    }
    touched_nodes_.clear();
    for (uint32_t e : touched_edges_) {
        growth_[e] = 0;
        grown_[e] = 0;
    }
    touched_edges_.clear();
}

uint64_t UnionFindDecoder::peel() {
    // Spanning trees over fully grown edges, rooted at the boundary when the
    // cluster holds it; each node hands its defect parity to its parent.
    uint64_t obs = 0;
    const uint32_t B = g_.boundary();
    std::vector<uint32_t> starts;
    for (uint32_t v : touched_nodes_) {
        uint32_t r = find(v);
        if (!mark_[r]) {
            mark_[r] = 1;
            starts.push_back(cluster_[r].has_boundary ? B : v);
        }
    }
    for (uint32_t v : touched_nodes_) {
        mark_[v] = 0;
    }
    for (uint32_t start : starts) {
        order_.assign(1, start);
        up_.clear();
        mark_[start] = 1;
        for (size_t k = 0; k < order_.size(); k++) {
            uint32_t u = order_[k];
            for (uint32_t e : g_.adjacency[u]) {
                uint32_t w = g_.other(e, u);
                if (!grown_[e] || mark_[w]) {
                    continue;
                }
                mark_[w] = 1;
                order_.push_back(w);
                up_.push_back({w, e});
            }
        }
        for (size_t k = up_.size(); k-- > 0;) {
            auto [u, e] = up_[k];
            if (defect_[u]) {
                defect_[u] = 0;
                defect_[g_.other(e, u)] ^= 1;
                obs ^= g_.edges[e].observables;
            }
        }
        if (start != B && defect_[start]) {
            throw DecodingInfeasible("Peeling left an unmatched defect at detector " + std::to_string(start) + ".");
        }
    }
    for (uint32_t v : touched_nodes_) {
        mark_[v] = 0;
    }
    return obs;
}

uint64_t UnionFindDecoder::decode(std::span<const uint32_t> fired) {
    for (uint32_t d : fired) {
        if (d >= g_.num_detectors) {
            throw std::out_of_range("Detector " + std::to_string(d) + " is not in the graph.");
        }
    }
    if (fired.empty()) {
        return 0;
    }
    if (fired.size() <= options_.exact_max_defects) {
        return decode_exact(fired);
    }
    reset();
    for (uint32_t d : fired) {
        touch(d);
        defect_[d] ^= 1;
        cluster_[d].odd ^= 1;
    }
    std::vector<uint32_t> active, next, edges, fused;
    for (uint32_t d : fired) {
        if (cluster_[d].odd) {
            active.push_back(d);
        }
    }
    while (!active.empty()) {
        stamp_++;
        edges.clear();
        for (uint32_t r : active) {
            auto &fr = cluster_[r].frontier;
            size_t keep = 0;
            for (uint32_t e : fr) {
                if (grown_[e]) {
                    continue;
                }
                const GraphEdge &ge = g_.edges[e];
                uint32_t ra = in_cluster_[ge.a] ? find(ge.a) : ge.a;
                uint32_t rb = in_cluster_[ge.b] ? find(ge.b) : ge.b;
                if (ra == rb) {
                    continue;
                }
                fr[keep++] = e;
                if (rate_stamp_[e] != stamp_) {
                    rate_stamp_[e] = stamp_;
                    rate_[e] = 0;
                    edges.push_back(e);
                }
                rate_[e]++;
            }
            fr.resize(keep);
            if (keep == 0) {
                throw DecodingInfeasible("An odd cluster at detector " + std::to_string(r) +
                                         " cannot reach the boundary.");
            }
        }
        double delta = INF;
        uint32_t argmin = edges[0];
        for (uint32_t e : edges) {
            double t = (g_.edges[e].weight - growth_[e]) / rate_[e];
            if (t < delta) {
                delta = t;
                argmin = e;
            }
        }
        delta = std::max(delta, 0.0);
        fused.clear();
        for (uint32_t e : edges) {
            if (growth_[e] == 0 && !grown_[e]) {
                touched_edges_.push_back(e);
            }
            double w = g_.edges[e].weight;
            growth_[e] += delta * rate_[e];
            if (e == argmin || growth_[e] >= w - 1e-12 * std::max(1.0, w)) {
                growth_[e] = w;
                grown_[e] = 1;
                fused.push_back(e);
            }
        }
        for (uint32_t e : fused) {
            touch(g_.edges[e].a);
            touch(g_.edges[e].b);
            unite(g_.edges[e].a, g_.edges[e].b);
        }
        next.clear();
        for (uint32_t r : active) {
            uint32_t root = find(r);
            const Cluster &c = cluster_[root];
            if (c.odd && !c.has_boundary && !mark_[root]) {
                mark_[root] = 1;
                next.push_back(root);
            }
        }
        for (uint32_t r : next) {
            mark_[r] = 0;
        }
        active.swap(next);
    }
    uint64_t obs = peel();
    reset();
    return obs;
}

uint64_t UnionFindDecoder::decode_exact(std::span<const uint32_t> fired) {
    // Defects listed an even number of times cancel.
    std::vector<uint32_t> defects(fired.begin(), fired.end());
    std::sort(defects.begin(), defects.end());
    std::vector<uint32_t> odd;
    for (size_t k = 0; k < defects.size();) {
        size_t j = k;
        while (j < defects.size() && defects[j] == defects[k]) {
            j++;
        }
        if ((j - k) % 2) {
            odd.push_back(defects[k]);
        }
        k = j;
    }
    size_t n = odd.size();
    if (n == 0) {
        return 0;
    }
    if (n > 20) {
        throw std::invalid_argument("Exact matching is limited to 20 defects.");
    }
    const uint32_t B = g_.boundary();
    std::vector<std::vector<double>> D(n, std::vector<double>(n + 1, INF));
    std::vector<std::vector<uint64_t>> O(n, std::vector<uint64_t>(n + 1, 0));
    using Item = std::pair<double, uint32_t>;
    for (size_t i = 0; i < n; i++) {
        dist_round_++;
        auto dist = [&](uint32_t v) { return dist_stamp_[v] == dist_round_ ? dist_[v] : INF; };
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist_stamp_[odd[i]] = dist_round_;
        dist_[odd[i]] = 0;
        path_obs_[odd[i]] = 0;
        pq.push({0.0, odd[i]});
        size_t remaining = n - i;  // the boundary plus defects after i
        std::vector<uint8_t> settled_target(n + 1, 0);
        while (!pq.empty() && remaining > 0) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > dist(u)) {
                continue;
            }
            if (u == B) {
                if (!settled_target[n]) {
                    settled_target[n] = 1;
                    remaining--;
                }
                continue;  // the boundary is never an intermediate node
            }
            for (size_t j = i + 1; j < n; j++) {
                if (odd[j] == u && !settled_target[j]) {
                    settled_target[j] = 1;
                    remaining--;
                }
            }
            for (uint32_t e : g_.adjacency[u]) {
                uint32_t v = g_.other(e, u);
                double nd = du + g_.edges[e].weight;
                if (nd < dist(v)) {
                    dist_stamp_[v] = dist_round_;
                    dist_[v] = nd;
                    path_obs_[v] = path_obs_[u] ^ g_.edges[e].observables;
                    pq.push({nd, v});
                }
            }
        }
        for (size_t j = i + 1; j < n; j++) {
            D[i][j] = dist(odd[j]);
            O[i][j] = dist(odd[j]) < INF ? path_obs_[odd[j]] : 0;
            D[j][i] = D[i][j];
            O[j][i] = O[i][j];
        }
        D[i][n] = dist(B);
        O[i][n] = dist(B) < INF ? path_obs_[B] : 0;
    }
    size_t full = (size_t{1} << n) - 1;
    std::vector<double> best(full + 1, INF);
    std::vector<uint64_t> obs(full + 1, 0);
    best[0] = 0;
    for (size_t mask = 1; mask <= full; mask++) {
        size_t i = static_cast<size_t>(std::countr_zero(mask));
        size_t rest = mask & ~(size_t{1} << i);
        if (best[rest] + D[i][n] < best[mask]) {
            best[mask] = best[rest] + D[i][n];
            obs[mask] = obs[rest] ^ O[i][n];
        }
        for (size_t j = i + 1; j < n; j++) {
            if (!(rest >> j & 1)) {
                continue;
            }
            size_t r2 = rest & ~(size_t{1} << j);
            if (best[r2] + D[i][j] < best[mask]) {
                best[mask] = best[r2] + D[i][j];
                obs[mask] = obs[r2] ^ O[i][j];
            }
        }
    }
    if (best[full] == INF) {
        throw DecodingInfeasible("No matching exists for the given syndrome.");
    }
    return obs[full];
}

uint64_t decode(const DetectorGraph &graph, std::span<const uint32_t> fired, DecoderOptions options) {
    UnionFindDecoder dec(graph, options);
    return dec.decode(fired);
}

}  // namespace quirc

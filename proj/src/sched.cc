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

#include "quirc/sched.h"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include "quirc/frame_simulator.h"

namespace quirc {

OperatorSet sample_operator_set(size_t n, size_t p, size_t k, std::mt19937_64 &rng) {
    if (p == 0 || k == 0 || p * k != n) {
        throw std::invalid_argument("Operator sets must be dense: P·K = " + std::to_string(p * k) +
                                    " but N = " + std::to_string(n) + ".");
    }
    std::vector<uint32_t> q(n);
    std::iota(q.begin(), q.end(), 1u);
    std::shuffle(q.begin(), q.end(), rng);
    OperatorSet s;
    s.n = n;
    for (size_t b = 0; b < p; b++) {
        std::vector<uint32_t> op(q.begin() + b * k, q.begin() + (b + 1) * k);
        std::sort(op.begin(), op.end());
        s.operators.push_back(std::move(op));
    }
    return s;
}

ModuleGraph::ModuleGraph(size_t n, size_t m) : n_(n), m_(m), l_(0) {
    if (m == 0 || m > n || n % m != 0) {
        throw std::invalid_argument("Module count " + std::to_string(m) + " does not divide N = " +
                                    std::to_string(n) + ".");
    }
    if (n > 64) {
        throw std::invalid_argument("At most 64 qubits are supported.");
    }
    l_ = n / m;
    size_t lo = (l_ + 2) / 3, hi = (2 * l_ + 2) / 3;
    connectors_.resize(m);
    for (size_t mod = 0; mod < m; mod++) {
        connectors_[mod].push_back(vertex(mod, lo));
        if (hi != lo) {
            connectors_[mod].push_back(vertex(mod, hi));
        }
    }
}

bool ModuleGraph::is_connector(uint32_t q) const {
    const auto &c = connectors_[module_of(q)];
    return std::find(c.begin(), c.end(), q) != c.end();
}

namespace {

constexpr size_t MAX_OPERATOR_SIZE = 8;

uint64_t bit(uint32_t q) {
    return uint64_t{1} << (q - 1);
}

class Router {
   public:
    Router(const ModuleGraph &g, const std::vector<uint32_t> &op, uint64_t blocked)
        : g_(g), op_(op), blocked_(blocked), dist_(g.n() + 1), prev_(g.n() + 1), hop_(g.n() + 1) {
        for (uint32_t q : op_) {
            op_mask_ |= bit(q);
        }
    }

    bool run(RoutedOperator &out) {
        if (blocked_ & op_mask_) {
            return false;
        }
        std::vector<int8_t> last(g_.m(), 0), dir(g_.m(), 0);
        for (size_t i = 0; i < op_.size() && best_size_ > op_.size(); i++) {
            Walk w;
            add(w, op_[i]);
            Order o{last, dir};
            advance(o, op_[i]);
            search(w, o, op_[i], (uint32_t{1} << op_.size()) - 1 - (uint32_t{1} << i));
        }
        if (best_size_ == SIZE_MAX) {
            return false;
        }
        out.path = best_.vertices;
        out.hops = best_.hops;
        return true;
    }

   private:
    /// Vertices occupied so far in first-visit order, and hops traversed.
    struct Walk {
        uint64_t mask = 0;
        std::vector<uint32_t> vertices;
        size_t hops = 0;
    };
    /// Per module: last visited operator position and the direction of travel.
    struct Order {
        std::vector<int8_t> last, dir;
    };

    static void add(Walk &w, uint32_t v) {
        if (!(w.mask & bit(v))) {
            w.mask |= bit(v);
            w.vertices.push_back(v);
        }
    }

    /// Records a visit to qubit q; false if it breaks monotone order.
    bool advance(Order &o, uint32_t q) const {
        size_t m = g_.module_of(q);
        auto pos = static_cast<int8_t>(g_.position_of(q));
        if (o.last[m]) {
            int8_t d = pos > o.last[m] ? 1 : -1;
            if (o.dir[m] && o.dir[m] != d) {
                return false;
            }
            o.dir[m] = d;
        }
        o.last[m] = pos;
        return true;
    }

    template <typename F>
    void neighbors(uint32_t v, F &&f) const {
        size_t m = g_.module_of(v), pos = g_.position_of(v);
        if (pos > 1) {
            f(v - 1, false);
        }
        if (pos < g_.l()) {
            f(v + 1, false);
        }
        if (g_.is_connector(v)) {
            for (size_t other = 0; other < g_.m(); other++) {
                if (other != m) {
                    for (uint32_t c : g_.connectors(other)) {
                        f(c, true);
                    }
                }
            }
        }
    }

    /// Extends the walk from a to b along a route adding the fewest new
    /// vertices (0-1 BFS; own vertices are free). False if b is cut off.
    bool connect(Walk &w, uint32_t a, uint32_t b) {
        std::fill(dist_.begin(), dist_.end(), SIZE_MAX);
        std::deque<uint32_t> dq;
        dist_[a] = 0;
        dq.push_back(a);
        while (!dq.empty()) {
            uint32_t u = dq.front();
            dq.pop_front();
            if (u == b) {
                break;
            }
            neighbors(u, [&](uint32_t v, bool hop) {
                if (blocked_ & bit(v)) {
                    return;
                }
                size_t cost = (w.mask & bit(v)) ? 0 : 1;
                if (dist_[u] + cost < dist_[v]) {
                    dist_[v] = dist_[u] + cost;
                    prev_[v] = u;
                    hop_[v] = hop;
                    if (cost) {
                        dq.push_back(v);
                    } else {
                        dq.push_front(v);
                    }
                }
            });
        }
        if (dist_[b] == SIZE_MAX) {
            return false;
        }
        std::vector<uint32_t> route;
        for (uint32_t v = b; v != a; v = prev_[v]) {
            route.push_back(v);
            w.hops += hop_[v];
        }
        for (size_t i = route.size(); i-- > 0;) {
            add(w, route[i]);
        }
        return true;
    }

    void search(const Walk &w, const Order &o, uint32_t at, uint32_t remaining) {
        if (remaining == 0) {
            if (w.vertices.size() < best_size_) {
                best_size_ = w.vertices.size();
                best_ = w;
            }
            return;
        }
        uint64_t bound = w.mask;
        for (size_t j = 0; j < op_.size(); j++) {
            if (remaining >> j & 1) {
                bound |= bit(op_[j]);
            }
        }
        if (static_cast<size_t>(std::popcount(bound)) >= best_size_) {
            return;
        }
        for (size_t j = 0; j < op_.size() && best_size_ > op_.size(); j++) {
            if (!(remaining >> j & 1)) {
                continue;
            }
            Order next = o;
            if (!advance(next, op_[j])) {
                continue;
            }
            Walk t = w;
            if (connect(t, at, op_[j])) {
                search(t, next, op_[j], remaining & ~(uint32_t{1} << j));
            }
        }
    }

    const ModuleGraph &g_;
    const std::vector<uint32_t> &op_;
    uint64_t blocked_;
    uint64_t op_mask_ = 0;
    std::vector<size_t> dist_;
    std::vector<uint32_t> prev_;
    std::vector<uint8_t> hop_;
    Walk best_;
    size_t best_size_ = SIZE_MAX;
};

}  // namespace

bool route_operator(const ModuleGraph &g, const std::vector<uint32_t> &op, uint64_t blocked, RoutedOperator &out) {
    if (op.empty() || op.size() > MAX_OPERATOR_SIZE) {
        throw std::invalid_argument("Operators must have between 1 and 8 qubits.");
    }
    for (uint32_t q : op) {
        if (q < 1 || q > g.n()) {
            throw std::out_of_range("Qubit " + std::to_string(q) + " is outside 1.." + std::to_string(g.n()) + ".");
        }
    }
    return Router(g, op, blocked).run(out);
}

LayerSchedule transpile_layers(const OperatorSet &s, const ModuleGraph &g) {
    if (s.n != g.n()) {
        throw std::invalid_argument("Operator set and module graph disagree on N.");
    }
    LayerSchedule out;
    std::vector<size_t> remaining(s.operators.size());
    std::iota(remaining.begin(), remaining.end(), size_t{0});
    while (!remaining.empty()) {
        std::vector<RoutedOperator> layer;
        std::vector<size_t> deferred;
        uint64_t blocked = 0;
        for (size_t op : remaining) {
            RoutedOperator r;
            r.op = op;
            if (route_operator(g, s.operators[op], blocked, r)) {
                for (uint32_t v : r.path) {
                    blocked |= bit(v);
                }
                layer.push_back(std::move(r));
            } else if (blocked == 0) {
                throw InfeasibleOperator("Operator " + std::to_string(op) + " has no forward path.");
            } else {
                deferred.push_back(op);
            }
        }
        out.layers.push_back(std::move(layer));
        remaining.swap(deferred);
    }
    return out;
}

AncillaStats ancilla_stats(const LayerSchedule &sched) {
    AncillaStats st;
    size_t count = 0, total = 0, total_hops = 0;
    for (const auto &layer : sched.layers) {
        for (const RoutedOperator &r : layer) {
            if (st.lengths.size() <= r.op) {
                st.lengths.resize(r.op + 1, 0);
            }
            st.lengths[r.op] = r.path.size();
            total += r.path.size();
            total_hops += r.hops;
            count++;
        }
    }
    if (count == 0) {
        throw std::invalid_argument("Ancilla statistics need a nonempty schedule.");
    }
    st.mean_length = static_cast<double>(total) / count;
    st.mean_length_with_hops = static_cast<double>(total + total_hops) / count;
    return st;
}

Rational::Rational(int64_t n, int64_t d) {
    if (d == 0) {
        throw std::domain_error("Zero denominator.");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    int64_t g = std::gcd(n, d);
    num = n / g;
    den = d / g;
}

OrderStats expected_order_stats(int64_t n, int64_t k) {
    if (k < 1 || k > n) {
        throw std::domain_error("Order statistics need 1 <= k <= N.");
    }
    OrderStats s;
    s.e_kmax = Rational(k * (n + 1), k + 1);
    s.e_kmin = Rational(n * (k + 1) - k * (n + 1), k + 1);
    s.e_span = Rational(n * (k - 1) + 2 * k, k + 1);
    return s;
}

GridResult benchmark_grid(const GridConfig &config) {
    if (std::find(config.modules.begin(), config.modules.end(), size_t{1}) == config.modules.end()) {
        throw std::invalid_argument("The module list must include M = 1 as the reference.");
    }
    std::vector<ModuleGraph> graphs;
    for (size_t m : config.modules) {
        graphs.emplace_back(config.n, m);
    }
    GridResult r;
    for (auto [p, k] : config.combos) {
        if (p * k != config.n) {
            throw std::invalid_argument("Combo (" + std::to_string(p) + "," + std::to_string(k) + ") is not dense.");
        }
        // sums[mi] = {layers, length, length with hops} summed over samples.
        std::vector<std::array<double, 3>> sums(graphs.size(), {0, 0, 0});
        for (size_t sample = 0; sample < config.samples; sample++) {
            std::mt19937_64 rng(derive_stream_seed(config.seed, (p << 40) ^ (k << 32) ^ sample));
            OperatorSet s = sample_operator_set(config.n, p, k, rng);
            for (size_t mi = 0; mi < graphs.size(); mi++) {
                LayerSchedule sched = transpile_layers(s, graphs[mi]);
                AncillaStats st = ancilla_stats(sched);
                r.samples.push_back(
                    {p, k, graphs[mi].m(), sample, sched.num_layers(), st.mean_length, st.mean_length_with_hops});
                sums[mi][0] += sched.num_layers();
                sums[mi][1] += st.mean_length;
                sums[mi][2] += st.mean_length_with_hops;
            }
        }
        size_t ref = static_cast<size_t>(
            std::find(config.modules.begin(), config.modules.end(), size_t{1}) - config.modules.begin());
        double ns = static_cast<double>(config.samples);
        for (size_t mi = 0; mi < graphs.size(); mi++) {
            GridSummaryRow row{p, k, graphs[mi].m(), sums[mi][0] / ns, sums[mi][1] / ns, sums[mi][2] / ns, 0, 0, 0};
            row.layer_reduction_pct = 100.0 * (1.0 - sums[mi][0] / sums[ref][0]);
            row.ancilla_reduction_pct = 100.0 * (1.0 - sums[mi][1] / sums[ref][1]);
            row.bridging_share_pct = 100.0 * (row.mean_ancilla_len - static_cast<double>(k)) / row.mean_ancilla_len;
            r.summary.push_back(row);
        }
    }
    return r;
}

void write_samples_csv(std::ostream &out, const GridResult &r) {
    out << "P,K,M,sample,layers,mean_ancilla_len\n";
    for (const auto &s : r.samples) {
        out << s.p << "," << s.k << "," << s.m << "," << s.sample << "," << s.layers << "," << s.mean_ancilla_len
            << "\n";
    }
}

void write_summary_csv(std::ostream &out, const GridResult &r) {
    out << "P,K,M,mean_layers,mean_ancilla_len,mean_ancilla_len_with_hops,layer_reduction_pct,"
           "ancilla_reduction_pct,bridging_share_pct\n";
    for (const auto &s : r.summary) {
        out << s.p << "," << s.k << "," << s.m << "," << s.mean_layers << "," << s.mean_ancilla_len << ","
            << s.mean_ancilla_len_with_hops << "," << s.layer_reduction_pct << "," << s.ancilla_reduction_pct << ","
            << s.bridging_share_pct << "\n";
    }
}

}  // namespace quirc

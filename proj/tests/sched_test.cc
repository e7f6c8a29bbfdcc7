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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using namespace quirc;

namespace {

const std::vector<std::pair<size_t, size_t>> COMBOS = {{3, 8}, {4, 6}, {6, 4}, {8, 3}};

OperatorSet make_set(size_t n, std::vector<std::vector<uint32_t>> ops) {
    return OperatorSet{n, std::move(ops)};
}

/// Whether the vertex set is connected using line edges and connector hops
/// between different modules.
bool connected(const ModuleGraph &g, const std::vector<uint32_t> &vs) {
    std::set<uint32_t> in(vs.begin(), vs.end()), seen{vs[0]};
    std::vector<uint32_t> stack{vs[0]};
    while (!stack.empty()) {
        uint32_t u = stack.back();
        stack.pop_back();
        for (uint32_t v : in) {
            bool line = g.module_of(u) == g.module_of(v) &&
                        (g.position_of(u) + 1 == g.position_of(v) || g.position_of(v) + 1 == g.position_of(u));
            bool hop = g.module_of(u) != g.module_of(v) && g.is_connector(u) && g.is_connector(v);
            if ((line || hop) && seen.insert(v).second) {
                stack.push_back(v);
            }
        }
    }
    return seen.size() == in.size();
}

}  // namespace

TEST(sample_operator_set, dense_disjoint_cover) {
    std::mt19937_64 rng(1);
    OperatorSet s = sample_operator_set(24, 8, 3, rng);
    ASSERT_EQ(s.operators.size(), 8u);
    std::set<uint32_t> all;
    for (const auto &op : s.operators) {
        EXPECT_EQ(op.size(), 3u);
        all.insert(op.begin(), op.end());
    }
    EXPECT_EQ(all.size(), 24u);
    EXPECT_EQ(*all.begin(), 1u);
    EXPECT_EQ(*all.rbegin(), 24u);
    EXPECT_EQ(sample_operator_set(2, 1, 2, rng).operators, (std::vector<std::vector<uint32_t>>{{1, 2}}));
    EXPECT_THROW(sample_operator_set(24, 5, 4, rng), std::invalid_argument);
}

TEST(sample_operator_set, pairings_are_uniform) {
    std::mt19937_64 rng(2);
    std::map<std::set<std::vector<uint32_t>>, size_t> counts;
    const size_t trials = 10000;
    for (size_t t = 0; t < trials; t++) {
        OperatorSet s = sample_operator_set(6, 3, 2, rng);
        counts[std::set<std::vector<uint32_t>>(s.operators.begin(), s.operators.end())]++;
    }
    // (6 - 1)!! = 15 perfect pairings.
    ASSERT_EQ(counts.size(), 15u);
    double p = 1.0 / 15, sigma = std::sqrt(trials * p * (1 - p));
    for (const auto &[pairing, c] : counts) {
        EXPECT_NEAR(static_cast<double>(c), trials * p, 3 * sigma);
    }
}

TEST(module_graph, connector_positions) {
    ModuleGraph g(24, 2);
    EXPECT_EQ(g.l(), 12u);
    EXPECT_EQ(g.connectors(0), (std::vector<uint32_t>{4, 8}));
    EXPECT_EQ(g.connectors(1), (std::vector<uint32_t>{16, 20}));
    ModuleGraph g8(24, 8);
    EXPECT_EQ(g8.connectors(0), (std::vector<uint32_t>{1, 2}));
    ModuleGraph g5(5, 1);
    EXPECT_EQ(g5.connectors(0), (std::vector<uint32_t>{2, 4}));
    ModuleGraph g24(24, 24);
    EXPECT_EQ(g24.connectors(3), (std::vector<uint32_t>{4}));
    EXPECT_THROW(ModuleGraph(24, 5), std::invalid_argument);
    EXPECT_THROW(ModuleGraph(24, 0), std::invalid_argument);
}

TEST(transpile_layers, one_qubit_per_module_needs_one_layer) {
    std::mt19937_64 rng(3);
    ModuleGraph g(24, 24);
    for (auto [p, k] : COMBOS) {
        for (int t = 0; t < 20; t++) {
            LayerSchedule s = transpile_layers(sample_operator_set(24, p, k, rng), g);
            EXPECT_EQ(s.num_layers(), 1u);
            EXPECT_DOUBLE_EQ(ancilla_stats(s).mean_length, static_cast<double>(k));
        }
    }
}

TEST(transpile_layers, nested_pairs_on_one_module_need_p_layers) {
    for (size_t n : {6, 12, 24}) {
        std::vector<std::vector<uint32_t>> ops;
        for (uint32_t i = 1; i <= n / 2; i++) {
            ops.push_back({i, static_cast<uint32_t>(n + 1 - i)});
        }
        LayerSchedule s = transpile_layers(make_set(n, ops), ModuleGraph(n, 1));
        EXPECT_EQ(s.num_layers(), n / 2);
    }
}

TEST(transpile_layers, hand_traced_nested_example) {
    LayerSchedule s = transpile_layers(make_set(6, {{1, 6}, {2, 5}, {3, 4}}), ModuleGraph(6, 1));
    ASSERT_EQ(s.num_layers(), 3u);
    EXPECT_EQ(s.layers[0][0].path, (std::vector<uint32_t>{1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(s.layers[1][0].path, (std::vector<uint32_t>{2, 3, 4, 5}));
    EXPECT_EQ(s.layers[2][0].path, (std::vector<uint32_t>{3, 4}));
    AncillaStats st = ancilla_stats(s);
    EXPECT_EQ(st.lengths, (std::vector<size_t>{6, 4, 2}));
}

TEST(transpile_layers, single_module_region_is_the_inclusive_span) {
    std::mt19937_64 rng(4);
    ModuleGraph g(24, 1);
    for (int t = 0; t < 200; t++) {
        OperatorSet s = sample_operator_set(24, 6, 4, rng);
        RoutedOperator r;
        ASSERT_TRUE(route_operator(g, s.operators[0], 0, r));
        EXPECT_EQ(r.path.size(), s.operators[0].back() - s.operators[0].front() + 1);
        EXPECT_EQ(r.hops, 0u);
    }
}

TEST(transpile_layers, routes_through_the_card) {
    ModuleGraph g(24, 2);
    // Qubit 1 and 10 sit on either side of module 0's connectors and 14 is in
    // module 1; no simple path covers all three, but a region does.
    RoutedOperator r;
    ASSERT_TRUE(route_operator(g, {1, 10, 14}, 0, r));
    std::set<uint32_t> region(r.path.begin(), r.path.end());
    EXPECT_TRUE(region.count(1) && region.count(10) && region.count(14));
    EXPECT_TRUE(connected(g, r.path));
    EXPECT_GE(r.hops, 1u);
    // Blocking both connectors of module 1 cuts it off.
    EXPECT_FALSE(route_operator(g, {1, 14}, (uint64_t{1} << 15) | (uint64_t{1} << 19), r));
    EXPECT_THROW(route_operator(g, {}, 0, r), std::invalid_argument);
    EXPECT_THROW(route_operator(g, {1, 25}, 0, r), std::out_of_range);
}

TEST(transpile_layers, layers_are_disjoint_complete_and_connected) {
    std::mt19937_64 rng(5);
    for (size_t m : {1, 2, 3, 4, 6, 8, 12}) {
        ModuleGraph g(24, m);
        for (auto [p, k] : COMBOS) {
            for (int t = 0; t < 5; t++) {
                OperatorSet s = sample_operator_set(24, p, k, rng);
                LayerSchedule sched = transpile_layers(s, g);
                std::multiset<size_t> seen;
                for (const auto &layer : sched.layers) {
                    ASSERT_FALSE(layer.empty());
                    std::set<uint32_t> used;
                    for (const RoutedOperator &r : layer) {
                        seen.insert(r.op);
                        for (uint32_t v : r.path) {
                            EXPECT_TRUE(used.insert(v).second) << "vertex " << v << " reused in a layer";
                        }
                        std::set<uint32_t> region(r.path.begin(), r.path.end());
                        for (uint32_t q : s.operators[r.op]) {
                            EXPECT_TRUE(region.count(q));
                        }
                        EXPECT_TRUE(connected(g, r.path));
                    }
                }
                std::multiset<size_t> expect;
                for (size_t i = 0; i < p; i++) {
                    expect.insert(i);
                }
                EXPECT_EQ(seen, expect);
            }
        }
    }
}

TEST(ancilla_stats, single_operator_and_empty_schedule) {
    LayerSchedule s = transpile_layers(make_set(6, {{1, 6}}), ModuleGraph(6, 1));
    EXPECT_DOUBLE_EQ(ancilla_stats(s).mean_length, 6.0);
    EXPECT_THROW(ancilla_stats(LayerSchedule{}), std::invalid_argument);
}

TEST(expected_order_stats, closed_forms) {
    EXPECT_EQ(expected_order_stats(24, 24).e_span, Rational(24, 1));
    EXPECT_EQ(expected_order_stats(24, 1).e_span, Rational(1, 1));
    EXPECT_EQ(expected_order_stats(24, 3).e_span, Rational(27, 2));
    OrderStats s = expected_order_stats(24, 3);
    EXPECT_EQ(s.e_kmax, Rational(75, 4));
    EXPECT_EQ(s.e_kmin, Rational(21, 4));
    EXPECT_THROW(expected_order_stats(24, 25), std::domain_error);
    EXPECT_THROW(expected_order_stats(24, 0), std::domain_error);
}

TEST(expected_order_stats, span_matches_monte_carlo) {
    std::mt19937_64 rng(6);
    const int trials = 100000;
    for (int k : {2, 3, 6, 12}) {
        double sum = 0, sum2 = 0;
        std::vector<int> idx(24);
        for (int t = 0; t < trials; t++) {
            std::iota(idx.begin(), idx.end(), 1);
            int lo = 25, hi = 0;
            for (int j = 0; j < k; j++) {
                std::uniform_int_distribution<int> pick(j, 23);
                std::swap(idx[j], idx[pick(rng)]);
                lo = std::min(lo, idx[j]);
                hi = std::max(hi, idx[j]);
            }
            double span = hi - lo + 1;
            sum += span;
            sum2 += span * span;
        }
        double mean = sum / trials, var = sum2 / trials - mean * mean;
        double sigma = std::sqrt(var / trials);
        EXPECT_NEAR(expected_order_stats(24, k).e_span.value(), mean, 3 * sigma) << "k = " << k;
    }
}

TEST(benchmark_grid, more_modules_never_add_layers_on_average) {
    GridConfig cfg;
    cfg.samples = 20;
    cfg.modules = {1, 12};
    cfg.seed = 7;
    GridResult r = benchmark_grid(cfg);
    ASSERT_EQ(r.summary.size(), 8u);
    for (size_t i = 0; i < r.summary.size(); i += 2) {
        EXPECT_EQ(r.summary[i].m, 1u);
        EXPECT_LE(r.summary[i + 1].mean_layers, r.summary[i].mean_layers);
        EXPECT_DOUBLE_EQ(r.summary[i].layer_reduction_pct, 0.0);
    }
    EXPECT_EQ(r.samples.size(), 4u * 20u * 2u);
}

TEST(benchmark_grid, bad_grids_and_csv) {
    GridConfig cfg;
    cfg.modules = {1, 5};
    EXPECT_THROW(benchmark_grid(cfg), std::invalid_argument);
    cfg.modules = {2};
    EXPECT_THROW(benchmark_grid(cfg), std::invalid_argument);
    cfg.modules = {1, 2};
    cfg.combos = {{8, 3}};
    cfg.samples = 2;
    GridResult r = benchmark_grid(cfg);
    std::ostringstream a, b;
    write_samples_csv(a, r);
    write_samples_csv(b, benchmark_grid(cfg));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "P,K,M,sample,layers,mean_ancilla_len");
    std::ostringstream c;
    write_summary_csv(c, r);
    EXPECT_EQ(c.str().substr(0, 9), "P,K,M,mea");
}

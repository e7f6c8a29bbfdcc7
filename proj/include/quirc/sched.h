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
#include <random>
#include <stdexcept>
#include <vector>

namespace quirc {

/// P disjoint K-qubit operators covering qubits 1..N.
struct OperatorSet {
    size_t n = 0;
    std::vector<std::vector<uint32_t>> operators;  // each sorted, 1-based
};

/// Uniform random partition of 1..N into P blocks of K, in random block
/// order. Throws std::invalid_argument unless P·K = N and P, K ≥ 1.
OperatorSet sample_operator_set(size_t n, size_t p, size_t k, std::mt19937_64 &rng);

/// M modules, each a line of L = N/M qubit-ancilla vertices. Qubit q
/// (1-based) sits at position (q - 1) % L + 1 of module (q - 1) / L.
/// Connector vertices at positions ⌈L/3⌉ and ⌈2L/3⌉ reach each other in one
/// hop; for L = 1 the two coincide.
class ModuleGraph {
   public:
    /// Throws std::invalid_argument unless 1 ≤ M ≤ N, M divides N and N ≤ 64.
    ModuleGraph(size_t n, size_t m);

    size_t n() const {
        return n_;
    }
    size_t m() const {
        return m_;
    }
    size_t l() const {
        return l_;
    }
    size_t module_of(uint32_t q) const {
        return (q - 1) / l_;
    }
    size_t position_of(uint32_t q) const {
        return (q - 1) % l_ + 1;
    }
    uint32_t vertex(size_t module, size_t position) const {
        return static_cast<uint32_t>(module * l_ + position);
    }
    /// Connector qubits of a module in increasing position.
    const std::vector<uint32_t> &connectors(size_t module) const {
        return connectors_[module];
    }
    bool is_connector(uint32_t q) const;

   private:
    size_t n_, m_, l_;
    std::vector<std::vector<uint32_t>> connectors_;
};

struct RoutedOperator {
    size_t op;                   // index into OperatorSet::operators
    std::vector<uint32_t> path;  // occupied vertices in first-visit order
    size_t hops = 0;             // connector-to-connector hops used
};

struct LayerSchedule {
    std::vector<std::vector<RoutedOperator>> layers;

    size_t num_layers() const {
        return layers.size();
    }
};

/// An operator could not be routed even on an empty layer.
class InfeasibleOperator : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Smallest ancilla region for `op` avoiding vertices whose bit (q - 1) is
/// set in `blocked`. The region is the vertex set of a walk through the
/// operator's qubits in some visiting order; only forward orders, whose
/// qubits within every module appear at monotone positions, are admitted.
/// Consecutive qubits are joined along a route adding the fewest new
/// vertices. Returns false if no admitted order can be routed.
bool route_operator(const ModuleGraph &g, const std::vector<uint32_t> &op, uint64_t blocked, RoutedOperator &out);

/// Greedy first-fit layering in operator order: each pass commits every
/// operator that still has a path and blocks its vertices for that layer.
LayerSchedule transpile_layers(const OperatorSet &s, const ModuleGraph &g);

struct AncillaStats {
    double mean_length = 0;            // occupied vertices
    double mean_length_with_hops = 0;  // occupied vertices plus hop count
    std::vector<size_t> lengths;       // per operator index
};

/// Throws std::invalid_argument for an empty schedule.
AncillaStats ancilla_stats(const LayerSchedule &sched);

/// Exact fraction with positive denominator, kept in lowest terms.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t num, int64_t den);
    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    bool operator==(const Rational &other) const = default;
};

struct OrderStats {
    Rational e_kmax;
    Rational e_kmin;
    Rational e_span;
};

/// Expected largest index, smallest index, and inclusive span of k distinct
/// indices drawn uniformly from 1..N. Throws std::domain_error unless
/// 1 ≤ k ≤ N.
OrderStats expected_order_stats(int64_t n, int64_t k);

struct GridConfig {
    size_t n = 24;
    std::vector<std::pair<size_t, size_t>> combos = {{3, 8}, {4, 6}, {6, 4}, {8, 3}};
    std::vector<size_t> modules = {1, 2, 3, 4, 6, 8, 12};
    size_t samples = 100;
    uint64_t seed = 0;
};

struct GridSampleRow {
    size_t p, k, m, sample;
    size_t layers;
    double mean_ancilla_len;
    double mean_ancilla_len_with_hops;
};

struct GridSummaryRow {
    size_t p, k, m;
    double mean_layers;
    double mean_ancilla_len;
    double mean_ancilla_len_with_hops;
    /// 100·(1 − mean(M) / mean(M=1)) over the same samples.
    double layer_reduction_pct;
    double ancilla_reduction_pct;
    /// 100·(mean length − K) / mean length: the share of occupied vertices
    /// that only bridge between operator qubits.
    double bridging_share_pct;
};

struct GridResult {
    std::vector<GridSampleRow> samples;
    std::vector<GridSummaryRow> summary;
};

/// Every (P, K) draws `samples` operator sets from per-sample substreams and
/// schedules each of them for every M. Throws std::invalid_argument when an
/// M does not divide N, when P·K ≠ N, or when M = 1 is absent.
GridResult benchmark_grid(const GridConfig &config);

/// CSV with header `P,K,M,sample,layers,mean_ancilla_len`.
void write_samples_csv(std::ostream &out, const GridResult &r);
/// CSV with one row per (P, K, M) of means and reductions.
void write_summary_csv(std::ostream &out, const GridResult &r);

}  // namespace quirc

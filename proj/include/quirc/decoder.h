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
#include <span>
#include <stdexcept>
#include <vector>

#include "quirc/detector_graph.h"

namespace quirc {

/// An odd cluster ran out of edges to grow without reaching the boundary.
class DecodingInfeasible : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct DecoderOptions {
    /// Syndromes with at most this many fired detectors are matched exactly
    /// (Dijkstra distances plus dynamic programming over pairings). Zero
    /// gives pure union-find.
    size_t exact_max_defects = 0;
};

/// Weighted union-find decoder with reusable scratch space. Not safe for
/// concurrent use; create one per thread.
class UnionFindDecoder {
   public:
    /// `graph` must outlive the decoder.
    explicit UnionFindDecoder(const DetectorGraph &graph, DecoderOptions options = {});
    UnionFindDecoder(DetectorGraph &&graph, DecoderOptions options = {}) = delete;

    /// Predicted observable flips for the fired detector set.
    uint64_t decode(std::span<const uint32_t> fired);

    /// Observable mask of a minimum-weight matching of `fired`, using
    /// boundary-aware shortest paths. Cost grows as 2^|fired|.
    uint64_t decode_exact(std::span<const uint32_t> fired);

    const DetectorGraph &graph() const {
        return g_;
    }

   private:
    uint32_t find(uint32_t v);
    void touch(uint32_t v);
    void unite(uint32_t a, uint32_t b);
    uint64_t peel();
    void reset();

    struct Cluster {
        bool odd = false;
        bool has_boundary = false;
        std::vector<uint32_t> frontier;
    };

    const DetectorGraph &g_;
    DecoderOptions options_;
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> size_;
    std::vector<Cluster> cluster_;  // valid at roots
    std::vector<uint8_t> in_cluster_;
    std::vector<uint8_t> defect_;
    std::vector<uint8_t> mark_;
    std::vector<uint32_t> order_;
    std::vector<std::pair<uint32_t, uint32_t>> up_;  // (node, edge to its parent) in BFS order
    std::vector<double> growth_;
    std::vector<uint8_t> grown_;
    std::vector<uint32_t> rate_stamp_;
    std::vector<uint8_t> rate_;
    uint32_t stamp_ = 0;
    std::vector<uint32_t> touched_nodes_;
    std::vector<uint32_t> touched_edges_;

    std::vector<double> dist_;
    std::vector<uint64_t> path_obs_;
    std::vector<uint32_t> dist_stamp_;
    uint32_t dist_round_ = 0;
};

/// Convenience wrapper that builds a fresh decoder.
uint64_t decode(const DetectorGraph &graph, std::span<const uint32_t> fired, DecoderOptions options = {});

}  // namespace quirc

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

#include "quirc/logical_rate.h"

#include <bit>
#include <cmath>
#include <vector>

#include "quirc/detector_graph.h"
#include "quirc/frame_simulator.h"

namespace quirc {

double wilson_half_width(size_t k, size_t n) {
    if (n == 0) {
        return 0;
    }
    const double z = 1.959963984540054;
    double p = static_cast<double>(k) / n;
    double z2n = z * z / n;
    return z * std::sqrt(p * (1 - p) / n + z2n / (4 * n)) / (1 + z2n);
}

LogicalRate logical_error_rate(const Circuit &c, size_t shots, uint64_t seed, DecoderOptions options) {
    DetectorGraph g = build_detector_graph(c);
    UnionFindDecoder dec(g, options);
    LogicalRate out;
    out.shots = shots;
    std::vector<std::vector<uint32_t>> fired;
    sample_batches(c, shots, seed, [&](const ShotBatch &b) {
        fired.assign(b.num_shots, {});
        for (size_t d = 0; d < g.num_detectors; d++) {
            for (size_t w = 0; w < b.num_words; w++) {
                uint64_t bits = b.detectors[d * b.num_words + w];
                while (bits) {
                    size_t lane = w * 64 + std::countr_zero(bits);
                    if (lane < b.num_shots) {
                        fired[lane].push_back(static_cast<uint32_t>(d));
                    }
                    bits &= bits - 1;
                }
            }
        }
        for (size_t lane = 0; lane < b.num_shots; lane++) {
            uint64_t actual = 0;
            for (size_t o = 0; o < g.num_observables; o++) {
                actual |= uint64_t{b.observable(o, lane)} << o;
            }
            if (dec.decode(fired[lane]) != actual) {
                out.failures++;
            }
        }
    });
    out.rate = shots ? static_cast<double>(out.failures) / shots : 0.0;
    out.half_width = wilson_half_width(out.failures, shots);
    return out;
}

LogicalRate logical_error_rate(const PatchLayout &layout, const NoiseParams &np, size_t shots, uint64_t seed,
                               DecoderOptions options) {
    return logical_error_rate(build_merge_circuit(layout, np), shots, seed, options);
}

}  // namespace quirc

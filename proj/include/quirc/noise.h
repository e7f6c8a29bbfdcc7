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
#include <set>
#include <vector>

#include "quirc/circuit.h"

namespace quirc {

/// The five-rate inhomogeneous error model.
struct NoiseParams {
    double p_spam = 0.0;      // X (Z) flip after Z-basis (X-basis) preparation and before measurement
    double p_local = 0.0;     // depolarizing after every in-module gate
    double p_remote_x = 0.0;  // X flip on the target of a seam CX
    double p_remote_z = 0.0;  // Z flip on the control of a seam CX
    double p_latency = 0.0;   // depolarizing on the merged patch while EPs are distributed

    /// Throws std::invalid_argument naming the first rate outside [0, 1].
    void validate() const;

    bool operator==(const NoiseParams &other) const = default;
};

/// Qubits that idle through one EP-distribution wait, inserted just before
/// instruction `before_instruction` of the clean circuit.
struct LatencySite {
    size_t before_instruction;
    std::vector<uint32_t> qubits;
};

/// Returns a copy of the clean circuit `c` with noise channels inserted.
/// Zero-probability channels are omitted. Indices in `seam_cx` must be CX
/// instructions of `c`; their pairs get X_ERROR(p_remote_x) on the target and
/// Z_ERROR(p_remote_z) on the control in addition to the local depolarizing.
/// Reset instructions listed in `noiseless_resets` get no p_spam flip; their
/// measurement error is carried by the matching measurement.
Circuit append_noise_model(const Circuit &c, const NoiseParams &np, const std::set<size_t> &seam_cx,
                           const std::vector<LatencySite> &latency_sites,
                           const std::set<size_t> &noiseless_resets = {});

}  // namespace quirc

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

#include "quirc/circuit.h"
#include "quirc/decoder.h"
#include "quirc/latsurg.h"
#include "quirc/noise.h"

namespace quirc {

struct LogicalRate {
    size_t shots = 0;
    size_t failures = 0;
    double rate = 0;
    /// Half-width of the 95% Wilson score interval.
    double half_width = 0;
};

/// Half-width of the 95% Wilson score interval for k successes in n trials.
double wilson_half_width(size_t k, size_t n);

/// Samples `shots` shots of `c` and counts those where the decoded
/// prediction of any observable disagrees with the sampled value.
LogicalRate logical_error_rate(const Circuit &c, size_t shots, uint64_t seed, DecoderOptions options = {});

/// The same for the d-round merge circuit of `layout` under `np`.
LogicalRate logical_error_rate(const PatchLayout &layout, const NoiseParams &np, size_t shots, uint64_t seed,
                               DecoderOptions options = {});

}  // namespace quirc

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
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "quirc/circuit.h"

namespace quirc {

/// Shots per sampling batch. Each batch draws from its own RNG stream seeded
/// from (seed, batch index), so results do not depend on evaluation order.
inline constexpr size_t SHOTS_PER_BATCH = 256;

/// Mixes a 64-bit seed and a stream index into an independent stream seed.
uint64_t derive_stream_seed(uint64_t seed, uint64_t stream);

/// Bit-packed Pauli frames for `num_lanes` independent lanes (shots or
/// injected faults). Storage is qubit-major, `num_words` words per qubit.
class PauliFrameBatch {
   public:
    PauliFrameBatch(size_t num_qubits, size_t num_lanes);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_lanes() const {
        return num_lanes_;
    }
    size_t num_words() const {
        return num_words_;
    }

    std::span<uint64_t> x(size_t q) {
        return {xs_.data() + q * num_words_, num_words_};
    }
    std::span<uint64_t> z(size_t q) {
        return {zs_.data() + q * num_words_, num_words_};
    }

    void clear();
    void flip_x(size_t q, size_t lane) {
        xs_[q * num_words_ + (lane >> 6)] ^= uint64_t{1} << (lane & 63);
    }
    void flip_z(size_t q, size_t lane) {
        zs_[q * num_words_ + (lane >> 6)] ^= uint64_t{1} << (lane & 63);
    }

    /// Conjugates the frames by a unitary or clears them for resets. For a
    /// measurement, appends one block of `num_words` flip words per target to
    /// `record`. Noise instructions are ignored.
    void apply(const Instruction &inst, std::vector<uint64_t> &record);

    /// Applies a noise channel with fresh randomness to every lane.
    void sample_noise(const Instruction &inst, std::mt19937_64 &rng);

   private:
    size_t num_qubits_;
    size_t num_lanes_;
    size_t num_words_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

/// Detector and observable bits for a block of shots, detector-major:
/// detector d of shot s is bit (s % 64) of word d * num_words + s / 64.
struct ShotBatch {
    size_t first_shot = 0;
    size_t num_shots = 0;
    size_t num_words = 0;
    std::vector<uint64_t> detectors;
    std::vector<uint64_t> observables;

    bool detector(size_t d, size_t lane) const {
        return (detectors[d * num_words + (lane >> 6)] >> (lane & 63)) & 1;
    }
    bool observable(size_t o, size_t lane) const {
        return (observables[o * num_words + (lane >> 6)] >> (lane & 63)) & 1;
    }
};

/// Shot-major sample output.
class SampleMatrix {
   public:
    SampleMatrix(size_t shots, size_t num_detectors, size_t num_observables);

    size_t shots() const {
        return shots_;
    }
    size_t num_detectors() const {
        return num_detectors_;
    }
    size_t num_observables() const {
        return num_observables_;
    }

    bool detector(size_t shot, size_t d) const {
        return get(det_bits_, det_words_, shot, d);
    }
    bool observable(size_t shot, size_t o) const {
        return get(obs_bits_, obs_words_, shot, o);
    }
    void set_detector(size_t shot, size_t d, bool v) {
        set(det_bits_, det_words_, shot, d, v);
    }
    void set_observable(size_t shot, size_t o, bool v) {
        set(obs_bits_, obs_words_, shot, o, v);
    }

    std::vector<uint32_t> fired_detectors(size_t shot) const;

    bool operator==(const SampleMatrix &other) const = default;

   private:
    static bool get(const std::vector<uint64_t> &bits, size_t stride, size_t shot, size_t k) {
        return (bits[shot * stride + (k >> 6)] >> (k & 63)) & 1;
    }
    static void set(std::vector<uint64_t> &bits, size_t stride, size_t shot, size_t k, bool v) {
        uint64_t m = uint64_t{1} << (k & 63);
        uint64_t &w = bits[shot * stride + (k >> 6)];
        w = v ? (w | m) : (w & ~m);
    }

    size_t shots_;
    size_t num_detectors_;
    size_t num_observables_;
    size_t det_words_;
    size_t obs_words_;
    std::vector<uint64_t> det_bits_;
    std::vector<uint64_t> obs_bits_;
};

/// Noise-free measurement record from a tableau simulation. Random outcomes
/// resolve to 0, or to fair coin flips when `rng` is given.
std::vector<bool> reference_sample(const Circuit &c, std::mt19937_64 *rng = nullptr);

/// Parities of each detector (or observable) over a full measurement record.
std::vector<bool> evaluate_parities(const std::vector<std::vector<uint32_t>> &sets, const std::vector<bool> &record);

/// Frame-samples `shots` shots in batches of SHOTS_PER_BATCH, handing each
/// batch to `sink` in shot order.
void sample_batches(const Circuit &c, size_t shots, uint64_t seed, const std::function<void(const ShotBatch &)> &sink);

SampleMatrix frame_sample(const Circuit &c, size_t shots, uint64_t seed);

/// Folds per-measurement flip words into detector / observable words.
void fold_parities(const std::vector<std::vector<uint32_t>> &sets, const std::vector<uint64_t> &record,
                   size_t num_words, std::vector<uint64_t> &out);

}  // namespace quirc

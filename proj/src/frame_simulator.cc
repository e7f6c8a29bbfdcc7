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

#include "quirc/frame_simulator.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "quirc/tableau.h"

namespace quirc {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Uniform double in (0, 1].
double unit_open_closed(std::mt19937_64 &rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

/// Calls hit(lane) for each lane in [0, lanes) independently with probability p.
template <typename F>
void for_each_hit(double p, size_t lanes, std::mt19937_64 &rng, F &&hit) {
    if (p <= 0) {
        return;
    }
    if (p >= 1) {
        for (size_t k = 0; k < lanes; k++) {
            hit(k);
        }
        return;
    }
    if (p > 0.25) {
        for (size_t k = 0; k < lanes; k++) {
            if (unit_open_closed(rng) <= p) {
                hit(k);
            }
        }
        return;
    }
    // Geometric gaps between hits.
    double log_miss = std::log1p(-p);
    size_t k = 0;
    while (true) {
        double gap = std::floor(std::log(unit_open_closed(rng)) / log_miss);
        if (gap >= static_cast<double>(lanes - k)) {
            return;
        }
        k += static_cast<size_t>(gap);
        hit(k);
        k++;
        if (k >= lanes) {
            return;
        }
    }
}

}  // namespace

uint64_t derive_stream_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
}

PauliFrameBatch::PauliFrameBatch(size_t num_qubits, size_t num_lanes)
    : num_qubits_(num_qubits),
      num_lanes_(num_lanes),
      num_words_(words_for_bits(num_lanes)),
      xs_(num_qubits * num_words_, 0),
      zs_(num_qubits * num_words_, 0) {
}

void PauliFrameBatch::clear() {
    std::fill(xs_.begin(), xs_.end(), 0);
    std::fill(zs_.begin(), zs_.end(), 0);
}

void PauliFrameBatch::apply(const Instruction &inst, std::vector<uint64_t> &record) {
    const auto &t = inst.targets;
    const size_t W = num_words_;
    auto X = [&](size_t q) { return xs_.data() + q * W; };
    auto Z = [&](size_t q) { return zs_.data() + q * W; };
    switch (inst.gate) {
        case Gate::H:
            for (uint32_t q : t) {
                std::swap_ranges(X(q), X(q) + W, Z(q));
            }
            break;
        case Gate::S:
        case Gate::S_DAG:
            for (uint32_t q : t) {
                uint64_t *xq = X(q), *zq = Z(q);
                for (size_t w = 0; w < W; w++) {
                    zq[w] ^= xq[w];
                }
            }
            break;
        case Gate::X:
        case Gate::Y:
        case Gate::Z:
            break;
        case Gate::CX:
            for (size_t k = 0; k < t.size(); k += 2) {
                uint64_t *xc = X(t[k]), *zc = Z(t[k]), *xt = X(t[k + 1]), *zt = Z(t[k + 1]);
                for (size_t w = 0; w < W; w++) {
                    xt[w] ^= xc[w];
                    zc[w] ^= zt[w];
                }
            }
            break;
        case Gate::CZ:
            for (size_t k = 0; k < t.size(); k += 2) {
                uint64_t *xa = X(t[k]), *za = Z(t[k]), *xb = X(t[k + 1]), *zb = Z(t[k + 1]);
                for (size_t w = 0; w < W; w++) {
                    za[w] ^= xb[w];
                    zb[w] ^= xa[w];
                }
            }
            break;
        case Gate::SWAP:
            for (size_t k = 0; k < t.size(); k += 2) {
                std::swap_ranges(X(t[k]), X(t[k]) + W, X(t[k + 1]));
                std::swap_ranges(Z(t[k]), Z(t[k]) + W, Z(t[k + 1]));
            }
            break;
        case Gate::R_Z:
        case Gate::R_X:
            for (uint32_t q : t) {
                std::fill(X(q), X(q) + W, 0);
                std::fill(Z(q), Z(q) + W, 0);
            }
            break;
        case Gate::M_Z:
            for (uint32_t q : t) {
                record.insert(record.end(), X(q), X(q) + W);
            }
            break;
        case Gate::M_X:
            for (uint32_t q : t) {
                record.insert(record.end(), Z(q), Z(q) + W);
            }
            break;
        case Gate::M_Y:
            for (uint32_t q : t) {
                for (size_t w = 0; w < W; w++) {
                    record.push_back(X(q)[w] ^ Z(q)[w]);
                }
            }
            break;
        default:
            break;
    }
}

void PauliFrameBatch::sample_noise(const Instruction &inst, std::mt19937_64 &rng) {
    const auto &t = inst.targets;
    switch (inst.gate) {
        case Gate::X_ERROR:
            for (uint32_t q : t) {
                for_each_hit(inst.prob, num_lanes_, rng, [&](size_t lane) { flip_x(q, lane); });
            }
            break;
        case Gate::Z_ERROR:
            for (uint32_t q : t) {
                for_each_hit(inst.prob, num_lanes_, rng, [&](size_t lane) { flip_z(q, lane); });
            }
            break;
        case Gate::DEPOLARIZE1:
            for (uint32_t q : t) {
                for_each_hit(inst.prob, num_lanes_, rng, [&](size_t lane) {
                    uint64_t k = rng() % 3;  // 0: X, 1: Y, 2: Z
                    if (k != 2) {
                        flip_x(q, lane);
                    }
                    if (k != 0) {
                        flip_z(q, lane);
                    }
                });
            }
            break;
        case Gate::DEPOLARIZE2:
            for (size_t j = 0; j < t.size(); j += 2) {
                uint32_t a = t[j], b = t[j + 1];
                for_each_hit(inst.prob, num_lanes_, rng, [&](size_t lane) {
                    uint64_t k = rng() % 15 + 1;  // 4 bits: x_a z_a x_b z_b, never all zero
                    if (k & 1) {
                        flip_x(a, lane);
                    }
                    if (k & 2) {
                        flip_z(a, lane);
                    }
                    if (k & 4) {
                        flip_x(b, lane);
                    }
                    if (k & 8) {
                        flip_z(b, lane);
                    }
                });
            }
            break;
        default:
            break;
    }
}

SampleMatrix::SampleMatrix(size_t shots, size_t num_detectors, size_t num_observables)
    : shots_(shots),
      num_detectors_(num_detectors),
      num_observables_(num_observables),
      det_words_(words_for_bits(num_detectors)),
      obs_words_(words_for_bits(num_observables)),
      det_bits_(shots * det_words_, 0),
      obs_bits_(shots * obs_words_, 0) {
}

std::vector<uint32_t> SampleMatrix::fired_detectors(size_t shot) const {
    std::vector<uint32_t> out;
    for (size_t w = 0; w < det_words_; w++) {
        uint64_t bits = det_bits_[shot * det_words_ + w];
        while (bits) {
            out.push_back(static_cast<uint32_t>(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<bool> reference_sample(const Circuit &c, std::mt19937_64 *rng) {
    validate(c);
    std::vector<bool> record;
    if (c.num_qubits == 0) {
        return record;
    }
    StabilizerTableau t(c.num_qubits);
    auto measure = [&](const PauliString &p) {
        MeasureResult r = rng ? t.measure(p, *rng) : t.measure_forced(p, false);
        record.push_back(r.outcome);
    };
    for (const auto &inst : c.instructions) {
        const GateInfo &info = gate_info(inst.gate);
        if (info.noise) {
            continue;
        }
        if (info.unitary) {
            t.apply(inst.gate, inst.targets);
            continue;
        }
        for (uint32_t q : inst.targets) {
            switch (inst.gate) {
                case Gate::R_Z:
                    t.reset_z(q);
                    break;
                case Gate::R_X:
                    t.reset_x(q);
                    break;
                case Gate::M_Z:
                    measure(PauliString::single(c.num_qubits, q, 'Z'));
                    break;
                case Gate::M_X:
                    t.h(q);
                    measure(PauliString::single(c.num_qubits, q, 'Z'));
                    t.h(q);
                    break;
                case Gate::M_Y:
                    t.s_dag(q);
                    t.h(q);
                    measure(PauliString::single(c.num_qubits, q, 'Z'));
                    t.h(q);
                    t.s(q);
                    break;
                default:
                    break;
            }
        }
    }
    return record;
}

std::vector<bool> evaluate_parities(const std::vector<std::vector<uint32_t>> &sets, const std::vector<bool> &record) {
    std::vector<bool> out;
    out.reserve(sets.size());
    for (const auto &s : sets) {
        bool parity = false;
        for (uint32_t r : s) {
            parity ^= record.at(r);
        }
        out.push_back(parity);
    }
    return out;
}

void fold_parities(const std::vector<std::vector<uint32_t>> &sets, const std::vector<uint64_t> &record,
                   size_t num_words, std::vector<uint64_t> &out) {
    out.assign(sets.size() * num_words, 0);
    for (size_t k = 0; k < sets.size(); k++) {
        uint64_t *dst = out.data() + k * num_words;
        for (uint32_t r : sets[k]) {
            const uint64_t *src = record.data() + size_t{r} * num_words;
            for (size_t w = 0; w < num_words; w++) {
                dst[w] ^= src[w];
            }
        }
    }
}

void sample_batches(const Circuit &c, size_t shots, uint64_t seed, const std::function<void(const ShotBatch &)> &sink) {
    validate(c);
    std::vector<uint64_t> record;
    ShotBatch batch;
    size_t num_batches = (shots + SHOTS_PER_BATCH - 1) / SHOTS_PER_BATCH;
    PauliFrameBatch frames(c.num_qubits, SHOTS_PER_BATCH);
    for (size_t b = 0; b < num_batches; b++) {
        std::mt19937_64 rng(derive_stream_seed(seed, b));
        frames.clear();
        record.clear();
        for (const auto &inst : c.instructions) {
            if (gate_info(inst.gate).noise) {
                frames.sample_noise(inst, rng);
            } else {
                frames.apply(inst, record);
            }
        }
        batch.first_shot = b * SHOTS_PER_BATCH;
        batch.num_shots = std::min(SHOTS_PER_BATCH, shots - batch.first_shot);
        batch.num_words = frames.num_words();
        fold_parities(c.detectors, record, batch.num_words, batch.detectors);
        fold_parities(c.observables, record, batch.num_words, batch.observables);
        sink(batch);
    }
}

SampleMatrix frame_sample(const Circuit &c, size_t shots, uint64_t seed) {
    SampleMatrix out(shots, c.detectors.size(), c.observables.size());
    sample_batches(c, shots, seed, [&](const ShotBatch &batch) {
        for (size_t d = 0; d < c.detectors.size(); d++) {
            for (size_t lane = 0; lane < batch.num_shots; lane++) {
                if (batch.detector(d, lane)) {
                    out.set_detector(batch.first_shot + lane, d, true);
                }
            }
        }
        for (size_t o = 0; o < c.observables.size(); o++) {
            for (size_t lane = 0; lane < batch.num_shots; lane++) {
                if (batch.observable(o, lane)) {
                    out.set_observable(batch.first_shot + lane, o, true);
                }
            }
        }
    });
    return out;
}

}  // namespace quirc

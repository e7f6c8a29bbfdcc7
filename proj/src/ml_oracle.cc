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

#include "quirc/ml_oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace quirc {

namespace {

/// One Pauli frame on a few qubits, pushed forward through a circuit.
class SparseFrame {
   public:
    SparseFrame(const Circuit &c)
        : c_(c), x_(c.num_qubits, 0), z_(c.num_qubits, 0), record_start_(c.instructions.size() + 1, 0) {
        for (size_t k = 0; k < c.instructions.size(); k++) {
            const Instruction &inst = c.instructions[k];
            record_start_[k + 1] = record_start_[k] + (gate_info(inst.gate).measurement ? inst.targets.size() : 0);
        }
    }

    /// Measurement records flipped by an X (or Z) on qubit q inserted right
    /// after instruction k.
    std::vector<uint32_t> propagate(size_t k, uint32_t q, bool is_x) {
        std::vector<uint32_t> flipped;
        set(q, is_x, !is_x);
        for (size_t j = k + 1; j < c_.instructions.size() && active_ > 0; j++) {
            const Instruction &inst = c_.instructions[j];
            const auto &t = inst.targets;
            switch (inst.gate) {
                case Gate::H:
                    for (uint32_t a : t) {
                        set(a, z_[a], x_[a]);
                    }
                    break;
                case Gate::S:
                case Gate::S_DAG:
                    for (uint32_t a : t) {
                        set(a, x_[a], z_[a] ^ x_[a]);
                    }
                    break;
                case Gate::CX:
                    for (size_t i = 0; i < t.size(); i += 2) {
                        uint32_t a = t[i], b = t[i + 1];
                        uint8_t xa = x_[a], za = z_[a], xb = x_[b], zb = z_[b];
                        set(a, xa, za ^ zb);
                        set(b, xb ^ xa, zb);
                    }
                    break;
                case Gate::CZ:
                    for (size_t i = 0; i < t.size(); i += 2) {
                        uint32_t a = t[i], b = t[i + 1];
                        uint8_t xa = x_[a], za = z_[a], xb = x_[b], zb = z_[b];
                        set(a, xa, za ^ xb);
                        set(b, xb, zb ^ xa);
                    }
                    break;
                case Gate::SWAP:
                    for (size_t i = 0; i < t.size(); i += 2) {
                        uint32_t a = t[i], b = t[i + 1];
                        uint8_t xa = x_[a], za = z_[a];
                        set(a, x_[b], z_[b]);
                        set(b, xa, za);
                    }
                    break;
                case Gate::R_Z:
                case Gate::R_X:
                    for (uint32_t a : t) {
                        set(a, 0, 0);
                    }
                    break;
                case Gate::M_Z:
                case Gate::M_X:
                case Gate::M_Y:
                    for (size_t i = 0; i < t.size(); i++) {
                        uint32_t a = t[i];
                        uint8_t flip = inst.gate == Gate::M_Z ? x_[a] : inst.gate == Gate::M_X ? z_[a] : x_[a] ^ z_[a];
                        if (flip) {
                            flipped.push_back(static_cast<uint32_t>(record_start_[j] + i));
                        }
                    }
                    break;
                default:
                    break;
            }
        }
        for (uint32_t a : touched_) {
            x_[a] = z_[a] = 0;
        }
        touched_.clear();
        active_ = 0;
        return flipped;
    }

   private:
    void set(uint32_t q, uint8_t x, uint8_t z) {
        bool was = x_[q] | z_[q];
        bool now = x | z;
        if (now && !was) {
            active_++;
            touched_.push_back(q);
        } else if (was && !now) {
            active_--;
        }
        x_[q] = x;
        z_[q] = z;
    }

    const Circuit &c_;
    std::vector<uint8_t> x_, z_;
    std::vector<size_t> record_start_;
    std::vector<uint32_t> touched_;
    size_t active_ = 0;
};

bool within(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::vector<RawFault> enumerate_raw_faults(const Circuit &c) {
    validate(c);
    if (c.observables.size() > 64) {
        throw std::invalid_argument("At most 64 observables are supported.");
    }
    size_t num_records = c.count_measurements();
    std::vector<std::vector<uint32_t>> record_detectors(num_records);
    std::vector<uint64_t> record_observables(num_records, 0);
    for (size_t d = 0; d < c.detectors.size(); d++) {
        for (uint32_t r : c.detectors[d]) {
            record_detectors[r].push_back(static_cast<uint32_t>(d));
        }
    }
    for (size_t o = 0; o < c.observables.size(); o++) {
        for (uint32_t r : c.observables[o]) {
            record_observables[r] ^= uint64_t{1} << o;
        }
    }
    std::vector<uint8_t> parity(c.detectors.size(), 0);
    auto signature_of = [&](const std::vector<uint32_t> &records) {
        FaultSignature s;
        std::vector<uint32_t> hit;
        for (uint32_t r : records) {
            s.observables ^= record_observables[r];
            for (uint32_t d : record_detectors[r]) {
                if (!parity[d]) {
                    hit.push_back(d);
                }
                parity[d] ^= 1;
            }
        }
        for (uint32_t d : hit) {
            if (parity[d]) {
                s.detectors.push_back(d);
            }
            parity[d] = 0;
        }
        std::sort(s.detectors.begin(), s.detectors.end());
        s.detectors.erase(std::unique(s.detectors.begin(), s.detectors.end()), s.detectors.end());
        return s;
    };

    SparseFrame frame(c);
    std::vector<RawFault> out;
    uint32_t channel = 0;
    for (size_t k = 0; k < c.instructions.size(); k++) {
        const Instruction &inst = c.instructions[k];
        if (!gate_info(inst.gate).noise) {
            continue;
        }
        size_t arity = gate_info(inst.gate).arity;
        for (size_t i = 0; i < inst.targets.size(); i += arity, channel++) {
            if (inst.prob <= 0) {
                continue;
            }
            // sx[j], sz[j]: signatures of X and Z on the j-th target of the channel.
            std::vector<FaultSignature> sx, sz;
            for (size_t j = 0; j < arity; j++) {
                sx.push_back(signature_of(frame.propagate(k, inst.targets[i + j], true)));
                sz.push_back(signature_of(frame.propagate(k, inst.targets[i + j], false)));
            }
            // Pauli code per qubit: 0 = I, 1 = X, 2 = Y, 3 = Z.
            auto pauli_sig = [&](size_t j, int code) {
                FaultSignature s;
                if (code == 1 || code == 2) {
                    s = s ^ sx[j];
                }
                if (code == 2 || code == 3) {
                    s = s ^ sz[j];
                }
                return s;
            };
            auto add = [&](double p, FaultSignature s) {
                out.push_back({static_cast<uint32_t>(k), channel, p, std::log((1 - p) / p), std::move(s)});
            };
            switch (inst.gate) {
                case Gate::X_ERROR:
                    add(inst.prob, sx[0]);
                    break;
                case Gate::Z_ERROR:
                    add(inst.prob, sz[0]);
                    break;
                case Gate::DEPOLARIZE1:
                    for (int code = 1; code < 4; code++) {
                        add(inst.prob / 3, pauli_sig(0, code));
                    }
                    break;
                case Gate::DEPOLARIZE2:
                    for (int code = 1; code < 16; code++) {
                        add(inst.prob / 15, pauli_sig(0, code % 4) ^ pauli_sig(1, code / 4));
                    }
                    break;
                default:
                    break;
            }
        }
    }
    return out;
}

size_t MlOracle::Hash::operator()(const std::vector<uint32_t> &v) const {
    uint64_t h = 1469598103934665603ULL;
    for (uint32_t x : v) {
        h = (h ^ x) * 1099511628211ULL;
    }
    return static_cast<size_t>(h);
}

MlOracle::MlOracle(const Circuit &c) : MlOracle(enumerate_raw_faults(c)) {
}

MlOracle::MlOracle(std::vector<RawFault> faults) : faults_(std::move(faults)) {
    uint32_t max_detector = 0;
    for (const RawFault &f : faults_) {
        for (uint32_t d : f.signature.detectors) {
            max_detector = std::max(max_detector, d + 1);
        }
    }
    by_detector_.resize(max_detector);
    for (uint32_t i = 0; i < faults_.size(); i++) {
        const auto &dets = faults_[i].signature.detectors;
        if (dets.empty()) {
            continue;
        }
        by_signature_[dets].push_back(i);
        for (uint32_t d : dets) {
            by_detector_[d].push_back(i);
        }
    }
}

OracleResult MlOracle::decode(std::span<const uint32_t> syndrome, size_t max_faults) const {
    if (max_faults > 3) {
        throw std::invalid_argument("The oracle searches at most 3 faults.");
    }
    FaultSignature target;
    for (uint32_t d : syndrome) {
        target = target ^ FaultSignature{{d}, 0};
    }
    const std::vector<uint32_t> &s = target.detectors;
    if (s.empty()) {
        return OracleResult{0, 0, {}, {0}};
    }

    struct Candidate {
        double weight;
        std::vector<uint32_t> faults;
        uint64_t observables;
    };
    std::vector<Candidate> pool;
    double best = INFINITY;
    auto consider = [&](std::vector<uint32_t> idx) {
        std::sort(idx.begin(), idx.end());
        for (size_t a = 0; a < idx.size(); a++) {
            for (size_t b = a + 1; b < idx.size(); b++) {
                if (faults_[idx[a]].channel == faults_[idx[b]].channel) {
                    return;
                }
            }
        }
        double w = 0;
        uint64_t obs = 0;
        for (uint32_t i : idx) {
            w += faults_[i].weight;
            obs ^= faults_[i].signature.observables;
        }
        if (w < best || within(w, best)) {
            best = std::min(best, w);
            pool.push_back({w, std::move(idx), obs});
        }
    };
    auto lookup = [&](const std::vector<uint32_t> &dets) -> const std::vector<uint32_t> * {
        auto it = by_signature_.find(dets);
        return it == by_signature_.end() ? nullptr : &it->second;
    };
    auto containing = [&](uint32_t d) -> const std::vector<uint32_t> & {
        static const std::vector<uint32_t> none;
        return d < by_detector_.size() ? by_detector_[d] : none;
    };

    // Whatever the subset, some member flips the smallest remaining detector.
    if (max_faults >= 1) {
        if (const auto *hits = lookup(s)) {
            for (uint32_t f : *hits) {
                consider({f});
            }
        }
    }
    if (max_faults >= 2) {
        for (uint32_t f1 : containing(s[0])) {
            FaultSignature t = target ^ FaultSignature{faults_[f1].signature.detectors, 0};
            if (t.detectors.empty()) {
                continue;
            }
            if (const auto *hits = lookup(t.detectors)) {
                for (uint32_t f2 : *hits) {
                    if (f2 != f1) {
                        consider({f1, f2});
                    }
                }
            }
        }
    }
    if (max_faults >= 3) {
        for (uint32_t f1 : containing(s[0])) {
            FaultSignature t = target ^ FaultSignature{faults_[f1].signature.detectors, 0};
            if (t.detectors.empty()) {
                continue;
            }
            for (uint32_t f2 : containing(t.detectors[0])) {
                if (f2 == f1) {
                    continue;
                }
                FaultSignature u = t ^ FaultSignature{faults_[f2].signature.detectors, 0};
                if (u.detectors.empty()) {
                    continue;
                }
                if (const auto *hits = lookup(u.detectors)) {
                    for (uint32_t f3 : *hits) {
                        if (f3 != f1 && f3 != f2) {
                            consider({f1, f2, f3});
                        }
                    }
                }
            }
        }
    }
    if (pool.empty()) {
        throw OracleIncomplete("No explanation with at most " + std::to_string(max_faults) +
                               " faults exists for the syndrome.");
    }

    OracleResult out;
    const Candidate *chosen = nullptr;
    for (const Candidate &cand : pool) {
        if (!within(cand.weight, best)) {
            continue;
        }
        if (!chosen || cand.faults < chosen->faults) {
            chosen = &cand;
        }
        if (std::find(out.optimal_observables.begin(), out.optimal_observables.end(), cand.observables) ==
            out.optimal_observables.end()) {
            out.optimal_observables.push_back(cand.observables);
        }
    }
    std::sort(out.optimal_observables.begin(), out.optimal_observables.end());
    out.observables = chosen->observables;
    out.weight = chosen->weight;
    out.faults = chosen->faults;
    return out;
}

OracleResult ml_oracle_decode(const Circuit &c, std::span<const uint32_t> syndrome, size_t max_faults) {
    return MlOracle(c).decode(syndrome, max_faults);
}

}  // namespace quirc

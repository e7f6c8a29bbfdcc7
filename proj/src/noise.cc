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

#include "quirc/noise.h"

#include <stdexcept>
#include <string>

namespace quirc {

void NoiseParams::validate() const {
    auto check = [](double p, const char *name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string("Noise rate ") + name + " = " + std::to_string(p) +
                                        " is outside [0, 1].");
        }
    };
    check(p_spam, "p_spam");
    check(p_local, "p_local");
    check(p_remote_x, "p_remote_x");
    check(p_remote_z, "p_remote_z");
    check(p_latency, "p_latency");
}

Circuit append_noise_model(const Circuit &c, const NoiseParams &np, const std::set<size_t> &seam_cx,
                           const std::vector<LatencySite> &latency_sites,
                           const std::set<size_t> &noiseless_resets) {
    np.validate();
    for (size_t k : seam_cx) {
        if (k >= c.instructions.size() || c.instructions[k].gate != Gate::CX) {
            throw CircuitError(CircuitError::Kind::Marker, k,
                               "Seam marker " + std::to_string(k) + " does not refer to a CX instruction.");
        }
    }
    for (size_t k : noiseless_resets) {
        if (k >= c.instructions.size() || (c.instructions[k].gate != Gate::R_Z && c.instructions[k].gate != Gate::R_X)) {
            throw CircuitError(CircuitError::Kind::Marker, k,
                               "Reset marker " + std::to_string(k) + " does not refer to a reset instruction.");
        }
    }
    for (const auto &site : latency_sites) {
        if (site.before_instruction > c.instructions.size()) {
            throw CircuitError(CircuitError::Kind::Marker, site.before_instruction,
                               "Latency marker lies beyond the end of the circuit.");
        }
    }

    Circuit out;
    out.num_qubits = c.num_qubits;
    out.detectors = c.detectors;
    out.observables = c.observables;
    auto emit = [&](Gate g, const std::vector<uint32_t> &targets, double p) {
        if (p > 0 && !targets.empty()) {
            out.instructions.push_back({g, targets, p});
        }
    };
    auto emit_latency = [&](size_t position) {
        for (const auto &site : latency_sites) {
            if (site.before_instruction == position) {
                emit(Gate::DEPOLARIZE1, site.qubits, np.p_latency);
            }
        }
    };

    for (size_t k = 0; k < c.instructions.size(); k++) {
        const Instruction &inst = c.instructions[k];
        const GateInfo &info = gate_info(inst.gate);
        emit_latency(k);
        if (inst.gate == Gate::M_Z || inst.gate == Gate::M_Y) {
            emit(Gate::X_ERROR, inst.targets, np.p_spam);
        } else if (inst.gate == Gate::M_X) {
            emit(Gate::Z_ERROR, inst.targets, np.p_spam);
        }
        out.instructions.push_back(inst);
        double p_reset = noiseless_resets.count(k) ? 0.0 : np.p_spam;
        if (inst.gate == Gate::R_Z) {
            emit(Gate::X_ERROR, inst.targets, p_reset);
        } else if (inst.gate == Gate::R_X) {
            emit(Gate::Z_ERROR, inst.targets, p_reset);
        } else if (info.unitary) {
            emit(info.arity == 1 ? Gate::DEPOLARIZE1 : Gate::DEPOLARIZE2, inst.targets, np.p_local);
        }
        if (seam_cx.count(k)) {
            std::vector<uint32_t> controls, targets;
            for (size_t j = 0; j < inst.targets.size(); j += 2) {
                controls.push_back(inst.targets[j]);
                targets.push_back(inst.targets[j + 1]);
            }
            emit(Gate::X_ERROR, targets, np.p_remote_x);
            emit(Gate::Z_ERROR, controls, np.p_remote_z);
        }
    }
    emit_latency(c.instructions.size());
    return out;
}

}  // namespace quirc

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

// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "quirc/decoder.h"
#include "quirc/detector_graph.h"
#include "quirc/frame_simulator.h"
#include "quirc/harness.h"
#include "quirc/latsurg.h"
#include "quirc/ml_oracle.h"
#include "quirc/routecard.h"
#include "quirc/sched.h"

using namespace quirc;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string checks_detail(const RunResult &r) {
    std::string out;
    for (const Check &c : r.checks) {
        if (c.gating) {
            out += (out.empty() ? "" : "; ") + c.name + " " + (c.pass ? "ok" : "FAIL") + " (" + c.detail + ")";
        }
    }
    return out;
}

Outcome bell_protocol() {
    size_t branches = 0, failures = 0;
    for (size_t nu = 2; nu <= 12; nu++) {
        BellSweep s = bell_via_graph_state_exhaustive(nu);
        branches += s.branches_checked;
        failures += s.failures.size();
    }
    return {failures == 0 && branches > 0,
            std::to_string(branches) + " branches over nu 2..12, " + std::to_string(failures) + " failures"};
}

Outcome remote_cx() {
    RemoteCxReport r = remote_cx_check();
    size_t bad = 0;
    for (const RemoteCxEntry &e : r.entries) {
        bad += !e.ok;
    }
    return {r.ok && r.entries.size() == 64,
            std::to_string(r.entries.size()) + " input/branch cases, " + std::to_string(bad) + " mismatches"};
}

Outcome span_agreement() {
    RunResult r = run(ExperimentConfig(ExperimentKind::SPAN, {}));
    return {r.all_gating_pass() && r.checks.size() == 4, checks_detail(r)};
}

Outcome scheduling_boundaries() {
    const std::vector<std::pair<size_t, size_t>> combos{{3, 8}, {4, 6}, {6, 4}, {8, 3}, {12, 2}};
    std::ostringstream detail;
    bool ok = true;
    ModuleGraph all_modules(24, 24), one_module(24, 1);
    for (auto [p, k] : combos) {
        std::mt19937_64 rng(derive_stream_seed(4, p));
        size_t worst = 0;
        for (int s = 0; s < 100; s++) {
            worst = std::max(worst, transpile_layers(sample_operator_set(24, p, k, rng), all_modules).num_layers());
        }
        // Operator j holds qubits j, j + P, ..., so every span covers P..(K-1)P+1.
        OperatorSet interleaved{24, {}};
        for (size_t j = 1; j <= p; j++) {
            std::vector<uint32_t> op;
            for (size_t t = 0; t < k; t++) {
                op.push_back(static_cast<uint32_t>(j + t * p));
            }
            interleaved.operators.push_back(op);
        }
        size_t adversarial = transpile_layers(interleaved, one_module).num_layers();
        ok &= worst == 1 && adversarial == p;
        detail << "(" << p << "," << k << ") M=24 max " << worst << ", M=1 adversarial " << adversarial << "; ";
    }
    OperatorSet nested{24, {}};
    for (uint32_t i = 1; i <= 12; i++) {
        nested.operators.push_back({i, 25 - i});
    }
    size_t nested_layers = transpile_layers(nested, one_module).num_layers();
    ok &= nested_layers == 12;
    detail << "nested (i, 25-i) pairing " << nested_layers << " layers";
    return {ok, detail.str()};
}

Outcome table1_anchors() {
    RunResult r = reproduce_table1(0);
    return {r.all_gating_pass(), checks_detail(r)};
}

Outcome dumbbell_ep() {
    RunResult r = run(ExperimentConfig(ExperimentKind::EP_SCHED, {}));
    return {r.all_gating_pass() && r.checks.size() == 3, checks_detail(r)};
}

Outcome noiseless_determinism() {
    std::ostringstream detail;
    bool ok = true;
    std::mt19937_64 rng(7);
    for (int d : {3, 5, 7}) {
        Circuit c = build_merge_circuit(build_layout(d), NoiseParams{});
        SampleMatrix s = frame_sample(c, 10000, static_cast<uint64_t>(d));
        size_t fired = 0, flips = 0;
        for (size_t shot = 0; shot < s.shots(); shot++) {
            fired += s.fired_detectors(shot).size();
            flips += s.observable(shot, 0);
        }
        // Independent tableau route with random measurement outcomes.
        size_t tableau_bad = 0;
        for (int t = 0; t < 3; t++) {
            std::vector<bool> rec = reference_sample(c, &rng);
            for (bool v : evaluate_parities(c.detectors, rec)) {
                tableau_bad += v;
            }
            tableau_bad += evaluate_parities(c.observables, rec)[0];
        }
        ok &= fired == 0 && flips == 0 && tableau_bad == 0;
        detail << "d=" << d << ": " << fired << " fired, " << flips << " flips, tableau " << tableau_bad << "; ";
    }
    return {ok, detail.str()};
}

Outcome decoder_agreement() {
    NoiseParams np;
    np.p_spam = 0.01;
    np.p_local = 0.005;
    np.p_remote_x = 0.06;
    np.p_remote_z = 0.03;
    np.p_latency = 0.01;
    Circuit c = build_merge_circuit(build_layout(3), np);
    MlOracle oracle(c);
    DetectorGraph g = build_detector_graph(c);
    UnionFindDecoder dec(g);
    std::set<std::vector<uint32_t>> distinct;
    for (const RawFault &f : oracle.faults()) {
        if (!f.signature.detectors.empty()) {
            distinct.insert(f.signature.detectors);
        }
    }
    std::vector<std::vector<uint32_t>> sigs(distinct.begin(), distinct.end());
    auto agrees = [&](const std::vector<uint32_t> &s, size_t max_faults) {
        OracleResult r = oracle.decode(s, max_faults);
        uint64_t u = dec.decode(s);
        return std::find(r.optimal_observables.begin(), r.optimal_observables.end(), u) != r.optimal_observables.end();
    };
    size_t single_ok = 0;
    for (const auto &s : sigs) {
        single_ok += agrees(s, 3);
    }
    size_t pairs = 0, pair_ok = 0, incomplete = 0;
    for (size_t i = 0; i < sigs.size(); i++) {
        for (size_t j = i + 1; j < sigs.size(); j++) {
            FaultSignature s = FaultSignature{sigs[i], 0} ^ FaultSignature{sigs[j], 0};
            if (s.detectors.empty()) {
                continue;
            }
            pairs++;
            try {
                pair_ok += agrees(s.detectors, 2);
            } catch (const OracleIncomplete &) {
                incomplete++;
            }
        }
    }
    double pair_rate = static_cast<double>(pair_ok) / static_cast<double>(pairs);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%zu raw faults, %zu distinct single syndromes, %zu agree; %zu pair syndromes, %.4f%% agree, "
                  "%zu incomplete",
                  oracle.faults().size(), sigs.size(), single_ok, pairs, 100 * pair_rate, incomplete);
    return {single_ok == sigs.size() && pair_rate >= 0.99, buf};
}

Outcome threshold_bands() {
    std::vector<RunResult> rs = reproduce_thresholds(0, 100000);
    bool ok = true;
    std::string detail;
    for (const RunResult &r : rs) {
        ok &= r.all_gating_pass();
        detail += (detail.empty() ? "" : "; ") + checks_detail(r);
    }
    return {ok, detail};
}

Outcome full_model_ratio() {
    RunResult r = full_model_comparison(0, 100000);
    return {r.all_gating_pass() && !r.checks.empty(), checks_detail(r)};
}

Outcome reproducibility() {
    const std::vector<std::pair<ExperimentKind, ConfigMap>> cases{
        {ExperimentKind::SPAN, {{"trials", "2000"}, {"seed", "11"}}},
        {ExperimentKind::TRANSPILE, {{"samples", "5"}, {"seed", "11"}}},
        {ExperimentKind::EP_SCHED, {{"samples", "5"}, {"seed", "11"}}},
        {ExperimentKind::PROTOCOL_CHECK, {{"nu_max", "6"}, {"seed", "11"}}},
        {ExperimentKind::SURFACE, {{"shots", "2000"}, {"seed", "11"}}},
        {ExperimentKind::THRESHOLD, {{"shots", "1000"}, {"seed", "11"}, {"grid", "0.01,0.02,0.04"}}},
        {ExperimentKind::FULL_MODEL, {{"shots", "1000"}, {"seed", "11"}}},
    };
    bool ok = true;
    std::string detail;
    for (const auto &[kind, values] : cases) {
        ExperimentConfig cfg(kind, values);
        std::ostringstream a, b;
        RunResult ra = run(cfg), rb = run(cfg);
        write_rows_csv(a, ra);
        write_rows_csv(b, rb);
        bool same = a.str() == b.str() && ra.extra_csv == rb.extra_csv;
        ok &= same;
        detail += (detail.empty() ? "" : ", ") + kind_name(kind) + (same ? " identical" : " DIFFERS");
    }
    return {ok, detail};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double limit_seconds;
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "bell_protocol_exactness", 10, bell_protocol},
        {2, "remote_cx_exactness", 1, remote_cx},
        {3, "span_closed_form_agreement", 5, span_agreement},
        {4, "scheduling_boundary_exactness", 10, scheduling_boundaries},
        {5, "table1_anchors", 120, table1_anchors},
        {6, "dumbbell_ep_bound", 60, dumbbell_ep},
        {7, "noiseless_determinism", 60, noiseless_determinism},
        {8, "decoder_oracle_agreement", 300, decoder_agreement},
        {9, "threshold_bands", 1800, threshold_bands},
        {10, "full_model_ratio", 600, full_model_ratio},
        {11, "reproducibility", 600, reproducibility},
    };
    int failed = 0;
    for (const Criterion &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = seconds <= c.limit_seconds;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s criterion %d %s [%.2f s, limit %.0f s%s]: %s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    seconds, c.limit_seconds, in_time ? "" : ", exceeded", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

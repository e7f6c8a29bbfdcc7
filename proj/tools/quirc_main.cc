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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "quirc/harness.h"

using namespace quirc;

namespace {

constexpr int EXIT_VALIDATION = 2;
constexpr int EXIT_ACCEPTANCE = 3;

void report(const RunResult &r) {
    std::cout << kind_name(r.config.kind()) << ": " << r.rows.size() << " rows, seed " << r.config.seed() << ", "
              << r.runtime_seconds << " s\n";
    for (const Check &c : r.checks) {
        std::cout << "  " << (c.pass ? "PASS" : (c.gating ? "FAIL" : "INFO")) << " " << c.name << ": " << c.detail
                  << "\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Distributed surface-code workbench experiments."};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    uint64_t seed = 0;
    size_t shots = 0;
    std::vector<std::string> overrides;

    std::vector<std::pair<ExperimentKind, CLI::App *>> kinds;
    for (ExperimentKind k : {ExperimentKind::SPAN, ExperimentKind::TRANSPILE, ExperimentKind::EP_SCHED,
                             ExperimentKind::PROTOCOL_CHECK, ExperimentKind::SURFACE, ExperimentKind::THRESHOLD,
                             ExperimentKind::FULL_MODEL}) {
        CLI::App *sub = app.add_subcommand(kind_name(k), "Run a " + kind_name(k) + " experiment.");
        sub->add_option("--config", config_path, "Flat key = value configuration file.");
        sub->add_option("--seed", seed, "64-bit seed; overrides the configuration.");
        sub->add_option("--out", out_dir, "Output directory.");
        sub->add_option("--shots", shots, "Shots per point; overrides the configuration.");
        sub->add_option("--override", overrides, "key=value, applied after the configuration file.");
        kinds.emplace_back(k, sub);
    }
    CLI::App *table1 = app.add_subcommand("reproduce-table1", "Transpilation grid with anchor checks.");
    CLI::App *thresholds = app.add_subcommand("reproduce-thresholds", "Threshold sweeps with band checks.");
    CLI::App *full = app.add_subcommand("full-model-comparison", "Local-only versus full noise model.");
    for (CLI::App *sub : {table1, thresholds, full}) {
        sub->add_option("--seed", seed, "64-bit seed.");
        sub->add_option("--out", out_dir, "Output directory.");
    }
    for (CLI::App *sub : {thresholds, full}) {
        sub->add_option("--shots", shots, "Shots per point.")->default_val(100000);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_VALIDATION;
    }

    try {
        std::vector<RunResult> results;
        bool acceptance = false;
        if (table1->parsed()) {
            results.push_back(reproduce_table1(seed));
            acceptance = true;
        } else if (thresholds->parsed()) {
            results = reproduce_thresholds(seed, shots);
            acceptance = true;
        } else if (full->parsed()) {
            results.push_back(full_model_comparison(seed, shots));
            acceptance = true;
        } else {
            for (auto [kind, sub] : kinds) {
                if (!sub->parsed()) {
                    continue;
                }
                ConfigMap values;
                if (!config_path.empty()) {
                    std::ifstream in(config_path);
                    if (!in) {
                        throw ValidationError("config", "cannot open '" + config_path + "'.");
                    }
                    values = parse_config(in);
                }
                for (const std::string &o : overrides) {
                    apply_override(values, o);
                }
                if (sub->count("--seed")) {
                    values["seed"] = std::to_string(seed);
                }
                if (sub->count("--shots")) {
                    values["shots"] = std::to_string(shots);
                }
                results.push_back(run(ExperimentConfig(kind, values)));
            }
        }
        bool pass = true;
        for (const RunResult &r : results) {
            write_outputs(r, out_dir);
            report(r);
            pass &= r.all_gating_pass();
        }
        return acceptance && !pass ? EXIT_ACCEPTANCE : 0;
    } catch (const ValidationError &e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

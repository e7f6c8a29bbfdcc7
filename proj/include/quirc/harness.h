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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace quirc {

/// A configuration value is missing, unknown, or out of range.
class ValidationError : public std::invalid_argument {
   public:
    ValidationError(std::string field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

enum class ExperimentKind { SPAN, TRANSPILE, EP_SCHED, PROTOCOL_CHECK, SURFACE, THRESHOLD, FULL_MODEL };

/// "span", "transpile", "ep-sched", "protocol-check", "surface", "threshold",
/// "full-model".
std::string kind_name(ExperimentKind k);
/// Throws ValidationError("kind", ...) for an unknown name.
ExperimentKind parse_kind(const std::string &name);

using ConfigMap = std::map<std::string, std::string>;

/// Flat `key = value` lines; '#' starts a comment. Throws ValidationError on
/// malformed lines or repeated keys.
ConfigMap parse_config(std::istream &in);
/// Applies `key=value`. Throws ValidationError when '=' is missing.
void apply_override(ConfigMap &values, const std::string &assignment);

/// A kind plus its complete parameter set: user values over per-kind defaults.
class ExperimentConfig {
   public:
    /// Throws ValidationError naming the first unknown key or invalid value.
    ExperimentConfig(ExperimentKind kind, const ConfigMap &values);

    ExperimentKind kind() const {
        return kind_;
    }
    const ConfigMap &values() const {
        return values_;
    }
    uint64_t seed() const;

    const std::string &get(const std::string &key) const;
    uint64_t get_uint(const std::string &key) const;
    double get_double(const std::string &key) const;
    bool get_bool(const std::string &key) const;
    std::vector<uint64_t> get_uints(const std::string &key) const;
    std::vector<double> get_doubles(const std::string &key) const;
    std::vector<std::string> get_strings(const std::string &key) const;

    /// `kind=...` followed by sorted `key=value` lines.
    std::string canonical() const;
    /// FNV-1a of canonical(), as 16 hex digits.
    std::string hash() const;

   private:
    void validate() const;

    ExperimentKind kind_;
    ConfigMap values_;
};

/// Default parameters of a kind.
ConfigMap default_config(ExperimentKind kind);

struct ResultRow {
    std::string kind;
    std::string params;  // `key=value` pairs joined by ';'
    std::string metric;
    double value = 0;
    double half_width = 0;
    uint64_t seed = 0;
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
    /// Non-gating checks are reported without affecting the exit status.
    bool gating = true;
};

struct RunResult {
    ExperimentConfig config;
    std::vector<ResultRow> rows;
    std::vector<Check> checks;
    /// Additional per-sample CSV files by file name.
    std::map<std::string, std::string> extra_csv;
    double runtime_seconds = 0;

    bool all_gating_pass() const;
};

/// Runs one experiment.
RunResult run(const ExperimentConfig &config);

/// Columns `kind,params,metric,value,half_width,seed,config_hash`.
void write_rows_csv(std::ostream &out, const RunResult &r);
/// {config, config_hash, seed, rows, runtime_seconds, checks}.
std::string summary_json(const RunResult &r);
/// Writes `<kind>.csv`, `<kind>.json` and the extra CSVs into `dir`. Files
/// already written are removed if a later write fails.
void write_outputs(const RunResult &r, const std::filesystem::path &dir);

/// Estimated d = 3 / d = 5 crossing.
struct Crossing {
    bool in_range = false;
    double p = 0;
    double lo = 0, hi = 0;  // bootstrap 95% interval
    size_t bootstrap_hits = 0;
};

/// First upward crossing of ln r_large - ln r_small over an increasing grid,
/// located by linear interpolation in (ln p, ln r). Rates k/n enter as
/// (k + 1/2)/(n + 1). The interval comes from `bootstrap` parametric
/// binomial resamples of every point.
Crossing find_crossing(const std::vector<double> &grid, const std::vector<size_t> &fail_small,
                       const std::vector<size_t> &fail_large, size_t shots, size_t bootstrap, uint64_t seed);

/// Full (P, K) × M grid at 100 samples with the layer-reduction anchor checks.
RunResult reproduce_table1(uint64_t seed);
/// Threshold sweeps in p_local, p_remote_x (= 2·p_remote_z) and p_latency.
std::vector<RunResult> reproduce_thresholds(uint64_t seed, size_t shots);
/// Local-only versus the full model at ν = 6 and p_latency = 0.01.
RunResult full_model_comparison(uint64_t seed, size_t shots);

}  // namespace quirc

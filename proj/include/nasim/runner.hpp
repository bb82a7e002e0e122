// Copyright 2026 The nasim Authors
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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nasim/bench.hpp"
#include "nasim/channels.hpp"
#include "nasim/circuit.hpp"
#include "nasim/distribution.hpp"
#include "nasim/metrics.hpp"
#include "nasim/routing.hpp"
#include "nasim/state.hpp"

namespace nasim {

struct NoisyRun {
    // Bit strings over the circuit's readout qubits, after measurement error.
    Distribution output;
    std::size_t depth = 0;
};

// Prepares |0...0>, applies the preparation error, runs the native circuit layer
// by layer (noisy gates, then decoherence for the layer's duration) and reads out
// the circuit's readout qubits with measurement error.
NoisyRun simulate_noisy(const Circuit &native, const NoiseParams &params,
                        std::size_t memory_cap = kDefaultMemoryCap);

struct ResultRecord {
    std::string kind;
    std::size_t width = 0;
    std::string topology;
    nlohmann::json instance;  // spec fields identifying the instance
    std::size_t depth = 0;
    GateCounts gates;
    std::size_t swaps = 0;
    double f = 0.0;
    double f_s = 0.0;
    double f_n = 0.0;
    bool degenerate = false;
    double wall_time = 0.0;  // seconds; kept out of results.json
};

nlohmann::json record_to_json(const ResultRecord &r);

ResultRecord run_instance(const BenchmarkSpec &spec, const Topology &topology, const NoiseParams &params,
                          std::size_t memory_cap = kDefaultMemoryCap);

struct RunConfig {
    NoiseParams noise;
    std::vector<Topology> topologies{Topology::all_to_all(), Topology::grid()};
    std::vector<BenchmarkKind> kinds;
    std::size_t min_width = 2;
    std::size_t max_width = 5;
    // Per-kind override of the number of instances per point.
    std::map<BenchmarkKind, std::size_t> samples_per_point;
    // Circuit files for the external kind.
    std::vector<std::string> external;
    std::uint64_t seed = 0;
    // 0 means one worker per hardware thread.
    std::size_t threads = 1;
    std::size_t memory_cap = kDefaultMemoryCap;
    std::string out_dir = "out";

    std::size_t samples_for(BenchmarkKind kind) const;
    // Throws ValidationError naming the field.
    void validate() const;
};

// Replaces the value at a dotted path ("noise.cz_phaseflip=0.05"). The value is
// parsed as JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json &config, const std::string &assignment);

// Noise from a config value: an object of parameters, "default", "noiseless" or
// a JSON file path (relative to base_dir).
NoiseParams noise_from_config(const nlohmann::json &value, const std::string &base_dir = ".");

// Parses a config document; errors name the offending field. `base_dir` resolves
// relative noise and external paths.
RunConfig run_config_from_json(const nlohmann::json &j, const std::string &base_dir = ".");
nlohmann::json run_config_to_json(const RunConfig &c);

struct PointSummary {
    std::string kind;
    std::size_t width = 0;
    std::string topology;
    // Mean over non-degenerate instances; NaN if there are none.
    double mean_fidelity = 0.0;
    double mean_depth = 0.0;
    std::size_t instances = 0;
};

struct Failure {
    std::string kind;
    std::size_t width = 0;
    std::string topology;
    nlohmann::json instance;
    int code = 0;
    std::string message;
};

struct SuiteResult {
    std::vector<ResultRecord> records;
    std::vector<PointSummary> points;
    std::vector<Failure> failures;
    // Points dropped because the kind does not support the width.
    std::size_t skipped_points = 0;
};

// Runs every (kind, width, topology) point. Instances are spread over a worker
// pool; records come back in a fixed order regardless of scheduling.
SuiteResult run_suite(const RunConfig &config);

nlohmann::json suite_to_json(const SuiteResult &result);
std::string summary_csv(const SuiteResult &result);
// Long-format grid: topology, width, depth bin [lo, hi), mean fidelity and point count.
std::string heatmap_csv(const SuiteResult &result);
std::string timings_csv(const SuiteResult &result);

// Writes results.json, summary.csv, heatmap.csv, timings.csv and, when
// anything failed, failures.json into config.out_dir.
void write_suite_outputs(const SuiteResult &result, const RunConfig &config);

}  // namespace nasim

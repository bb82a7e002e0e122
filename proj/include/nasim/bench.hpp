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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nasim/circuit.hpp"
#include "nasim/distribution.hpp"

namespace nasim {

enum class BenchmarkKind {
    kBernsteinVazirani,
    kDeutschJozsa,
    kHiddenShift,
    kQftMethod1,
    kQftMethod2,
    kPhaseEstimation,
    kAmplitudeEstimation,
    kGrover,
    kHamiltonianSim,
    kMonteCarlo,
    kGhz,
    kGhzParity,
    kQaoaMaxCut,
    kExternal,
};

std::string_view benchmark_name(BenchmarkKind kind);
std::optional<BenchmarkKind> benchmark_kind_from_name(std::string_view name);
std::vector<BenchmarkKind> all_benchmark_kinds();

struct BenchmarkSpec {
    BenchmarkKind kind = BenchmarkKind::kGhz;
    // Total qubit count including ancillas.
    std::size_t width = 2;
    // Kind-specific instance value:
    //   BV            secret over the width-1 data qubits (nonzero)
    //   DJ            0 constant oracle, 1 balanced oracle
    //   HiddenShift   shift (nonzero)
    //   QFT 1 / 2     encoded value
    //   PhaseEst.     phase numerator k, phase = k / 2^(width-1)
    //   AmplitudeEst. k, amplitude a = sin^2(pi k / 2^(width-2))
    //   Grover        marked item
    //   QAOA          angle seed
    std::uint64_t instance = 0;
    // Analysis phase of GhzParity.
    double phase = 0.0;
    // Circuit file of External.
    std::string path;
    std::uint64_t seed = 0;
};

nlohmann::json spec_to_json(const BenchmarkSpec &spec);
// {"kind", "width", "instance"?, "phase"?, "path"?, "seed"?}; width defaults to
// the file's for external circuits. Errors name the field.
BenchmarkSpec spec_from_json(const nlohmann::json &j);

// Smallest and largest widths accepted for the kind.
std::size_t min_width(BenchmarkKind kind);
std::size_t max_width(BenchmarkKind kind);
// Width in range and of the right parity (hidden shift needs an even width).
bool width_supported(BenchmarkKind kind, std::size_t width);

struct GeneratedCircuit {
    Circuit circuit;
    Distribution ideal;
};

// Abstract circuit plus its noiseless output distribution over the measured
// qubits, computed by statevector simulation. Throws ArgumentError for widths
// or instances outside the kind's range.
GeneratedCircuit generate(const BenchmarkSpec &spec);

// Number of admissible instance values, or nullopt if effectively unbounded.
std::optional<std::uint64_t> instance_count(BenchmarkKind kind, std::size_t width);
// Circuits per data point: 3, except 2 for AmplitudeEstimation and 1 for MonteCarlo.
std::size_t default_samples(BenchmarkKind kind);
// n_samples distinct instances drawn uniformly, or every admissible value when
// there are fewer. Deterministic in seed.
std::vector<BenchmarkSpec> sample_instances(BenchmarkKind kind, std::size_t width, std::size_t n_samples,
                                            std::uint64_t seed);

struct ExternalCircuit {
    Circuit circuit;
    Distribution measured;
};

// {"n_qubits", "ops", "measured": {bitstring: prob}, "readout"?}. The measured
// distribution must sum to 1 within 1e-6 and is renormalized exactly.
ExternalCircuit load_external(const std::string &path);
ExternalCircuit parse_external(const nlohmann::json &j);
nlohmann::json external_to_json(const ExternalCircuit &ext);
void save_external(const std::string &path, const ExternalCircuit &ext);

// Two-qubit exp(i (a XX + b YY + c ZZ)) from three CX.
std::vector<Gate> canonical_two_qubit(int q0, int q1, double a, double b, double c);

}  // namespace nasim

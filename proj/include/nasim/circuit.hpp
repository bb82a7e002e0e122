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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "nasim/channels.hpp"
#include "nasim/gate.hpp"

namespace nasim {

struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<Gate> ops;
    // Qubits read out, in bitstring order. Empty means all qubits in index order.
    std::vector<int> readout;
    std::string name;
    // Generator parameters (kind, instance, ...), carried through to reports.
    nlohmann::json metadata = nlohmann::json::object();
    std::uint64_t seed = 0;

    std::vector<int> readout_qubits() const;
    bool is_native() const;
    // Throws ValidationError naming the offending op.
    void validate() const;
};

// Ops as a JSON list of {"gate", "sites", "params"} records.
nlohmann::json ops_to_json(const std::vector<Gate> &ops);
std::vector<Gate> ops_from_json(const nlohmann::json &j);
// {"n_qubits", "ops", "readout", "name", "metadata"}; readout/name/metadata optional on input.
nlohmann::json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const nlohmann::json &j);

// Local rotation R_phi(theta) on one site from two global pulses around a
// local Stark-shift Rz; spectators see no net rotation.
std::array<Gate, 3> decompose_local_rotation(double phi, double theta, int site);

// Rewrites every abstract gate into global rotations, local Rz and CZ. The result
// implements the same unitary up to a global phase.
Circuit lower_to_native(const Circuit &circuit);

// Exact simplification of a native circuit: merges adjacent global rotations
// about the same axis, and within each run of diagonal gates merges Rz per site
// and cancels repeated CZ pairs. Rotations by 2pi are dropped, since their sign
// only affects coherences between the computational and loss blocks, which are
// never populated.
Circuit optimize_native(const Circuit &native);

struct Layer {
    std::vector<std::size_t> ops;  // indices into the circuit's op list
    double duration = 0.0;
};

struct Schedule {
    std::vector<Layer> layers;
    std::size_t depth() const {
        return layers.size();
    }
};

// Greedy as-soon-as-possible layering of a native circuit. Global rotations
// occupy a layer of their own; Rz/CZ on disjoint sites share layers. Each layer
// lasts as long as its slowest gate.
Schedule schedule_layers(const Circuit &native, const NoiseParams &params = NoiseParams{});

struct GateCounts {
    std::size_t global = 0;
    std::size_t rz = 0;
    std::size_t cz = 0;
    std::size_t other = 0;
    std::size_t total() const {
        return global + rz + cz + other;
    }
};
GateCounts count_gates(const Circuit &circuit);

// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

}  // namespace nasim

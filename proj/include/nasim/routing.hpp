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

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "nasim/circuit.hpp"

namespace nasim {

struct Topology {
    enum class Mode { kAllToAll, kGrid };
    Mode mode = Mode::kAllToAll;
    // Grid shape; 0 x 0 means the most-square grid for the circuit width.
    std::size_t rows = 0;
    std::size_t cols = 0;

    static Topology all_to_all() {
        return {};
    }
    static Topology grid(std::size_t rows = 0, std::size_t cols = 0) {
        return {Mode::kGrid, rows, cols};
    }

    // "all_to_all", "grid" (auto shape) or "grid2x3".
    std::string name() const;
    bool operator==(const Topology &) const = default;
};

// "all_to_all", "grid", {"grid": [rows, cols]} or {"grid": "auto"}.
Topology topology_from_json(const nlohmann::json &j);
nlohmann::json topology_to_json(const Topology &t);

struct GridShape {
    std::size_t rows = 0;
    std::size_t cols = 0;
};

// Smallest near-square grid holding n nodes: cols = ceil(sqrt(n)), rows = ceil(n / cols).
GridShape most_square_grid(std::size_t n_qubits);

// Node index (row-major) of each logical qubit. Throws CapacityError if the grid is too small.
std::vector<std::size_t> default_placement(std::size_t n_qubits, GridShape grid);

struct RoutedCircuit {
    // Native circuit on atoms; atom a sits at grid node placement[a].
    Circuit circuit;
    std::vector<std::size_t> placement;
    // Atom holding each logical qubit at the end of the circuit.
    std::vector<std::size_t> final_atom;
    std::size_t swaps = 0;
    GridShape grid;

    // Atom to read for each of the logical circuit's readout qubits. The routed
    // circuit's own readout list already holds these.
    std::vector<int> readout_atoms(const Circuit &logical) const;
};

// Inserts SWAP chains so that every CZ acts on grid neighbours. All-to-all
// returns the circuit unchanged with the identity mapping.
RoutedCircuit route(const Circuit &native, const Topology &topology);

}  // namespace nasim

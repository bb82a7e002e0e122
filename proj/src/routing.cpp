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

#include "nasim/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "nasim/errors.hpp"

namespace nasim {

namespace {

constexpr std::size_t kLookahead = 5;
constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

class Grid {
   public:
    Grid(GridShape shape, std::vector<std::size_t> placement) : shape_(shape), placement_(std::move(placement)) {
        std::size_t n = placement_.size();
        neighbours_.resize(n);
        for (std::size_t a = 0; a < n; a++) {
            for (std::size_t b = 0; b < n; b++) {
                if (a != b && adjacent_nodes(placement_[a], placement_[b])) {
                    neighbours_[a].push_back(b);
                }
            }
        }
        dist_.assign(n, std::vector<std::size_t>(n, kUnreachable));
        for (std::size_t a = 0; a < n; a++) {
            std::deque<std::size_t> queue{a};
            dist_[a][a] = 0;
            while (!queue.empty()) {
                std::size_t u = queue.front();
                queue.pop_front();
                for (std::size_t v : neighbours_[u]) {
                    if (dist_[a][v] == kUnreachable) {
                        dist_[a][v] = dist_[a][u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
    }

    bool adjacent(std::size_t a, std::size_t b) const {
        return dist_[a][b] == 1;
    }
    std::size_t distance(std::size_t a, std::size_t b) const {
        return dist_[a][b];
    }

    // Shortest atom path from a to b; neighbours are explored in index order.
    std::vector<std::size_t> path(std::size_t a, std::size_t b) const {
        if (dist_[a][b] == kUnreachable) {
            throw InternalError("grid atoms are disconnected");
        }
        std::vector<std::size_t> out{a};
        while (out.back() != b) {
            for (std::size_t v : neighbours_[out.back()]) {
                if (dist_[v][b] + 1 == dist_[out.back()][b]) {
                    out.push_back(v);
                    break;
                }
            }
        }
        return out;
    }

   private:
    bool adjacent_nodes(std::size_t u, std::size_t v) const {
        std::size_t ru = u / shape_.cols, cu = u % shape_.cols;
        std::size_t rv = v / shape_.cols, cv = v % shape_.cols;
        std::size_t dr = ru > rv ? ru - rv : rv - ru;
        std::size_t dc = cu > cv ? cu - cv : cv - cu;
        return dr + dc == 1;
    }

    GridShape shape_;
    std::vector<std::size_t> placement_;
    std::vector<std::vector<std::size_t>> neighbours_;
    std::vector<std::vector<std::size_t>> dist_;
};

std::vector<Gate> native_swap(int a, int b) {
    Circuit c;
    c.n_qubits = static_cast<std::size_t>(std::max(a, b)) + 1;
    c.ops = {Gate{GateKind::kSwap, {a, b}, {}}};
    return lower_to_native(c).ops;
}

}  // namespace

std::string Topology::name() const {
    if (mode == Mode::kAllToAll) {
        return "all_to_all";
    }
    if (rows == 0 && cols == 0) {
        return "grid";
    }
    return "grid" + std::to_string(rows) + "x" + std::to_string(cols);
}

Topology topology_from_json(const nlohmann::json &j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "all_to_all") {
            return Topology::all_to_all();
        }
        if (s == "grid") {
            return Topology::grid();
        }
        throw ParseError("unknown topology '" + s + "' (expected \"all_to_all\", \"grid\" or {\"grid\": [rows, cols]})");
    }
    if (j.is_object() && j.size() == 1 && j.contains("grid")) {
        const auto &g = j["grid"];
        if (g.is_string() && g.get<std::string>() == "auto") {
            return Topology::grid();
        }
        if (g.is_array() && g.size() == 2 && g[0].is_number_integer() && g[1].is_number_integer() &&
            g[0].get<long long>() > 0 && g[1].get<long long>() > 0) {
            return Topology::grid(g[0].get<std::size_t>(), g[1].get<std::size_t>());
        }
        throw ParseError("grid: expected [rows, cols] with positive integers or \"auto\"");
    }
    throw ParseError("topology: expected \"all_to_all\", \"grid\" or {\"grid\": [rows, cols]}");
}

nlohmann::json topology_to_json(const Topology &t) {
    if (t.mode == Topology::Mode::kAllToAll) {
        return "all_to_all";
    }
    if (t.rows == 0 && t.cols == 0) {
        return "grid";
    }
    return {{"grid", {t.rows, t.cols}}};
}

GridShape most_square_grid(std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw ArgumentError("grid needs at least one qubit");
    }
    std::size_t cols = 1;
    while (cols * cols < n_qubits) {
        cols++;
    }
    return {(n_qubits + cols - 1) / cols, cols};
}

std::vector<std::size_t> default_placement(std::size_t n_qubits, GridShape grid) {
    if (grid.rows * grid.cols < n_qubits) {
        throw CapacityError(
            "grid " + std::to_string(grid.rows) + "x" + std::to_string(grid.cols) + " cannot hold " +
            std::to_string(n_qubits) + " qubits");
    }
    std::vector<std::size_t> placement(n_qubits);
    std::iota(placement.begin(), placement.end(), 0);
    return placement;
}

std::vector<int> RoutedCircuit::readout_atoms(const Circuit &logical) const {
    std::vector<int> atoms;
    for (int q : logical.readout_qubits()) {
        atoms.push_back(static_cast<int>(final_atom[q]));
    }
    return atoms;
}

RoutedCircuit route(const Circuit &native, const Topology &topology) {
    if (!native.is_native()) {
        throw ArgumentError("route needs a native circuit");
    }
    native.validate();
    std::size_t n = native.n_qubits;
    RoutedCircuit out;
    out.final_atom.resize(n);
    std::iota(out.final_atom.begin(), out.final_atom.end(), 0);
    if (topology.mode == Topology::Mode::kAllToAll) {
        out.circuit = native;
        out.placement = out.final_atom;
        return out;
    }
    out.grid = topology.rows == 0 && topology.cols == 0 ? most_square_grid(n) : GridShape{topology.rows, topology.cols};
    out.placement = default_placement(n, out.grid);
    Grid grid(out.grid, out.placement);

    std::vector<std::size_t> atom_of(n);  // logical -> atom
    std::iota(atom_of.begin(), atom_of.end(), 0);
    std::vector<std::size_t> logical_of = atom_of;

    std::vector<std::size_t> cz_ops;
    for (std::size_t i = 0; i < native.ops.size(); i++) {
        if (native.ops[i].kind == GateKind::kCZ) {
            cz_ops.push_back(i);
        }
    }

    Circuit routed = native;
    routed.ops.clear();
    auto emit_swap = [&](std::size_t a, std::size_t b) {
        for (auto &g : native_swap(static_cast<int>(a), static_cast<int>(b))) {
            routed.ops.push_back(std::move(g));
        }
        std::swap(logical_of[a], logical_of[b]);
        atom_of[logical_of[a]] = a;
        atom_of[logical_of[b]] = b;
        out.swaps++;
    };

    std::size_t next_cz = 0;
    for (std::size_t i = 0; i < native.ops.size(); i++) {
        Gate g = native.ops[i];
        if (g.kind == GateKind::kRz) {
            g.sites[0] = static_cast<int>(atom_of[g.sites[0]]);
            routed.ops.push_back(g);
            continue;
        }
        if (g.kind == GateKind::kGlobalRotation) {
            routed.ops.push_back(g);
            continue;
        }
        next_cz++;
        std::size_t qa = static_cast<std::size_t>(g.sites[0]);
        std::size_t qb = static_cast<std::size_t>(g.sites[1]);
        if (!grid.adjacent(atom_of[qa], atom_of[qb])) {
            // Candidate moves: walk qa towards qb, or qb towards qa, stopping one step short.
            auto cost_after = [&](std::size_t mover, std::size_t fixed) {
                auto path = grid.path(atom_of[mover], atom_of[fixed]);
                std::vector<std::size_t> trial = atom_of;
                std::vector<std::size_t> trial_logical = logical_of;
                for (std::size_t s = 0; s + 2 < path.size(); s++) {
                    std::swap(trial_logical[path[s]], trial_logical[path[s + 1]]);
                    trial[trial_logical[path[s]]] = path[s];
                    trial[trial_logical[path[s + 1]]] = path[s + 1];
                }
                std::size_t cost = 0;
                for (std::size_t k = next_cz; k < cz_ops.size() && k < next_cz + kLookahead; k++) {
                    const Gate &f = native.ops[cz_ops[k]];
                    cost += grid.distance(trial[f.sites[0]], trial[f.sites[1]]);
                }
                return cost;
            };
            std::size_t first = std::min(qa, qb);
            std::size_t second = std::max(qa, qb);
            std::size_t mover = first;
            if (cost_after(second, first) < cost_after(first, second)) {
                mover = second;
            }
            std::size_t fixed = mover == qa ? qb : qa;
            auto path = grid.path(atom_of[mover], atom_of[fixed]);
            for (std::size_t s = 0; s + 2 < path.size(); s++) {
                emit_swap(path[s], path[s + 1]);
            }
        }
        std::size_t a = atom_of[qa];
        std::size_t b = atom_of[qb];
        if (!grid.adjacent(a, b)) {
            throw InternalError("routing left a CZ on non-adjacent atoms");
        }
        routed.ops.push_back(Gate::cz(static_cast<int>(a), static_cast<int>(b)));
    }
    out.circuit = out.swaps > 0 ? optimize_native(routed) : routed;
    out.final_atom = atom_of;
    out.circuit.readout = out.readout_atoms(native);
    for (const auto &op : out.circuit.ops) {
        if (op.kind == GateKind::kCZ && !grid.adjacent(op.sites[0], op.sites[1])) {
            throw InternalError("routed circuit contains a CZ on non-adjacent atoms");
        }
    }
    return out;
}

}  // namespace nasim

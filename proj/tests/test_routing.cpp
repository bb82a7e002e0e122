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

#include <gtest/gtest.h>

#include <random>

#include "nasim/bench.hpp"
#include "nasim/errors.hpp"
#include "nasim/routing.hpp"
#include "nasim/statevector.hpp"

using namespace nasim;

namespace {

bool grid_adjacent(std::size_t u, std::size_t v, GridShape g) {
    long ru = static_cast<long>(u / g.cols), cu = static_cast<long>(u % g.cols);
    long rv = static_cast<long>(v / g.cols), cv = static_cast<long>(v % g.cols);
    return std::labs(ru - rv) + std::labs(cu - cv) == 1;
}

Circuit random_native(std::size_t n, int n_ops, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> a(-kPi, kPi);
    Circuit c;
    c.n_qubits = n;
    for (int i = 0; i < n_ops; i++) {
        int k = static_cast<int>(rng() % 3);
        int q = static_cast<int>(rng() % n);
        if (k == 0) {
            c.ops.push_back(Gate::global_rotation(a(rng), a(rng)));
        } else if (k == 1) {
            c.ops.push_back(Gate::rz(q, a(rng)));
        } else {
            int r = static_cast<int>((q + 1 + rng() % (n - 1)) % n);
            c.ops.push_back(Gate::cz(q, r));
        }
    }
    return c;
}

void expect_routed_ok(const Circuit &native, const RoutedCircuit &r) {
    for (const auto &g : r.circuit.ops) {
        if (g.kind == GateKind::kCZ) {
            ASSERT_TRUE(grid_adjacent(r.placement[g.sites[0]], r.placement[g.sites[1]], r.grid))
                << "CZ on atoms " << g.sites[0] << ", " << g.sites[1];
        }
    }
    // Full state, un-permuted through final_atom, matches up to a global phase.
    Vector want = simulate(native);
    Vector got = simulate(r.circuit);
    std::size_t n = native.n_qubits;
    Vector unperm = Vector::Zero(want.size());
    for (Eigen::Index x = 0; x < got.size(); x++) {
        std::size_t logical = 0;
        for (std::size_t q = 0; q < n; q++) {
            std::size_t atom = r.final_atom[q];
            std::size_t bit = (static_cast<std::size_t>(x) >> (n - 1 - atom)) & 1;
            logical |= bit << (n - 1 - q);
        }
        unperm(static_cast<Eigen::Index>(logical)) = got(x);
    }
    cplx overlap = unperm.dot(want);
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10);
    // Readout list already points at the final atoms.
    auto d_want = ideal_distribution(native);
    auto d_got = ideal_distribution(r.circuit);
    ASSERT_EQ(d_want.size(), d_got.size());
    for (std::size_t i = 0; i < d_want.size(); i++) {
        EXPECT_NEAR(d_want[i], d_got[i], 1e-12);
    }
}

}  // namespace

TEST(Grid, MostSquare) {
    auto g = most_square_grid(5);
    EXPECT_EQ(g.cols, 3u);
    EXPECT_EQ(g.rows, 2u);
    g = most_square_grid(9);
    EXPECT_EQ(g.cols, 3u);
    EXPECT_EQ(g.rows, 3u);
    g = most_square_grid(2);
    EXPECT_EQ(g.rows * g.cols >= 2, true);
    auto p = default_placement(5, GridShape{2, 3});
    EXPECT_EQ(p, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
    EXPECT_THROW(default_placement(7, GridShape{2, 3}), CapacityError);
}

TEST(Topology, JsonForms) {
    using nlohmann::json;
    EXPECT_EQ(topology_from_json("all_to_all"), Topology::all_to_all());
    EXPECT_EQ(topology_from_json("grid"), Topology::grid());
    EXPECT_EQ(topology_from_json(json{{"grid", {2, 3}}}), Topology::grid(2, 3));
    EXPECT_EQ(topology_from_json(json{{"grid", "auto"}}), Topology::grid());
    EXPECT_EQ(Topology::grid(2, 3).name(), "grid2x3");
    EXPECT_EQ(topology_from_json(topology_to_json(Topology::grid(3, 4))), Topology::grid(3, 4));
    EXPECT_ANY_THROW(topology_from_json("ring"));
}

TEST(Route, AllToAllIsIdentity) {
    std::mt19937_64 rng(1);
    Circuit c = random_native(4, 30, rng);
    auto r = route(c, Topology::all_to_all());
    EXPECT_EQ(r.circuit.ops, c.ops);
    EXPECT_EQ(r.swaps, 0u);
    for (std::size_t q = 0; q < 4; q++) {
        EXPECT_EQ(r.final_atom[q], q);
    }
}

TEST(Route, RandomCircuitsOnGrids) {
    std::mt19937_64 rng(77);
    for (std::size_t n : {3u, 4u, 5u, 6u, 7u}) {
        for (int trial = 0; trial < 4; trial++) {
            Circuit c = random_native(n, 40, rng);
            auto r = route(c, Topology::grid());
            expect_routed_ok(c, r);
            EXPECT_GE(count_gates(r.circuit).cz, count_gates(c).cz);
        }
    }
}

TEST(Route, ExplicitGridShape) {
    std::mt19937_64 rng(3);
    Circuit c = random_native(4, 30, rng);
    auto r = route(c, Topology::grid(1, 4));
    EXPECT_EQ(r.grid.rows, 1u);
    EXPECT_EQ(r.grid.cols, 4u);
    expect_routed_ok(c, r);
    EXPECT_THROW(route(c, Topology::grid(1, 3)), CapacityError);
}

TEST(Route, RejectsAbstractCircuits) {
    Circuit c;
    c.n_qubits = 2;
    c.ops = {{GateKind::kCX, {0, 1}, {}}};
    EXPECT_THROW(route(c, Topology::grid()), ArgumentError);
}

TEST(Route, HiddenShiftPairsNeedNoSwaps) {
    for (std::uint64_t shift = 1; shift < 16; shift++) {
        BenchmarkSpec s;
        s.kind = BenchmarkKind::kHiddenShift;
        s.width = 4;
        s.instance = shift;
        auto native = lower_to_native(generate(s).circuit);
        auto r = route(native, Topology::grid());
        EXPECT_EQ(r.swaps, 0u) << "shift " << shift;
        EXPECT_EQ(r.circuit.ops, native.ops);
    }
}

TEST(Route, GridNeverUsesFewerCz) {
    for (std::size_t w = 3; w <= 5; w++) {
        BenchmarkSpec s;
        s.kind = BenchmarkKind::kQftMethod2;
        s.width = w;
        s.instance = 3;
        auto native = lower_to_native(generate(s).circuit);
        auto ata = route(native, Topology::all_to_all());
        auto nn = route(native, Topology::grid());
        EXPECT_GE(count_gates(nn.circuit).cz, count_gates(ata.circuit).cz);
        expect_routed_ok(native, nn);
    }
}

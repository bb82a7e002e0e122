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
#include <set>

#include "nasim/circuit.hpp"
#include "nasim/errors.hpp"
#include "nasim/statevector.hpp"
#include "qubit_ref.hpp"

using namespace nasim;
using qref::Mat;

namespace {

const qref::cplx kI(0, 1);

Mat diag(std::vector<double> phases) {
    Mat m = Mat::Zero(static_cast<Eigen::Index>(phases.size()), static_cast<Eigen::Index>(phases.size()));
    for (std::size_t i = 0; i < phases.size(); i++) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = std::exp(kI * phases[i]);
    }
    return m;
}

Mat ry(double t) {
    return qref::m2(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2));
}

// Controlled-u with `k` controls (controls most significant).
Mat controlled(int k, const Mat &u) {
    int dim = 2 << k;
    Mat m = Mat::Identity(dim, dim);
    m.block(dim - 2, dim - 2, 2, 2) = u;
    return m;
}

// Textbook matrix of an abstract gate on its own sites.
Mat reference_matrix(const Gate &g) {
    double r2 = 1 / std::sqrt(2.0);
    Mat x = qref::m2(0, 1, 1, 0);
    switch (g.kind) {
        case GateKind::kH:
            return qref::m2(r2, r2, r2, -r2);
        case GateKind::kX:
            return x;
        case GateKind::kY:
            return qref::m2(0, -kI, kI, 0);
        case GateKind::kZ:
            return qref::m2(1, 0, 0, -1);
        case GateKind::kS:
            return qref::m2(1, 0, 0, kI);
        case GateKind::kSdg:
            return qref::m2(1, 0, 0, -kI);
        case GateKind::kT:
            return diag({0, qref::kPi / 4});
        case GateKind::kTdg:
            return diag({0, -qref::kPi / 4});
        case GateKind::kRx:
            return qref::r_phi(0, g.params[0]);
        case GateKind::kRy:
            return ry(g.params[0]);
        case GateKind::kRz:
            return qref::rz(g.params[0]);
        case GateKind::kCX:
            return controlled(1, x);
        case GateKind::kCZ:
            return diag({0, 0, 0, qref::kPi});
        case GateKind::kCP:
            return diag({0, 0, 0, g.params[0]});
        case GateKind::kSwap: {
            Mat m = Mat::Zero(4, 4);
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
            return m;
        }
        case GateKind::kCCX:
            return controlled(2, x);
        case GateKind::kMCZ: {
            std::vector<double> ph(std::size_t{1} << g.sites.size(), 0.0);
            ph.back() = qref::kPi;
            return diag(ph);
        }
        case GateKind::kMCRy:
            return controlled(static_cast<int>(g.sites.size()) - 1, ry(g.params[0]));
        case GateKind::kDiagonal:
            return diag(g.params);
        default:
            throw std::runtime_error("no reference");
    }
}

Mat abstract_unitary(const Circuit &c) {
    int n = static_cast<int>(c.n_qubits);
    Mat u = Mat::Identity(1 << n, 1 << n);
    for (const auto &g : c.ops) {
        u = qref::embed(reference_matrix(g), g.sites, n) * u;
    }
    return u;
}

std::vector<Gate> one_of_each(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> a(-kPi, kPi);
    return {
        {GateKind::kH, {1}, {}},
        {GateKind::kX, {0}, {}},
        {GateKind::kY, {2}, {}},
        {GateKind::kZ, {3}, {}},
        {GateKind::kS, {1}, {}},
        {GateKind::kSdg, {2}, {}},
        {GateKind::kT, {0}, {}},
        {GateKind::kTdg, {3}, {}},
        {GateKind::kRx, {2}, {a(rng)}},
        {GateKind::kRy, {1}, {a(rng)}},
        {GateKind::kRz, {0}, {a(rng)}},
        {GateKind::kCX, {3, 1}, {}},
        {GateKind::kCZ, {0, 2}, {}},
        {GateKind::kCP, {2, 0}, {a(rng)}},
        {GateKind::kSwap, {1, 3}, {}},
        {GateKind::kCCX, {2, 0, 3}, {}},
        {GateKind::kMCZ, {3, 1, 0}, {}},
        {GateKind::kMCRy, {1, 3, 2}, {a(rng)}},
        {GateKind::kDiagonal, {0, 3}, {a(rng), a(rng), a(rng), a(rng)}},
    };
}

}  // namespace

TEST(Lowering, LocalRotationIdentity) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> a(-2 * kPi, 2 * kPi);
    double worst = 0;
    for (int trial = 0; trial < 100; trial++) {
        double phi = a(rng), theta = a(rng);
        Circuit c;
        c.n_qubits = 2;
        for (const auto &g : decompose_local_rotation(phi, theta, 0)) {
            c.ops.push_back(g);
        }
        Mat got = qref::native_unitary(c);
        Mat want = qref::embed(qref::r_phi(phi, theta), {0}, 2);
        double err = (got - want).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        EXPECT_LT(err, 1e-12) << "phi=" << phi << " theta=" << theta;
    }
    RecordProperty("worst_error", std::to_string(worst));
}

TEST(Lowering, SpectatorsSeeNoRotation) {
    auto pulses = decompose_local_rotation(0.7, 1.9, 2);
    EXPECT_EQ(pulses[0].kind, GateKind::kGlobalRotation);
    EXPECT_EQ(pulses[1].kind, GateKind::kRz);
    EXPECT_EQ(pulses[1].sites, std::vector<int>{2});
    Mat product = qref::r_phi(pulses[2].params[0], pulses[2].params[1]) *
                  qref::r_phi(pulses[0].params[0], pulses[0].params[1]);
    EXPECT_LT((product - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Lowering, EveryGateKindUpToGlobalPhase) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; trial++) {
        for (const auto &g : one_of_each(rng)) {
            Circuit c;
            c.n_qubits = 4;
            c.ops = {g};
            Circuit native = lower_to_native(c);
            ASSERT_TRUE(native.is_native());
            double err = qref::phase_distance(qref::native_unitary(native), abstract_unitary(c));
            EXPECT_LT(err, 1e-10) << gate_name(g.kind);
        }
    }
}

TEST(Lowering, MixedCircuitUpToGlobalPhase) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; trial++) {
        auto gates = one_of_each(rng);
        std::shuffle(gates.begin(), gates.end(), rng);
        Circuit c;
        c.n_qubits = 4;
        c.ops = gates;
        Circuit native = lower_to_native(c);
        EXPECT_LT(qref::phase_distance(qref::native_unitary(native), abstract_unitary(c)), 1e-9);
        // The library's own unitary builder agrees with the reference matrices.
        EXPECT_LT(qref::phase_distance(circuit_unitary(c), abstract_unitary(c)), 1e-10);
    }
}

TEST(Lowering, NativeGatesPassThrough) {
    Circuit c;
    c.n_qubits = 2;
    c.ops = {Gate::cz(0, 1)};
    auto native = lower_to_native(c);
    ASSERT_EQ(native.ops.size(), 1u);
    EXPECT_EQ(native.ops[0], Gate::cz(0, 1));
}

TEST(Optimize, PreservesUnitaryAndShrinks) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> a(-kPi, kPi);
    for (int trial = 0; trial < 20; trial++) {
        Circuit c;
        c.n_qubits = 3;
        for (int g = 0; g < 40; g++) {
            int k = static_cast<int>(rng() % 4);
            int q = static_cast<int>(rng() % 3);
            if (k == 0) {
                c.ops.push_back(Gate::global_rotation(rng() % 2 ? 0.0 : kPi / 2, a(rng)));
            } else if (k == 1) {
                c.ops.push_back(Gate::rz(q, a(rng)));
            } else {
                c.ops.push_back(Gate::cz(q, (q + 1) % 3));
            }
        }
        Circuit opt = optimize_native(c);
        EXPECT_LE(opt.ops.size(), c.ops.size());
        EXPECT_LT(qref::phase_distance(qref::native_unitary(opt), qref::native_unitary(c)), 1e-10);
    }
    Circuit abstract;
    abstract.n_qubits = 1;
    abstract.ops = {{GateKind::kH, {0}, {}}};
    EXPECT_THROW(optimize_native(abstract), ArgumentError);
}

TEST(Optimize, CancelsAndMerges) {
    Circuit c;
    c.n_qubits = 2;
    // CZ commutes with Rz, so the pair cancels and the Rz runs fold together.
    c.ops = {Gate::cz(0, 1), Gate::rz(0, 0.5), Gate::cz(1, 0), Gate::rz(0, 0.25)};
    auto counts = count_gates(optimize_native(c));
    EXPECT_EQ(counts.cz, 0u);
    EXPECT_EQ(counts.rz, 1u);
    EXPECT_EQ(counts.global, 0u);

    c.ops = {Gate::global_rotation(0.0, 0.3), Gate::global_rotation(0.0, 0.4)};
    counts = count_gates(optimize_native(c));
    EXPECT_EQ(counts.global, 1u);
    EXPECT_EQ(counts.rz, 0u);

    c.ops = {Gate::cz(0, 1), Gate::rz(0, 0.5), Gate::cz(1, 0), Gate::rz(0, 0.25),
             Gate::global_rotation(0.0, 0.3), Gate::global_rotation(0.0, 0.4)};
    Circuit opt = optimize_native(c);
    counts = count_gates(opt);
    EXPECT_EQ(counts.cz, 0u);
    EXPECT_EQ(counts.global, 1u);
    EXPECT_LT(qref::phase_distance(qref::native_unitary(opt), qref::native_unitary(c)), 1e-10);
}

TEST(Schedule, LayersAreValid) {
    std::mt19937_64 rng(8);
    Circuit c;
    c.n_qubits = 5;
    std::uniform_real_distribution<double> a(0.1, kPi);
    for (int g = 0; g < 80; g++) {
        int k = static_cast<int>(rng() % 5);
        int q = static_cast<int>(rng() % 5);
        if (k == 0) {
            c.ops.push_back(Gate::global_rotation(0.0, a(rng)));
        } else if (k <= 2) {
            c.ops.push_back(Gate::rz(q, a(rng)));
        } else {
            c.ops.push_back(Gate::cz(q, (q + 1 + static_cast<int>(rng() % 4)) % 5));
        }
    }
    NoiseParams p;
    Schedule s = schedule_layers(c, p);
    std::vector<int> layer_of(c.ops.size(), -1);
    for (std::size_t l = 0; l < s.layers.size(); l++) {
        const auto &layer = s.layers[l];
        ASSERT_FALSE(layer.ops.empty());
        std::set<int> used;
        double longest = 0;
        for (auto i : layer.ops) {
            ASSERT_EQ(layer_of[i], -1) << "op scheduled twice";
            layer_of[i] = static_cast<int>(l);
            const Gate &g = c.ops[i];
            if (g.kind == GateKind::kGlobalRotation) {
                EXPECT_EQ(layer.ops.size(), 1u);
                longest = std::max(longest, p.dur_uw_pi * std::abs(g.params[1]) / kPi);
            } else {
                for (int q : g.sites) {
                    EXPECT_TRUE(used.insert(q).second) << "site reused within a layer";
                }
                longest = std::max(longest, g.kind == GateKind::kCZ ? p.dur_cz
                                                                   : p.dur_rz_pi * std::abs(g.params[0]) / kPi);
            }
        }
        EXPECT_DOUBLE_EQ(layer.duration, longest);
    }
    // Every op appears and dependencies on shared sites keep their order.
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        ASSERT_GE(layer_of[i], 0);
        for (std::size_t j = 0; j < i; j++) {
            bool shared = c.ops[i].kind == GateKind::kGlobalRotation || c.ops[j].kind == GateKind::kGlobalRotation;
            for (int a1 : c.ops[i].sites) {
                for (int b1 : c.ops[j].sites) {
                    shared = shared || a1 == b1;
                }
            }
            if (shared) {
                EXPECT_LT(layer_of[j], layer_of[i]);
            }
        }
    }
    EXPECT_EQ(s.depth(), s.layers.size());
}

TEST(Schedule, ParallelOpsShareLayer) {
    Circuit c;
    c.n_qubits = 4;
    c.ops = {Gate::cz(0, 1), Gate::cz(2, 3), Gate::rz(0, 0.1), Gate::rz(3, 0.1)};
    EXPECT_EQ(schedule_layers(c).depth(), 2u);
}

TEST(CircuitJson, RoundTrip) {
    std::mt19937_64 rng(1);
    Circuit c;
    c.n_qubits = 4;
    c.ops = one_of_each(rng);
    c.readout = {3, 1};
    c.name = "mixed";
    c.metadata["instance"] = 5;
    Circuit back = circuit_from_json(circuit_to_json(c));
    EXPECT_EQ(back.n_qubits, c.n_qubits);
    EXPECT_EQ(back.ops, c.ops);
    EXPECT_EQ(back.readout, c.readout);
    EXPECT_EQ(back.name, c.name);
    EXPECT_EQ(back.metadata, c.metadata);
}

TEST(CircuitJson, ParseErrors) {
    using nlohmann::json;
    EXPECT_THROW(circuit_from_json(json::array()), ParseError);
    EXPECT_THROW(circuit_from_json(json{{"n_qubits", 2}}), ParseError);
    EXPECT_THROW(ops_from_json(json{{{"gate", "frobnicate"}, {"sites", {0}}}}), ParseError);
    EXPECT_THROW(ops_from_json(json{{{"gate", "h"}, {"sites", "zero"}}}), ParseError);
    try {
        ops_from_json(json::parse(R"([{"gate": "h", "sites": [0]}, {"gate": "bogus"}])"));
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
    }
}

TEST(CircuitValidate, NamesTheProblem) {
    Circuit c;
    c.n_qubits = 2;
    c.ops = {{GateKind::kCX, {0, 0}, {}}};
    EXPECT_THROW(c.validate(), ValidationError);
    c.ops = {{GateKind::kH, {5}, {}}};
    EXPECT_THROW(c.validate(), ValidationError);
    c.ops = {{GateKind::kRz, {0}, {std::nan("")}}};
    EXPECT_THROW(c.validate(), ValidationError);
    c.ops = {{GateKind::kRz, {0}, {}}};
    EXPECT_THROW(c.validate(), ValidationError);
    c.ops = {};
    c.readout = {1, 1};
    EXPECT_THROW(c.validate(), ValidationError);
    c.readout = {};
    c.n_qubits = 0;
    EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Misc, WrapAngleAndCounts) {
    EXPECT_NEAR(wrap_angle(3 * kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_angle(-kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_angle(0.5 - 4 * kPi), 0.5, 1e-12);
    Circuit c;
    c.n_qubits = 2;
    c.ops = {Gate::cz(0, 1), Gate::rz(0, 1.0), Gate::global_rotation(0, 1), {GateKind::kH, {0}, {}}};
    auto n = count_gates(c);
    EXPECT_EQ(n.cz, 1u);
    EXPECT_EQ(n.rz, 1u);
    EXPECT_EQ(n.global, 1u);
    EXPECT_EQ(n.other, 1u);
    EXPECT_EQ(n.total(), 4u);
    EXPECT_EQ(gate_kind_from_name(gate_name(GateKind::kMCRy)), GateKind::kMCRy);
    EXPECT_FALSE(gate_kind_from_name("nope").has_value());
}

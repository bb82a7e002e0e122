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

#include "dense_oracle.hpp"
#include "noise_fixtures.hpp"
#include "nasim/errors.hpp"
#include "nasim/gatemodel.hpp"
#include "test_helpers.hpp"

using namespace nasim;

using fixtures::loud_params;
using fixtures::oracle_noise;

TEST(DenseOracle, RandomThreeSiteCircuits) {
    constexpr std::size_t n = 3;
    std::mt19937_64 rng(20230917);
    std::uniform_real_distribution<double> ang(-2 * kPi, 2 * kPi);
    double worst = 0.0;
    for (int circuit = 0; circuit < 50; circuit++) {
        NoiseParams params = loud_params(circuit % 2 == 1, circuit % 4 >= 2);
        GateModel model(params);
        oracle::Model ref(oracle_noise(params), n);

        QuquartState state(n);
        oracle::Mat rho = oracle::ground(n);
        model.apply_preparation(state);
        ref.prepare(rho);

        int n_gates = 1 + static_cast<int>(rng() % 30);
        for (int g = 0; g < n_gates; g++) {
            int kind = static_cast<int>(rng() % 3);
            std::size_t a = rng() % n;
            Gate gate;
            if (kind == 0) {
                double phi = ang(rng), theta = ang(rng);
                gate = Gate::global_rotation(phi, theta);
                ref.global(rho, phi, theta);
            } else if (kind == 1) {
                double theta = ang(rng);
                gate = Gate::rz(static_cast<int>(a), theta);
                ref.local_rz(rho, a, theta);
            } else {
                std::size_t b = (a + 1 + rng() % (n - 1)) % n;
                gate = Gate::cz(static_cast<int>(a), static_cast<int>(b));
                ref.cz(rho, a, b);
            }
            model.apply(state, gate);
            model.apply_decoherence(state, model.duration(gate));
        }
        double err = testutil::max_abs_diff(testutil::dense_of(state), rho);
        worst = std::max(worst, err);
        EXPECT_LT(err, 1e-10) << "circuit " << circuit << " with " << n_gates << " gates";
        EXPECT_NEAR(state.trace(), 1.0, 1e-12);
    }
    RecordProperty("worst_elementwise_error", std::to_string(worst));
}

TEST(DenseOracle, FreeFunctionsMatchModel) {
    NoiseParams params = loud_params(false, false);
    oracle::Model ref(oracle_noise(params), 2);
    QuquartState state(2);
    oracle::Mat rho = oracle::ground(2);
    apply_preparation(state, params);
    ref.prepare(rho);
    apply_noisy_global_rotation(state, 0.3, 1.7, params);
    ref.global(rho, 0.3, 1.7);
    apply_noisy_local_rz(state, 1, -2.2, params);
    ref.local_rz(rho, 1, -2.2);
    apply_noisy_cz(state, 1, 0, params);
    ref.cz(rho, 1, 0);
    EXPECT_LT(testutil::max_abs_diff(testutil::dense_of(state), rho), 1e-12);
    EXPECT_THROW(apply_noisy_cz(state, 1, 1, params), ArgumentError);
}

TEST(GateModel, NoiselessGatesAreUnitary) {
    GateModel model(NoiseParams::noiseless());
    QuquartState s(2);
    model.apply(s, Gate::global_rotation(0.0, kPi / 2));
    model.apply(s, Gate::cz(0, 1));
    model.apply(s, Gate::global_rotation(0.0, -kPi / 2));
    // (Rx(-pi/2) x Rx(-pi/2)) CZ (Rx(pi/2) x Rx(pi/2)) |00> is pure.
    auto d = testutil::dense_of(s);
    EXPECT_NEAR((d * d).trace().real(), 1.0, 1e-12);
}

TEST(GateModel, Durations) {
    NoiseParams p;
    GateModel m(p);
    EXPECT_DOUBLE_EQ(m.duration(Gate::global_rotation(0.1, kPi)), p.dur_uw_pi);
    EXPECT_DOUBLE_EQ(m.duration(Gate::global_rotation(0.1, -kPi / 2)), p.dur_uw_pi / 2);
    EXPECT_DOUBLE_EQ(m.duration(Gate::rz(0, kPi / 4)), p.dur_rz_pi / 4);
    EXPECT_DOUBLE_EQ(m.duration(Gate::cz(0, 1)), p.dur_cz);
    EXPECT_THROW(m.duration(Gate{GateKind::kH, {0}, {}}), ArgumentError);
    QuquartState s(1);
    EXPECT_THROW(m.apply(s, Gate{GateKind::kX, {0}, {}}), ArgumentError);
}

TEST(GateModel, InvalidParamsRejected) {
    NoiseParams p;
    p.cz_phaseflip = 1.5;
    EXPECT_THROW(GateModel{p}, ValidationError);
}

TEST(GateModel, CzSplitHalvesPerSiteLoss) {
    // With only dark loss on, |11> loses population 1 - (1 - p/2)^2 per gate
    // in the per-gate split and 1 - (1 - p)^2 in the per-site split.
    NoiseParams p = NoiseParams::noiseless();
    p.cz_loss_dark = 0.2;
    for (bool per_site : {false, true}) {
        p.cz_error_split = per_site ? CzErrorSplit::kPerSite : CzErrorSplit::kPerGate;
        GateModel m(p);
        QuquartState s(2);
        m.apply(s, Gate::global_rotation(0.0, kPi));
        m.apply(s, Gate::cz(0, 1));
        double share = per_site ? 0.2 : 0.1;
        auto q = ququart_distribution(s);
        EXPECT_NEAR(q.prob("1 1"), (1 - share) * (1 - share), 1e-12);
        EXPECT_NEAR(q.prob("l0 l0"), share * share, 1e-12);
    }
}

TEST(GateModel, UnitaryHelpers) {
    Matrix u = global_rotation_unitary(0.4, 1.3);
    EXPECT_LT((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((u - oracle::rot(0.4, 1.3)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((rz_unitary(0.9) - oracle::rz(0.9)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((cz_unitary() - oracle::cphase(kPi)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((cz_phase_unitary(0.2) - oracle::cphase(0.2)).cwiseAbs().maxCoeff(), 1e-15);
}

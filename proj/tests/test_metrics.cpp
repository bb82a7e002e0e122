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

#include <cmath>
#include <random>

#include "nasim/errors.hpp"
#include "nasim/gatemodel.hpp"
#include "nasim/metrics.hpp"
#include "test_helpers.hpp"

using namespace nasim;

namespace {

Distribution random_distribution(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(std::size_t{1} << n);
    double sum = 0;
    for (auto &x : p) {
        x = u(rng);
        sum += x;
    }
    for (auto &x : p) {
        x /= sum;
    }
    return Distribution(n, p);
}

Matrix random_density(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix a(dim, dim);
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            a(i, j) = cplx(g(rng), g(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

}  // namespace

TEST(ClassicalFidelity, KnownCases) {
    auto ideal = Distribution::delta("101");
    auto same = classical_fidelity(ideal, ideal);
    EXPECT_DOUBLE_EQ(same.f_s, 1.0);
    EXPECT_DOUBLE_EQ(same.f_n, 1.0);
    EXPECT_DOUBLE_EQ(same.f, 1.0);

    auto uniform = classical_fidelity(ideal, Distribution::uniform(3));
    EXPECT_NEAR(uniform.f_s, 1.0 / 8.0, 1e-15);
    EXPECT_NEAR(uniform.f_n, 0.0, 1e-15);

    auto wrong = classical_fidelity(ideal, Distribution::delta("000"));
    EXPECT_DOUBLE_EQ(wrong.f_s, 0.0);
    EXPECT_NEAR(wrong.f_n, -1.0 / 7.0, 1e-15);
    EXPECT_DOUBLE_EQ(wrong.f, 0.0);

    // Hand-computed: ideal (1/2, 1/2, 0, 0), output (1/4, 1/4, 1/4, 1/4).
    Distribution a(2, {0.5, 0.5, 0.0, 0.0});
    auto r = classical_fidelity(a, Distribution::uniform(2));
    EXPECT_NEAR(r.f_s, 0.5, 1e-15);
    EXPECT_NEAR(r.f_n, 0.0, 1e-15);
    Distribution b(2, {0.5, 0.25, 0.25, 0.0});
    double fs = std::pow(std::sqrt(0.25) + std::sqrt(0.125), 2);
    auto rb = classical_fidelity(a, b);
    EXPECT_NEAR(rb.f_s, fs, 1e-15);
    EXPECT_NEAR(rb.f_n, (fs - 0.5) / 0.5, 1e-14);
}

TEST(ClassicalFidelity, DegenerateAndMismatch) {
    auto d = classical_fidelity(Distribution::uniform(2), Distribution::delta("01"));
    EXPECT_TRUE(d.degenerate);
    EXPECT_TRUE(std::isnan(d.f));
    EXPECT_NEAR(d.f_s, 0.25, 1e-15);
    EXPECT_THROW(classical_fidelity(Distribution::uniform(2), Distribution::uniform(3)), ArgumentError);
}

TEST(ClassicalFidelity, BoundsOnRandomPairs) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; i++) {
        auto p = random_distribution(3, rng);
        auto q = random_distribution(3, rng);
        auto r = classical_fidelity(p, q);
        EXPECT_GE(r.f_s, 0.0);
        EXPECT_LE(r.f_s, 1.0 + 1e-12);
        EXPECT_LE(r.f_n, 1.0 + 1e-12);
        EXPECT_GE(r.f, 0.0);
        EXPECT_NEAR(r.f_s, classical_fidelity(q, p).f_s, 1e-14);
    }
}

TEST(QuantumFidelity, PureAndCommuting) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; i++) {
        Vector a = haar_state(4, rng), b = haar_state(4, rng);
        double want = std::norm(a.dot(b));
        EXPECT_NEAR(quantum_fidelity(a * a.adjoint(), b * b.adjoint()), want, 1e-9);
        Matrix r = random_density(4, rng), s = random_density(4, rng);
        EXPECT_NEAR(quantum_fidelity(r, s), quantum_fidelity(s, r), 1e-9);
        EXPECT_NEAR(quantum_fidelity(r, r), 1.0, 1e-9);
        EXPECT_NEAR(quantum_fidelity(a * a.adjoint(), r), (a.adjoint() * r * a)(0, 0).real(), 1e-9);
    }
    Matrix p = Matrix::Zero(2, 2), q = Matrix::Zero(2, 2);
    p(0, 0) = 0.3;
    p(1, 1) = 0.7;
    q(0, 0) = 0.6;
    q(1, 1) = 0.4;
    EXPECT_NEAR(quantum_fidelity(p, q), std::pow(std::sqrt(0.18) + std::sqrt(0.28), 2), 1e-12);
}

TEST(QuantumFidelity, RejectsInvalidMatrices) {
    Matrix ok = Matrix::Identity(2, 2) / 2.0;
    Matrix bad_trace = Matrix::Identity(2, 2);
    Matrix non_hermitian = ok;
    non_hermitian(0, 1) = 0.3;
    Matrix negative = Matrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    EXPECT_THROW(quantum_fidelity(bad_trace, ok), ValidationError);
    EXPECT_THROW(quantum_fidelity(ok, non_hermitian), ValidationError);
    EXPECT_THROW(quantum_fidelity(negative, ok), ValidationError);
    EXPECT_THROW(quantum_fidelity(ok, Matrix::Identity(4, 4) / 4.0), ValidationError);
}

TEST(MeasurementError, MatchesExplicitConvolution) {
    std::mt19937_64 rng(5);
    for (double p : {0.0, 0.0053, 0.2, 0.5, 1.0}) {
        auto d = random_distribution(4, rng);
        auto got = apply_measurement_error(d, p);
        for (std::size_t y = 0; y < 16; y++) {
            double want = 0;
            for (std::size_t x = 0; x < 16; x++) {
                int flips = __builtin_popcountll(x ^ y);
                want += d[x] * std::pow(p, flips) * std::pow(1 - p, 4 - flips);
            }
            EXPECT_NEAR(got[y], want, 1e-14) << "p=" << p;
        }
    }
    EXPECT_THROW(apply_measurement_error(Distribution::uniform(1), 1.5), ArgumentError);
}

TEST(Readout, LossLevelsReadAsDarkAndBright) {
    // Sites: (l0, 1) with 0.6 and (l1, 0) with 0.4.
    std::vector<double> probs(16, 0.0);
    probs[2 * 4 + 1] = 0.6;
    probs[3 * 4 + 0] = 0.4;
    QuquartDistribution q(2, probs);
    EXPECT_NEAR(q.prob("l0 1"), 0.6, 1e-15);
    auto d = reduce_readout(q);
    EXPECT_NEAR(d.prob("01"), 0.6, 1e-15);
    EXPECT_NEAR(d.prob("10"), 0.4, 1e-15);
}

TEST(Dense, AgreesWithElementQueries) {
    NoiseParams p;
    p.cz_loss_dark = 0.3;
    GateModel m(p);
    QuquartState s(3);
    m.apply(s, Gate::global_rotation(0.2, 1.4));
    m.apply(s, Gate::cz(0, 2));
    m.apply_decoherence(s, 1e-3);
    EXPECT_LT(testutil::max_abs_diff(to_dense(s), testutil::dense_of(s)), 1e-15);
    EXPECT_THROW(to_dense(QuquartState(7)), CapacityError);
}

TEST(FidelityWithPure, MatchesDenseOverlap) {
    std::mt19937_64 rng(8);
    Vector psi = haar_state(8, rng);
    auto s = QuquartState::from_pure(std::span<const cplx>(psi.data(), psi.size()));
    EXPECT_NEAR(fidelity_with_pure(s, psi), 1.0, 1e-12);
    Vector phi = haar_state(8, rng);
    EXPECT_NEAR(fidelity_with_pure(s, phi), std::norm(phi.dot(psi)), 1e-12);
    EXPECT_THROW(fidelity_with_pure(s, haar_state(4, rng)), ArgumentError);
}

TEST(HaarState, NormalizedAndUniform) {
    std::mt19937_64 rng(9);
    double mean = 0;
    const int n = 20000;
    for (int i = 0; i < n; i++) {
        Vector v = haar_state(4, rng);
        EXPECT_NEAR(v.norm(), 1.0, 1e-12);
        mean += std::norm(v(0));
    }
    EXPECT_NEAR(mean / n, 0.25, 0.01);
}

TEST(AverageGateFidelity, NoiselessIsOne) {
    auto p = NoiseParams::noiseless();
    for (const Gate &g : {Gate::global_rotation(0.3, kPi), Gate::rz(0, kPi), Gate::cz(0, 1)}) {
        auto f = average_gate_fidelity(g, p, 50, 1);
        EXPECT_NEAR(f.mean, 1.0, 1e-12);
        EXPECT_NEAR(f.std_error, 0.0, 1e-12);
    }
}

TEST(AverageGateFidelity, DepolarizingClosedForm) {
    // Qubit depolarizing channel: average fidelity 1 - 2p/3.
    auto p = NoiseParams::noiseless();
    p.uw_depol_per_pi = 0.09;
    auto f = average_gate_fidelity(Gate::global_rotation(0.0, kPi), p, 4000, 3);
    EXPECT_NEAR(f.mean, 1 - 2 * 0.09 / 3, 4 * f.std_error + 1e-12);
}

TEST(AverageGateFidelity, DecreasesWithErrorRate) {
    NoiseParams p;
    double prev = 1.0;
    for (double rate : {0.0, 0.01, 0.03, 0.1}) {
        p.cz_phaseflip = rate;
        double f = average_gate_fidelity(Gate::cz(0, 1), p, 200, 4).mean;
        EXPECT_LT(f, prev);
        prev = f;
    }
    double prev_t = 1.0;
    for (double dur : {1e-7, 1e-5, 1e-4}) {
        p.dur_rz_pi = dur;
        double f = average_gate_fidelity(Gate::rz(0, kPi), p, 200, 4).mean;
        EXPECT_LT(f, prev_t);
        prev_t = f;
    }
    EXPECT_THROW(average_gate_fidelity(Gate{GateKind::kH, {0}, {}}, p, 10, 0), ArgumentError);
    EXPECT_THROW(average_gate_fidelity(Gate::cz(0, 1), p, 0, 0), ArgumentError);
}

TEST(Calibration, HitsReachableTargetsAndFlagsTheRest) {
    NoiseParams p;
    CalibrationTargets t;
    auto r = calibrate_gate_durations(p, t, 200, 11);
    EXPECT_TRUE(r.global_reached);
    EXPECT_TRUE(r.rz_reached);
    EXPECT_NEAR(r.global_pi.mean, t.global_pi, 2e-5);
    EXPECT_NEAR(r.rz_pi.mean, t.rz_pi, 2e-5);
    // The CZ error channels alone already cost more than 1 - 0.954.
    EXPECT_FALSE(r.cz_reached);
    EXPECT_DOUBLE_EQ(r.params.dur_cz, p.dur_cz);
    EXPECT_LT(r.cz.mean, t.cz);
}

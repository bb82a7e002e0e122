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
#include <random>

#include "nasim/channels.hpp"
#include "nasim/distribution.hpp"
#include "nasim/gate.hpp"
#include "nasim/state.hpp"
#include "nasim/types.hpp"

namespace nasim {

struct ClassicalFidelity {
    double f_s = 0.0;  // squared Bhattacharyya overlap
    double f_n = 0.0;  // normalized so that a uniform output scores 0
    double f = 0.0;    // max(f_n, 0)
    // The ideal distribution is uniform, so f_n is undefined; f_n and f are NaN.
    bool degenerate = false;
};

// Throws ArgumentError on a bit-count mismatch.
ClassicalFidelity classical_fidelity(const Distribution &ideal, const Distribution &output);

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 for dense density matrices. Throws
// ValidationError if either input is not a unit-trace PSD Hermitian matrix.
double quantum_fidelity(const Matrix &rho, const Matrix &sigma);
// <psi| rho |psi> for a pure computational state given by 2^n qubit amplitudes.
double fidelity_with_pure(const QuquartState &rho, const Vector &psi);
// Full 4^n x 4^n matrix; for small registers only.
Matrix to_dense(const QuquartState &state);

// Reads l0 as 0 and l1 as 1, merging colliding strings.
Distribution reduce_readout(const QuquartDistribution &q);
// Flips each bit independently with probability p (exact convolution).
Distribution apply_measurement_error(const Distribution &d, double p);

// Haar-random pure state of the given dimension.
Vector haar_state(std::size_t dim, std::mt19937_64 &rng);

struct FidelityEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

// Haar-averaged fidelity of one noisy native gate (including the decoherence of
// its duration) against the ideal gate. Global rotations and Rz act on one
// qubit, CZ on two; site indices in `native` are ignored.
FidelityEstimate average_gate_fidelity(const Gate &native, const NoiseParams &params, std::size_t n_samples,
                                       std::uint64_t seed);

struct CalibrationTargets {
    double global_pi = 0.9995;
    double rz_pi = 0.995;
    double cz = 0.954;
};

struct CalibrationResult {
    NoiseParams params;
    FidelityEstimate global_pi;
    FidelityEstimate rz_pi;
    FidelityEstimate cz;
    // False when the target is above the zero-duration fidelity; the duration is
    // then left at its input value.
    bool global_reached = true;
    bool rz_reached = true;
    bool cz_reached = true;
};

// Bisects dur_uw_pi, dur_rz_pi and dur_cz so the Haar-averaged fidelities of a
// global pi rotation, a local Rz(pi) and a CZ meet the targets.
CalibrationResult calibrate_gate_durations(const NoiseParams &params, const CalibrationTargets &targets,
                                           std::size_t n_samples, std::uint64_t seed);

}  // namespace nasim

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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nasim/types.hpp"

namespace nasim {

// How the CZ conditional-phase miscalibration is modeled.
enum class CzPhaseModel {
    // Deterministic diag(1, 1, 1, exp(i * cz_phaseshift)) on the computational block.
    kCoherent,
    // Z⊗Z flip with probability sin^2(cz_phaseshift / 2).
    kStochasticZZ,
};

// How the CZ channel probabilities are distributed over the two sites.
enum class CzErrorSplit {
    // Each probability is the per-gate total; each site receives half of it.
    kPerGate,
    // Each site receives the full probability.
    kPerSite,
};

// Physical noise parameters of the processor. Probabilities are dimensionless,
// times and durations are in seconds, the CZ phase shift is in radians.
struct NoiseParams {
    double uw_depol_per_pi = 1.8e-6;
    double rz_phaseflip_per_pi = 3.2e-4;
    double rz_loss_dark_per_pi = 1.9e-4;
    double rz_loss_bright_per_pi = 2.7e-4;
    double rz_decay_per_pi = 2.0e-8;
    double cz_phaseflip = 3.3e-2;
    double cz_loss_dark = 1.8e-2;
    double cz_loss_bright = 2.9e-2;
    double cz_decay = 2.1e-5;
    double cz_phaseshift = -2.0e-3;
    double prep_error = 5.2e-3;
    double meas_error = 5.3e-3;
    double t1 = 10.0;
    double t2_star = 3.5e-3;
    double p0_equilibrium = 0.42;
    // Pulse durations, calibrated against the average gate fidelities
    // (see data/noise_default.json and `nasim calibrate`).
    double dur_uw_pi = 5.2e-6;
    double dur_rz_pi = 4.782e-5;
    double dur_cz = 5.0e-7;
    CzPhaseModel cz_phase_model = CzPhaseModel::kCoherent;
    CzErrorSplit cz_error_split = CzErrorSplit::kPerGate;

    // All error probabilities zero and infinite T1/T2*.
    static NoiseParams noiseless();

    void validate() const;

    bool operator==(const NoiseParams &) const = default;
};

enum class ParamKind { kProbability, kAngle, kTime, kDuration };

struct ParamInfo {
    std::string_view name;
    double NoiseParams::*member;
    ParamKind kind;
};

// Every numeric field of NoiseParams, in declaration order.
std::span<const ParamInfo> noise_param_table();
const ParamInfo &noise_param_info(std::string_view name);
double get_noise_param(const NoiseParams &p, std::string_view name);
void set_noise_param(NoiseParams &p, std::string_view name, double value);

// Flat JSON object using the field names above. Infinite times are written as "inf".
nlohmann::json noise_params_to_json(const NoiseParams &p);
// Missing fields keep their default value; unknown fields are rejected unless
// they start with '_' (used for comments/provenance).
NoiseParams noise_params_from_json(const nlohmann::json &j);

// A CPTP map given by Kraus operators of dimension 4 (one site) or 16 (two sites).
struct KrausSet {
    std::string label;
    std::vector<Matrix> operators;

    std::size_t dim() const;
    std::size_t arity() const;
    // max |(Σ A†A − I)_ij|
    double cptp_error() const;
    // Throws ValidationError if operators are empty, non-square, mixed in size,
    // not of dimension 4 or 16, or violate Σ A†A = I beyond tol.
    void validate(double tol = 1e-10) const;
};

// Generalized Pauli operators: act as the identity on both loss levels.
Matrix ququart_identity();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

enum class LossTarget { kDark, kBright };

// p = rate * |theta| / pi, clamped to [0, 1].
double scaled_probability(double rate_per_pi, double theta);

KrausSet depolarization(double p);
KrausSet phase_flip(double p);
KrausSet loss_channel(double p, LossTarget target);
KrausSet decay(double p);
KrausSet bit_flip(double p);
// Two-site Z⊗Z flip.
KrausSet correlated_phase_flip(double p);

// T1/T2* idle channel as a composition: relaxation {A, B, C} then phase flip.
struct DecoherenceChannel {
    KrausSet relaxation;
    KrausSet dephasing;
    double d1 = 1.0;
    double d2 = 1.0;
    double phi = 0.0;
};
DecoherenceChannel decoherence(double t, const NoiseParams &params);

}  // namespace nasim

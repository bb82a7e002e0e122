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

#include "nasim/channels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "nasim/errors.hpp"

namespace nasim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_probability(double p, std::string_view what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << what << ": probability " << p << " outside [0, 1]";
        throw ArgumentError(msg.str());
    }
}

Matrix diag4(cplx a, cplx b, cplx c, cplx d) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    return m;
}

constexpr std::array<ParamInfo, 18> kParams = {{
    {"uw_depol_per_pi", &NoiseParams::uw_depol_per_pi, ParamKind::kProbability},
    {"rz_phaseflip_per_pi", &NoiseParams::rz_phaseflip_per_pi, ParamKind::kProbability},
    {"rz_loss_dark_per_pi", &NoiseParams::rz_loss_dark_per_pi, ParamKind::kProbability},
    {"rz_loss_bright_per_pi", &NoiseParams::rz_loss_bright_per_pi, ParamKind::kProbability},
    {"rz_decay_per_pi", &NoiseParams::rz_decay_per_pi, ParamKind::kProbability},
    {"cz_phaseflip", &NoiseParams::cz_phaseflip, ParamKind::kProbability},
    {"cz_loss_dark", &NoiseParams::cz_loss_dark, ParamKind::kProbability},
    {"cz_loss_bright", &NoiseParams::cz_loss_bright, ParamKind::kProbability},
    {"cz_decay", &NoiseParams::cz_decay, ParamKind::kProbability},
    {"cz_phaseshift", &NoiseParams::cz_phaseshift, ParamKind::kAngle},
    {"prep_error", &NoiseParams::prep_error, ParamKind::kProbability},
    {"meas_error", &NoiseParams::meas_error, ParamKind::kProbability},
    {"t1", &NoiseParams::t1, ParamKind::kTime},
    {"t2_star", &NoiseParams::t2_star, ParamKind::kTime},
    {"p0_equilibrium", &NoiseParams::p0_equilibrium, ParamKind::kProbability},
    {"dur_uw_pi", &NoiseParams::dur_uw_pi, ParamKind::kDuration},
    {"dur_rz_pi", &NoiseParams::dur_rz_pi, ParamKind::kDuration},
    {"dur_cz", &NoiseParams::dur_cz, ParamKind::kDuration},
}};

}  // namespace

NoiseParams NoiseParams::noiseless() {
    NoiseParams p;
    for (const auto &info : kParams) {
        if (info.kind == ParamKind::kProbability && info.name != "p0_equilibrium") {
            p.*info.member = 0.0;
        }
    }
    p.cz_phaseshift = 0.0;
    p.t1 = kInf;
    p.t2_star = kInf;
    return p;
}

void NoiseParams::validate() const {
    for (const auto &info : kParams) {
        double v = this->*info.member;
        switch (info.kind) {
            case ParamKind::kProbability:
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw ValidationError(std::string(info.name) + " must be in [0, 1], got " + std::to_string(v));
                }
                break;
            case ParamKind::kAngle:
                if (!std::isfinite(v)) {
                    throw ValidationError(std::string(info.name) + " must be finite");
                }
                break;
            case ParamKind::kTime:
            case ParamKind::kDuration:
                if (!(v > 0.0)) {
                    throw ValidationError(std::string(info.name) + " must be > 0, got " + std::to_string(v));
                }
                break;
        }
    }
    if (!std::isfinite(dur_uw_pi) || !std::isfinite(dur_rz_pi) || !std::isfinite(dur_cz)) {
        throw ValidationError("gate durations must be finite");
    }
    if (t1 < t2_star) {
        throw ValidationError("t1 must be >= t2_star");
    }
}

std::span<const ParamInfo> noise_param_table() {
    return kParams;
}

const ParamInfo &noise_param_info(std::string_view name) {
    for (const auto &info : kParams) {
        if (info.name == name) {
            return info;
        }
    }
    throw ArgumentError("unknown noise parameter '" + std::string(name) + "'");
}

double get_noise_param(const NoiseParams &p, std::string_view name) {
    return p.*noise_param_info(name).member;
}

void set_noise_param(NoiseParams &p, std::string_view name, double value) {
    p.*noise_param_info(name).member = value;
}

nlohmann::json noise_params_to_json(const NoiseParams &p) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto &info : kParams) {
        double v = p.*info.member;
        if (std::isinf(v)) {
            j[std::string(info.name)] = v > 0 ? "inf" : "-inf";
        } else {
            j[std::string(info.name)] = v;
        }
    }
    j["cz_phase_model"] = p.cz_phase_model == CzPhaseModel::kCoherent ? "coherent" : "stochastic_zz";
    j["cz_error_split"] = p.cz_error_split == CzErrorSplit::kPerGate ? "per_gate" : "per_site";
    return j;
}

NoiseParams noise_params_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ParseError("noise parameters must be a JSON object");
    }
    NoiseParams p;
    for (const auto &[key, value] : j.items()) {
        if (!key.empty() && key[0] == '_') {
            continue;
        }
        if (key == "cz_phase_model") {
            std::string s = value.is_string() ? value.get<std::string>() : "";
            if (s == "coherent") {
                p.cz_phase_model = CzPhaseModel::kCoherent;
            } else if (s == "stochastic_zz") {
                p.cz_phase_model = CzPhaseModel::kStochasticZZ;
            } else {
                throw ParseError("noise.cz_phase_model: expected \"coherent\" or \"stochastic_zz\"");
            }
            continue;
        }
        if (key == "cz_error_split") {
            std::string s = value.is_string() ? value.get<std::string>() : "";
            if (s == "per_gate") {
                p.cz_error_split = CzErrorSplit::kPerGate;
            } else if (s == "per_site") {
                p.cz_error_split = CzErrorSplit::kPerSite;
            } else {
                throw ParseError("noise.cz_error_split: expected \"per_gate\" or \"per_site\"");
            }
            continue;
        }
        const ParamInfo *info = nullptr;
        for (const auto &candidate : kParams) {
            if (candidate.name == key) {
                info = &candidate;
            }
        }
        if (info == nullptr) {
            throw ParseError("noise." + key + ": unknown field");
        }
        double v;
        if (value.is_number()) {
            v = value.get<double>();
        } else if (value.is_string() && value.get<std::string>() == "inf") {
            v = kInf;
        } else {
            throw ParseError("noise." + key + ": expected a number");
        }
        p.*info->member = v;
    }
    p.validate();
    return p;
}

std::size_t KrausSet::dim() const {
    return operators.empty() ? 0 : static_cast<std::size_t>(operators.front().rows());
}

std::size_t KrausSet::arity() const {
    return dim() == 16 ? 2 : 1;
}

double KrausSet::cptp_error() const {
    if (operators.empty()) {
        return kInf;
    }
    Eigen::Index d = operators.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto &a : operators) {
        sum += a.adjoint() * a;
    }
    return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

void KrausSet::validate(double tol) const {
    if (operators.empty()) {
        throw ValidationError("channel '" + label + "' has no Kraus operators");
    }
    Eigen::Index d = operators.front().rows();
    if (d != 4 && d != 16) {
        throw ValidationError("channel '" + label + "' operators must be 4x4 or 16x16");
    }
    for (const auto &a : operators) {
        if (a.rows() != d || a.cols() != d) {
            throw ValidationError("channel '" + label + "' has operators of inconsistent shape");
        }
    }
    double err = cptp_error();
    if (!(err <= tol)) {
        std::ostringstream msg;
        msg << "channel '" << label << "' is not trace preserving (|sum A^dag A - I| = " << err << ")";
        throw ValidationError(msg.str());
    }
}

Matrix ququart_identity() {
    return Matrix::Identity(4, 4);
}

Matrix pauli_x() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(2, 2) = 1;
    m(3, 3) = 1;
    return m;
}

Matrix pauli_y() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 1) = cplx(0, -1);
    m(1, 0) = cplx(0, 1);
    m(2, 2) = 1;
    m(3, 3) = 1;
    return m;
}

Matrix pauli_z() {
    return diag4(1, -1, 1, 1);
}

double scaled_probability(double rate_per_pi, double theta) {
    double p = rate_per_pi * std::abs(theta) / kPi;
    return std::clamp(p, 0.0, 1.0);
}

KrausSet depolarization(double p) {
    check_probability(p, "depolarization");
    double s = std::sqrt(p / 3.0);
    return {"depolarization", {std::sqrt(1.0 - p) * ququart_identity(), s * pauli_x(), s * pauli_y(), s * pauli_z()}};
}

KrausSet phase_flip(double p) {
    check_probability(p, "phase_flip");
    return {"phase_flip", {std::sqrt(1.0 - p) * ququart_identity(), std::sqrt(p) * pauli_z()}};
}

KrausSet loss_channel(double p, LossTarget target) {
    check_probability(p, "loss");
    Matrix a0 = diag4(1, std::sqrt(1.0 - p), 1, 1);
    Matrix a1 = Matrix::Zero(4, 4);
    int level = target == LossTarget::kDark ? 2 : 3;
    a1(level, 1) = std::sqrt(p);
    return {target == LossTarget::kDark ? "loss_dark" : "loss_bright", {a0, a1}};
}

KrausSet decay(double p) {
    check_probability(p, "decay");
    Matrix a0 = diag4(1, std::sqrt(1.0 - p), 1, 1);
    Matrix a1 = Matrix::Zero(4, 4);
    a1(0, 1) = std::sqrt(p);
    return {"decay", {a0, a1}};
}

KrausSet bit_flip(double p) {
    check_probability(p, "bit_flip");
    return {"bit_flip", {std::sqrt(1.0 - p) * ququart_identity(), std::sqrt(p) * pauli_x()}};
}

KrausSet correlated_phase_flip(double p) {
    check_probability(p, "correlated_phase_flip");
    Matrix zz = kron(pauli_z(), pauli_z());
    return {"correlated_phase_flip", {std::sqrt(1.0 - p) * Matrix::Identity(16, 16), std::sqrt(p) * zz}};
}

DecoherenceChannel decoherence(double t, const NoiseParams &params) {
    if (!(t >= 0.0)) {
        throw ArgumentError("decoherence time must be >= 0");
    }
    double d1 = std::exp(-t / params.t1);
    double d2 = std::exp(-t / params.t2_star);
    double p0 = params.p0_equilibrium;
    double p1 = 1.0 - p0;
    double a0 = std::sqrt(p0 * (1.0 - d1) + d1);
    double a1 = std::sqrt(p1 * (1.0 - d1) + d1);

    Matrix a = diag4(a0, a1, 1, 1);
    Matrix b = Matrix::Zero(4, 4);
    b(0, 1) = std::sqrt(p0 * (1.0 - d1));
    Matrix c = Matrix::Zero(4, 4);
    c(1, 0) = std::sqrt(p1 * (1.0 - d1));

    double phi = 0.5 - d2 / (2.0 * a0 * a1);
    if (phi < -1e-12 || phi > 0.5 + 1e-12) {
        std::ostringstream msg;
        msg << "decoherence: dephasing probability " << phi
            << " outside [0, 1/2]; T1/T2*/p0 are inconsistent (T2* too long relative to T1)";
        throw ValidationError(msg.str());
    }
    phi = std::clamp(phi, 0.0, 0.5);

    DecoherenceChannel out;
    out.relaxation = {"relaxation", {a, b, c}};
    out.dephasing = phase_flip(phi);
    out.dephasing.label = "dephasing";
    out.d1 = d1;
    out.d2 = d2;
    out.phi = phi;
    return out;
}

}  // namespace nasim

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

#include "nasim/gatemodel.hpp"

#include <cmath>

#include "nasim/errors.hpp"

namespace nasim {

namespace {

Superop single(const KrausSet &k) {
    return Superop::from_kraus(k);
}

std::size_t site_index(int site) {
    if (site < 0) {
        throw ArgumentError("negative site index");
    }
    return static_cast<std::size_t>(site);
}

}  // namespace

Matrix global_rotation_unitary(double phi, double theta) {
    Matrix u = Matrix::Identity(4, 4);
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    const cplx i(0.0, 1.0);
    u(0, 0) = c;
    u(0, 1) = -i * s * std::exp(-i * phi);
    u(1, 0) = -i * s * std::exp(i * phi);
    u(1, 1) = c;
    return u;
}

Matrix rz_unitary(double theta) {
    Matrix u = Matrix::Identity(4, 4);
    const cplx i(0.0, 1.0);
    u(0, 0) = std::exp(-i * theta / 2.0);
    u(1, 1) = std::exp(i * theta / 2.0);
    return u;
}

Matrix cz_unitary() {
    Matrix u = Matrix::Identity(16, 16);
    u(5, 5) = -1.0;
    return u;
}

Matrix cz_phase_unitary(double delta) {
    Matrix u = Matrix::Identity(16, 16);
    u(5, 5) = std::exp(cplx(0.0, delta));
    return u;
}

GateModel::GateModel(NoiseParams params) : params_(params) {
    params_.validate();
}

Superop GateModel::global_map(double phi, double theta) const {
    auto key = std::make_pair(phi, theta);
    auto it = global_cache_.find(key);
    if (it != global_cache_.end()) {
        return it->second;
    }
    Superop op = Superop::from_unitary(global_rotation_unitary(phi, theta))
                     .then(single(depolarization(scaled_probability(params_.uw_depol_per_pi, theta))));
    global_cache_.emplace(key, op);
    return op;
}

Superop GateModel::rz_map(double theta) const {
    auto it = rz_cache_.find(theta);
    if (it != rz_cache_.end()) {
        return it->second;
    }
    const auto &p = params_;
    Superop op = Superop::from_unitary(rz_unitary(theta))
                     .then(single(phase_flip(scaled_probability(p.rz_phaseflip_per_pi, theta))))
                     .then(single(decay(scaled_probability(p.rz_decay_per_pi, theta))))
                     .then(single(loss_channel(scaled_probability(p.rz_loss_dark_per_pi, theta), LossTarget::kDark)))
                     .then(single(
                         loss_channel(scaled_probability(p.rz_loss_bright_per_pi, theta), LossTarget::kBright)));
    rz_cache_.emplace(theta, op);
    return op;
}

Superop GateModel::cz_map() const {
    if (cz_cache_) {
        return *cz_cache_;
    }
    const auto &p = params_;
    double share = p.cz_error_split == CzErrorSplit::kPerGate ? 0.5 : 1.0;
    auto both = [](const Superop &op, const Superop &one) {
        return op.then(Superop::on_pair(one, 0)).then(Superop::on_pair(one, 1));
    };
    Superop op = Superop::from_unitary(cz_unitary());
    op = both(op, single(loss_channel(share * p.cz_loss_dark, LossTarget::kDark)));
    op = both(op, single(loss_channel(share * p.cz_loss_bright, LossTarget::kBright)));
    op = both(op, single(decay(share * p.cz_decay)));
    op = both(op, single(phase_flip(share * p.cz_phaseflip)));
    if (p.cz_phase_model == CzPhaseModel::kCoherent) {
        op = op.then(Superop::from_unitary(cz_phase_unitary(p.cz_phaseshift)));
    } else {
        double s = std::sin(p.cz_phaseshift / 2.0);
        op = op.then(Superop::from_kraus(correlated_phase_flip(s * s)));
    }
    cz_cache_ = op;
    return op;
}

Superop GateModel::decoherence_map(double duration) const {
    auto it = decoherence_cache_.find(duration);
    if (it != decoherence_cache_.end()) {
        return it->second;
    }
    DecoherenceChannel ch = decoherence(duration, params_);
    Superop op = single(ch.relaxation).then(single(ch.dephasing));
    decoherence_cache_.emplace(duration, op);
    return op;
}

double GateModel::duration(const Gate &native) const {
    switch (native.kind) {
        case GateKind::kGlobalRotation:
            return params_.dur_uw_pi * std::abs(native.params.at(1)) / kPi;
        case GateKind::kRz:
            return params_.dur_rz_pi * std::abs(native.params.at(0)) / kPi;
        case GateKind::kCZ:
            return params_.dur_cz;
        default:
            throw ArgumentError("gate '" + std::string(gate_name(native.kind)) + "' is not native");
    }
}

void GateModel::apply(QuquartState &state, const Gate &native) const {
    switch (native.kind) {
        case GateKind::kGlobalRotation: {
            Superop op = global_map(native.params.at(0), native.params.at(1));
            for (std::size_t k = 0; k < state.n_sites(); k++) {
                std::size_t site[1] = {k};
                apply_superop(state, site, op);
            }
            return;
        }
        case GateKind::kRz: {
            std::size_t site[1] = {site_index(native.sites.at(0))};
            apply_superop(state, site, rz_map(native.params.at(0)));
            return;
        }
        case GateKind::kCZ: {
            std::size_t sites[2] = {site_index(native.sites.at(0)), site_index(native.sites.at(1))};
            apply_superop(state, sites, cz_map());
            return;
        }
        default:
            throw ArgumentError("gate '" + std::string(gate_name(native.kind)) + "' is not native");
    }
}

void GateModel::apply_decoherence(QuquartState &state, double duration) const {
    if (duration == 0.0) {
        return;
    }
    Superop op = decoherence_map(duration);
    for (std::size_t k = 0; k < state.n_sites(); k++) {
        std::size_t site[1] = {k};
        apply_superop(state, site, op);
    }
}

void GateModel::apply_preparation(QuquartState &state) const {
    Superop op = single(bit_flip(params_.prep_error));
    for (std::size_t k = 0; k < state.n_sites(); k++) {
        std::size_t site[1] = {k};
        apply_superop(state, site, op);
    }
}

void apply_noisy_global_rotation(QuquartState &state, double phi, double theta, const NoiseParams &params) {
    GateModel model(params);
    Gate g = Gate::global_rotation(phi, theta);
    model.apply(state, g);
    model.apply_decoherence(state, model.duration(g));
}

void apply_noisy_local_rz(QuquartState &state, std::size_t site, double theta, const NoiseParams &params) {
    GateModel model(params);
    Gate g = Gate::rz(static_cast<int>(site), theta);
    model.apply(state, g);
    model.apply_decoherence(state, model.duration(g));
}

void apply_noisy_cz(QuquartState &state, std::size_t site_a, std::size_t site_b, const NoiseParams &params) {
    if (site_a == site_b) {
        throw ArgumentError("CZ needs two distinct sites");
    }
    GateModel model(params);
    Gate g = Gate::cz(static_cast<int>(site_a), static_cast<int>(site_b));
    model.apply(state, g);
    model.apply_decoherence(state, model.duration(g));
}

void apply_preparation(QuquartState &state, const NoiseParams &params) {
    GateModel(params).apply_preparation(state);
}

}  // namespace nasim

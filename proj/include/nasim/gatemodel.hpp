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

#include <map>
#include <optional>
#include <utility>

#include "nasim/channels.hpp"
#include "nasim/gate.hpp"
#include "nasim/state.hpp"

namespace nasim {

// exp(-i theta (cos(phi) X + sin(phi) Y) / 2) on the computational block, identity on loss levels.
Matrix global_rotation_unitary(double phi, double theta);
// diag(e^{-i theta/2}, e^{i theta/2}, 1, 1)
Matrix rz_unitary(double theta);
// diag(1, 1, 1, -1) on the computational block of two sites (16x16).
Matrix cz_unitary();
// diag(1, 1, 1, e^{i delta}) on the computational block of two sites.
Matrix cz_phase_unitary(double delta);

// Noisy native gates for one parameter set.
//
// apply() performs the ideal gate followed by its error channels; idle
// decoherence is separate so that a schedule can apply it once per layer.
// Compiled maps are cached, so an instance must not be shared between threads.
class GateModel {
   public:
    explicit GateModel(NoiseParams params);

    const NoiseParams &params() const {
        return params_;
    }

    void apply(QuquartState &state, const Gate &native) const;
    // T1/T2* channel on every site for the given time.
    void apply_decoherence(QuquartState &state, double duration) const;
    // Bit flip with prep_error on every site.
    void apply_preparation(QuquartState &state) const;
    double duration(const Gate &native) const;

    // Per-site map of the global rotation including depolarization.
    Superop global_map(double phi, double theta) const;
    Superop rz_map(double theta) const;
    // Two-site map of the CZ including all of its error channels.
    Superop cz_map() const;
    Superop decoherence_map(double duration) const;

   private:
    NoiseParams params_;
    mutable std::map<std::pair<double, double>, Superop> global_cache_;
    mutable std::map<double, Superop> rz_cache_;
    mutable std::map<double, Superop> decoherence_cache_;
    mutable std::optional<Superop> cz_cache_;
};

void apply_noisy_global_rotation(QuquartState &state, double phi, double theta, const NoiseParams &params);
void apply_noisy_local_rz(QuquartState &state, std::size_t site, double theta, const NoiseParams &params);
void apply_noisy_cz(QuquartState &state, std::size_t site_a, std::size_t site_b, const NoiseParams &params);
void apply_preparation(QuquartState &state, const NoiseParams &params);

}  // namespace nasim

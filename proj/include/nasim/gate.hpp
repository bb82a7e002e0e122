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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nasim {

enum class GateKind {
    // Native gates of the hardware.
    kGlobalRotation,  // params {phi, theta}; acts on every site
    kRz,              // params {theta}; one site
    kCZ,              // two sites
    // Abstract gates, removed by lower_to_native.
    kH,
    kX,
    kY,
    kZ,
    kS,
    kSdg,
    kT,
    kTdg,
    kRx,        // params {theta}
    kRy,        // params {theta}
    kCX,        // sites {control, target}
    kCP,        // params {theta}; diag(1, 1, 1, e^{i theta})
    kSwap,      //
    kCCX,       // sites {c0, c1, target}
    kMCZ,       // phase -1 on |1...1> of all listed sites
    kMCRy,      // sites {controls..., target}; params {theta}
    kDiagonal,  // params: 2^k phases, phase[i] applied to basis state i of the listed sites
};

struct Gate {
    GateKind kind = GateKind::kRz;
    std::vector<int> sites;
    std::vector<double> params;

    static Gate global_rotation(double phi, double theta) {
        return {GateKind::kGlobalRotation, {}, {phi, theta}};
    }
    static Gate rz(int site, double theta) {
        return {GateKind::kRz, {site}, {theta}};
    }
    static Gate cz(int a, int b) {
        return {GateKind::kCZ, {a, b}, {}};
    }

    bool operator==(const Gate &) const = default;
};

bool is_native(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

// Number of sites the gate kind takes, or 0 if variable (global, MCZ, MCRy, diagonal).
std::size_t fixed_arity(GateKind kind);
// Number of parameters, or -1 if variable (diagonal).
int fixed_param_count(GateKind kind);

}  // namespace nasim

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

#include "nasim/gate.hpp"

#include <array>
#include <utility>

namespace nasim {

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    std::size_t arity;
    int params;
};

constexpr std::array<KindInfo, 20> kKinds = {{
    {GateKind::kGlobalRotation, "gr", 0, 2},
    {GateKind::kRz, "rz", 1, 1},
    {GateKind::kCZ, "cz", 2, 0},
    {GateKind::kH, "h", 1, 0},
    {GateKind::kX, "x", 1, 0},
    {GateKind::kY, "y", 1, 0},
    {GateKind::kZ, "z", 1, 0},
    {GateKind::kS, "s", 1, 0},
    {GateKind::kSdg, "sdg", 1, 0},
    {GateKind::kT, "t", 1, 0},
    {GateKind::kTdg, "tdg", 1, 0},
    {GateKind::kRx, "rx", 1, 1},
    {GateKind::kRy, "ry", 1, 1},
    {GateKind::kCX, "cx", 2, 0},
    {GateKind::kCP, "cp", 2, 1},
    {GateKind::kSwap, "swap", 2, 0},
    {GateKind::kCCX, "ccx", 3, 0},
    {GateKind::kMCZ, "mcz", 0, 0},
    {GateKind::kMCRy, "mcry", 0, 1},
    {GateKind::kDiagonal, "diag", 0, -1},
}};

const KindInfo &info(GateKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    return kKinds[0];
}

}  // namespace

bool is_native(GateKind kind) {
    return kind == GateKind::kGlobalRotation || kind == GateKind::kRz || kind == GateKind::kCZ;
}

std::string_view gate_name(GateKind kind) {
    return info(kind).name;
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) {
            return k.kind;
        }
    }
    return std::nullopt;
}

std::size_t fixed_arity(GateKind kind) {
    return info(kind).arity;
}

int fixed_param_count(GateKind kind) {
    return info(kind).params;
}

}  // namespace nasim

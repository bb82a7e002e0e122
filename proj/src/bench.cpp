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

#include "nasim/bench.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "nasim/errors.hpp"
#include "nasim/statevector.hpp"

namespace nasim {

namespace {

struct KindName {
    BenchmarkKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 14> kNames = {{
    {BenchmarkKind::kBernsteinVazirani, "bernstein_vazirani"},
    {BenchmarkKind::kDeutschJozsa, "deutsch_jozsa"},
    {BenchmarkKind::kHiddenShift, "hidden_shift"},
    {BenchmarkKind::kQftMethod1, "qft_method1"},
    {BenchmarkKind::kQftMethod2, "qft_method2"},
    {BenchmarkKind::kPhaseEstimation, "phase_estimation"},
    {BenchmarkKind::kAmplitudeEstimation, "amplitude_estimation"},
    {BenchmarkKind::kGrover, "grover"},
    {BenchmarkKind::kHamiltonianSim, "hamiltonian_sim"},
    {BenchmarkKind::kMonteCarlo, "monte_carlo"},
    {BenchmarkKind::kGhz, "ghz"},
    {BenchmarkKind::kGhzParity, "ghz_parity"},
    {BenchmarkKind::kQaoaMaxCut, "qaoa_maxcut"},
    {BenchmarkKind::kExternal, "external"},
}};

// Heisenberg-chain settings: Trotter steps, total time, field scale and per-site fields.
constexpr int kHamSteps = 5;
constexpr double kHamTime = 0.2;
constexpr double kHamFieldScale = 10.0;
constexpr std::array<double, 11> kHamHx = {0.63, -0.21, 0.88, -0.47, 0.15, -0.79, 0.34, 0.56, -0.92, 0.07, -0.38};
constexpr std::array<double, 11> kHamHz = {-0.55, 0.29, 0.71, -0.13, -0.84, 0.42, -0.66, 0.18, 0.93, -0.31, 0.50};

// Monte-Carlo sampling: two state qubits with a uniform distribution, objective
// angle linear in the state bits.
constexpr double kMcBaseAngle = 0.3;
constexpr std::array<double, 2> kMcBitAngles = {0.8, 0.4};

class Builder {
   public:
    explicit Builder(std::size_t n) {
        c_.n_qubits = n;
    }
    Builder &add(GateKind kind, std::vector<int> sites, std::vector<double> params = {}) {
        c_.ops.push_back({kind, std::move(sites), std::move(params)});
        return *this;
    }
    Builder &h(int q) {
        return add(GateKind::kH, {q});
    }
    Builder &x(int q) {
        return add(GateKind::kX, {q});
    }
    Builder &cx(int c, int t) {
        return add(GateKind::kCX, {c, t});
    }
    Builder &cz(int a, int b) {
        return add(GateKind::kCZ, {a, b});
    }
    Builder &rz(int q, double theta) {
        return add(GateKind::kRz, {q}, {theta});
    }
    Builder &ry(int q, double theta) {
        return add(GateKind::kRy, {q}, {theta});
    }
    Builder &rx(int q, double theta) {
        return add(GateKind::kRx, {q}, {theta});
    }
    Builder &cp(int c, int t, double theta) {
        return add(GateKind::kCP, {c, t}, {theta});
    }
    Builder &mcry(std::vector<int> sites, double theta) {
        return add(GateKind::kMCRy, std::move(sites), {theta});
    }
    Builder &mcz(std::vector<int> sites) {
        return add(GateKind::kMCZ, std::move(sites));
    }
    Builder &append(const std::vector<Gate> &ops) {
        c_.ops.insert(c_.ops.end(), ops.begin(), ops.end());
        return *this;
    }

    // Fourier transform without the final bit reversal: qubit j of `qs` ends up
    // with phase exp(2 pi i x / 2^(m-j)).
    Builder &qft(const std::vector<int> &qs) {
        for (std::size_t j = 0; j < qs.size(); j++) {
            h(qs[j]);
            for (std::size_t k = j + 1; k < qs.size(); k++) {
                cp(qs[k], qs[j], kPi / static_cast<double>(std::size_t{1} << (k - j)));
            }
        }
        return *this;
    }
    Builder &inverse_qft(const std::vector<int> &qs) {
        for (std::size_t j = qs.size(); j-- > 0;) {
            for (std::size_t k = qs.size(); k-- > j + 1;) {
                cp(qs[k], qs[j], -kPi / static_cast<double>(std::size_t{1} << (k - j)));
            }
            h(qs[j]);
        }
        return *this;
    }

    Circuit take(std::vector<int> readout) {
        c_.readout = std::move(readout);
        return std::move(c_);
    }

   private:
    Circuit c_;
};

std::vector<int> range(int lo, int hi) {
    std::vector<int> out;
    for (int i = lo; i < hi; i++) {
        out.push_back(i);
    }
    return out;
}

bool bit_of(std::uint64_t value, std::size_t index, std::size_t n_bits) {
    // Bit string character `index` of an n-bit value, most significant first.
    return (value >> (n_bits - 1 - index)) & 1;
}

void require_instance(const BenchmarkSpec &spec, std::uint64_t lo, std::uint64_t hi) {
    if (spec.instance < lo || spec.instance > hi) {
        throw ArgumentError(
            std::string(benchmark_name(spec.kind)) + " width " + std::to_string(spec.width) + ": instance " +
            std::to_string(spec.instance) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

Circuit bernstein_vazirani(const BenchmarkSpec &s) {
    std::size_t m = s.width - 1;
    int anc = static_cast<int>(m);
    require_instance(s, 1, (std::uint64_t{1} << m) - 1);
    Builder b(s.width);
    b.x(anc);
    for (int q = 0; q <= anc; q++) {
        b.h(q);
    }
    for (std::size_t i = 0; i < m; i++) {
        if (bit_of(s.instance, i, m)) {
            b.cx(static_cast<int>(i), anc);
        }
    }
    for (int q = 0; q < anc; q++) {
        b.h(q);
    }
    return b.take(range(0, anc));
}

Circuit deutsch_jozsa(const BenchmarkSpec &s) {
    std::size_t m = s.width - 1;
    int anc = static_cast<int>(m);
    require_instance(s, 0, 1);
    Builder b(s.width);
    b.x(anc);
    for (int q = 0; q <= anc; q++) {
        b.h(q);
    }
    if (s.instance == 1) {
        // Balanced: f(x) = parity(x), with an alternating X mask around the oracle.
        for (int q = 0; q < anc; q += 2) {
            b.x(q);
        }
        for (int q = 0; q < anc; q++) {
            b.cx(q, anc);
        }
        for (int q = 0; q < anc; q += 2) {
            b.x(q);
        }
    }
    for (int q = 0; q < anc; q++) {
        b.h(q);
    }
    return b.take(range(0, anc));
}

Circuit hidden_shift(const BenchmarkSpec &s) {
    std::size_t n = s.width;
    require_instance(s, 1, (std::uint64_t{1} << n) - 1);
    Builder b(n);
    int w = static_cast<int>(n);
    auto hadamards = [&] {
        for (int q = 0; q < w; q++) {
            b.h(q);
        }
    };
    auto pairs = [&] {
        for (int q = 0; q + 1 < w; q += 2) {
            b.cz(q, q + 1);
        }
    };
    auto shift = [&] {
        for (std::size_t i = 0; i < n; i++) {
            if (bit_of(s.instance, i, n)) {
                b.x(static_cast<int>(i));
            }
        }
    };
    hadamards();
    shift();
    pairs();
    shift();
    hadamards();
    pairs();
    hadamards();
    return b.take({});
}

Circuit qft_method1(const BenchmarkSpec &s) {
    std::size_t n = s.width;
    require_instance(s, 0, (std::uint64_t{1} << n) - 1);
    Builder b(n);
    auto qs = range(0, static_cast<int>(n));
    for (std::size_t i = 0; i < n; i++) {
        if (bit_of(s.instance, i, n)) {
            b.x(static_cast<int>(i));
        }
    }
    b.qft(qs);
    // Adds 1 in the Fourier basis.
    for (std::size_t j = 0; j < n; j++) {
        b.rz(static_cast<int>(j), 2 * kPi / static_cast<double>(std::size_t{1} << (n - j)));
    }
    b.inverse_qft(qs);
    return b.take({});
}

Circuit qft_method2(const BenchmarkSpec &s) {
    std::size_t n = s.width;
    require_instance(s, 0, (std::uint64_t{1} << n) - 1);
    Builder b(n);
    auto qs = range(0, static_cast<int>(n));
    for (std::size_t j = 0; j < n; j++) {
        b.h(static_cast<int>(j));
        b.rz(static_cast<int>(j),
             2 * kPi * static_cast<double>(s.instance) / static_cast<double>(std::size_t{1} << (n - j)));
    }
    b.inverse_qft(qs);
    return b.take({});
}

Circuit phase_estimation(const BenchmarkSpec &s) {
    std::size_t m = s.width - 1;
    int target = static_cast<int>(m);
    require_instance(s, 0, (std::uint64_t{1} << m) - 1);
    double phase = static_cast<double>(s.instance) / static_cast<double>(std::uint64_t{1} << m);
    Builder b(s.width);
    auto counting = range(0, target);
    b.x(target);
    for (int q : counting) {
        b.h(q);
    }
    for (std::size_t j = 0; j < m; j++) {
        double angle = 2 * kPi * phase * static_cast<double>(std::uint64_t{1} << j);
        b.cp(static_cast<int>(j), target, std::remainder(angle, 2 * kPi));
    }
    b.inverse_qft(counting);
    return b.take(counting);
}

// Phase estimation of the Grover operator Q = A S0 A^dag S_chi on `work`
// (objective qubit last). `a_ops(b, control, sign)` emits A (sign +1) or A^dag
// (sign -1), controlled by `control` when it is >= 0; `controlled_s0(b, c)` emits
// S0 controlled by c.
using AOps = std::function<void(Builder &, int, double)>;
using S0Ops = std::function<void(Builder &, int)>;

Circuit amplitude_estimation_circuit(std::size_t width, std::size_t m, const AOps &a_ops, const S0Ops &controlled_s0,
                                     int obj) {
    Builder b(width);
    auto counting = range(0, static_cast<int>(m));
    for (int q : counting) {
        b.h(q);
    }
    a_ops(b, -1, 1.0);
    for (std::size_t j = 0; j < m; j++) {
        int c = static_cast<int>(j);
        for (std::size_t rep = 0; rep < (std::size_t{1} << j); rep++) {
            b.cz(c, obj);
            a_ops(b, c, -1.0);
            controlled_s0(b, c);
            a_ops(b, c, 1.0);
        }
    }
    b.inverse_qft(counting);
    return b.take(counting);
}

std::vector<int> with_control(int control, std::vector<int> sites) {
    if (control >= 0) {
        sites.insert(sites.begin(), control);
    }
    return sites;
}

Circuit amplitude_estimation(const BenchmarkSpec &s) {
    std::size_t m = s.width - 2;
    require_instance(s, 1, (std::uint64_t{1} << m) - 1);
    int state = static_cast<int>(m);
    int obj = state + 1;
    double theta = kPi * static_cast<double>(s.instance) / static_cast<double>(std::uint64_t{1} << m);
    // A = Ry(2 theta) on the objective, then copy it into the state qubit, giving
    // sqrt(1-a)|0>|0> + sqrt(a)|1>|1> with a = sin^2(theta).
    auto a_ops = [&](Builder &b, int control, double sign) {
        auto rotate = [&] { b.mcry(with_control(control, {obj}), sign * 2 * theta); };
        auto copy = [&] {
            if (control >= 0) {
                b.add(GateKind::kCCX, {control, obj, state});
            } else {
                b.cx(obj, state);
            }
        };
        if (sign > 0) {
            rotate();
            copy();
        } else {
            copy();
            rotate();
        }
    };
    // S0 = 2|00><00| - I: X, H, multi-controlled X, H, X gives its negative, and
    // Z on the control restores the sign. Only the middle needs the control.
    auto controlled_s0 = [&](Builder &b, int control) {
        b.x(state).x(obj).h(obj);
        b.add(GateKind::kCCX, {control, state, obj});
        b.h(obj).x(obj).x(state);
        b.add(GateKind::kZ, {control}, {});
    };
    return amplitude_estimation_circuit(s.width, m, a_ops, controlled_s0, obj);
}

Circuit monte_carlo(const BenchmarkSpec &s) {
    std::size_t m = s.width - 3;
    require_instance(s, 0, 0);
    int s0 = static_cast<int>(m);
    int s1 = s0 + 1;
    int obj = s0 + 2;
    // A: uniform distribution over the state register, then an objective
    // rotation whose angle is linear in the state bits.
    auto a_ops = [&](Builder &b, int control, double sign) {
        std::vector<std::pair<std::vector<int>, double>> steps = {
            {with_control(control, {s0}), kPi / 2},
            {with_control(control, {s1}), kPi / 2},
            {with_control(control, {obj}), kMcBaseAngle},
            {with_control(control, {s0, obj}), kMcBitAngles[0]},
            {with_control(control, {s1, obj}), kMcBitAngles[1]},
        };
        if (sign < 0) {
            std::reverse(steps.begin(), steps.end());
        }
        for (auto &[sites, angle] : steps) {
            if (sites.size() == 1) {
                b.ry(sites[0], sign * angle);
            } else {
                b.mcry(sites, sign * angle);
            }
        }
    };
    // Controlled 2|0><0| - I on the work register as one diagonal gate.
    auto controlled_s0 = [&](Builder &b, int control) {
        std::vector<int> sites{control, s0, s1, obj};
        std::vector<double> phases(16, 0.0);
        for (std::size_t x = 9; x < 16; x++) {
            phases[x] = kPi;
        }
        b.add(GateKind::kDiagonal, sites, phases);
    };
    return amplitude_estimation_circuit(s.width, m, a_ops, controlled_s0, obj);
}

Circuit grover(const BenchmarkSpec &s) {
    std::size_t n = s.width;
    require_instance(s, 0, (std::uint64_t{1} << n) - 1);
    int w = static_cast<int>(n);
    auto all = range(0, w);
    std::size_t iterations =
        static_cast<std::size_t>(std::floor(kPi * std::sqrt(static_cast<double>(std::uint64_t{1} << n)) / 4));
    Builder b(n);
    for (int q : all) {
        b.h(q);
    }
    for (std::size_t it = 0; it < iterations; it++) {
        for (std::size_t i = 0; i < n; i++) {
            if (!bit_of(s.instance, i, n)) {
                b.x(static_cast<int>(i));
            }
        }
        b.mcz(all);
        for (std::size_t i = 0; i < n; i++) {
            if (!bit_of(s.instance, i, n)) {
                b.x(static_cast<int>(i));
            }
        }
        for (int q : all) {
            b.h(q);
            b.x(q);
        }
        b.mcz(all);
        for (int q : all) {
            b.x(q);
            b.h(q);
        }
    }
    return b.take({});
}

Circuit hamiltonian_sim(const BenchmarkSpec &s) {
    std::size_t n = s.width;
    require_instance(s, 0, 0);
    int w = static_cast<int>(n);
    double tau = kHamTime / kHamSteps;
    Builder b(n);
    for (int q = 0; q < w; q += 2) {
        b.x(q);
    }
    for (int step = 0; step < kHamSteps; step++) {
        for (int q = 0; q < w; q++) {
            b.rx(q, 2 * tau * kHamFieldScale * kHamHx[q]);
            b.rz(q, 2 * tau * kHamFieldScale * kHamHz[q]);
        }
        for (int parity = 0; parity < 2; parity++) {
            for (int q = parity; q + 1 < w; q += 2) {
                b.append(canonical_two_qubit(q, q + 1, -tau, -tau, -tau));
            }
        }
    }
    Circuit c = b.take({});
    c.metadata["steps"] = kHamSteps;
    c.metadata["time"] = kHamTime;
    c.metadata["field_scale"] = kHamFieldScale;
    c.metadata["hx"] = std::vector<double>(kHamHx.begin(), kHamHx.begin() + w);
    c.metadata["hz"] = std::vector<double>(kHamHz.begin(), kHamHz.begin() + w);
    return c;
}

Circuit ghz(std::size_t n) {
    Builder b(n);
    b.h(0);
    for (int q = 0; q + 1 < static_cast<int>(n); q++) {
        b.cx(q, q + 1);
    }
    return b.take({});
}

Circuit ghz_parity(const BenchmarkSpec &s) {
    Circuit c = ghz(s.width);
    c.ops.push_back(Gate::global_rotation(s.phase, kPi / 2));
    return c;
}

Circuit qaoa_maxcut(const BenchmarkSpec &s) {
    std::size_t n = s.width;
    int w = static_cast<int>(n);
    std::mt19937_64 rng(s.instance);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double gamma = kPi * unit(rng);
    double beta = 0.5 * kPi * unit(rng);
    Builder b(n);
    for (int q = 0; q < w; q++) {
        b.h(q);
    }
    std::vector<std::pair<int, int>> edges;
    for (int q = 0; q + 1 < w; q++) {
        edges.emplace_back(q, q + 1);
    }
    if (w > 2) {
        edges.emplace_back(0, w - 1);
    }
    // exp(-i gamma Z Z / 2) per edge.
    for (auto [u, v] : edges) {
        b.add(GateKind::kDiagonal, {u, v}, {-gamma / 2, gamma / 2, gamma / 2, -gamma / 2});
    }
    for (int q = 0; q < w; q++) {
        b.rx(q, 2 * beta);
    }
    Circuit c = b.take({});
    c.metadata["gamma"] = gamma;
    c.metadata["beta"] = beta;
    return c;
}

}  // namespace

std::string_view benchmark_name(BenchmarkKind kind) {
    for (const auto &k : kNames) {
        if (k.kind == kind) {
            return k.name;
        }
    }
    return "unknown";
}

std::optional<BenchmarkKind> benchmark_kind_from_name(std::string_view name) {
    for (const auto &k : kNames) {
        if (k.name == name) {
            return k.kind;
        }
    }
    return std::nullopt;
}

std::vector<BenchmarkKind> all_benchmark_kinds() {
    std::vector<BenchmarkKind> out;
    for (const auto &k : kNames) {
        out.push_back(k.kind);
    }
    return out;
}

nlohmann::json spec_to_json(const BenchmarkSpec &spec) {
    nlohmann::json j;
    j["kind"] = std::string(benchmark_name(spec.kind));
    j["width"] = spec.width;
    j["instance"] = spec.instance;
    if (spec.kind == BenchmarkKind::kGhzParity) {
        j["phase"] = spec.phase;
    }
    if (spec.kind == BenchmarkKind::kExternal) {
        j["path"] = spec.path;
    }
    j["seed"] = spec.seed;
    return j;
}

BenchmarkSpec spec_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ParseError("spec: expected a JSON object");
    }
    BenchmarkSpec s;
    auto uint_field = [&](const std::string &key) -> std::uint64_t {
        const auto &v = j.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw ParseError("spec." + key + ": expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    };
    bool has_width = false;
    for (const auto &[key, v] : j.items()) {
        if (key == "kind") {
            auto kind = v.is_string() ? benchmark_kind_from_name(v.get<std::string>()) : std::nullopt;
            if (!kind) {
                throw ParseError("spec.kind: unknown benchmark kind " + v.dump());
            }
            s.kind = *kind;
        } else if (key == "width") {
            s.width = uint_field(key);
            has_width = true;
        } else if (key == "instance") {
            s.instance = uint_field(key);
        } else if (key == "seed") {
            s.seed = uint_field(key);
        } else if (key == "phase") {
            if (!v.is_number()) {
                throw ParseError("spec.phase: expected a number");
            }
            s.phase = v.get<double>();
        } else if (key == "path") {
            if (!v.is_string()) {
                throw ParseError("spec.path: expected a file path");
            }
            s.path = v.get<std::string>();
        } else {
            throw ParseError("spec." + key + ": unknown field");
        }
    }
    if (!j.contains("kind")) {
        throw ParseError("spec.kind: missing");
    }
    if (s.kind == BenchmarkKind::kExternal) {
        if (s.path.empty()) {
            throw ParseError("spec.path: required for external circuits");
        }
        if (!has_width) {
            s.width = load_external(s.path).circuit.n_qubits;
        }
    } else if (!has_width) {
        throw ParseError("spec.width: missing");
    }
    return s;
}

std::size_t min_width(BenchmarkKind kind) {
    switch (kind) {
        case BenchmarkKind::kAmplitudeEstimation:
            return 3;
        case BenchmarkKind::kMonteCarlo:
            return 4;
        case BenchmarkKind::kExternal:
            return 1;
        default:
            return 2;
    }
}

std::size_t max_width(BenchmarkKind kind) {
    switch (kind) {
        case BenchmarkKind::kHamiltonianSim:
            return kHamHx.size();
        case BenchmarkKind::kExternal:
            return 30;
        default:
            return 16;
    }
}

bool width_supported(BenchmarkKind kind, std::size_t width) {
    if (width < min_width(kind) || width > max_width(kind)) {
        return false;
    }
    return kind != BenchmarkKind::kHiddenShift || width % 2 == 0;
}

GeneratedCircuit generate(const BenchmarkSpec &spec) {
    if (spec.kind != BenchmarkKind::kExternal &&
        (spec.width < min_width(spec.kind) || spec.width > max_width(spec.kind))) {
        throw ArgumentError(
            std::string(benchmark_name(spec.kind)) + ": width " + std::to_string(spec.width) + " outside [" +
            std::to_string(min_width(spec.kind)) + ", " + std::to_string(max_width(spec.kind)) + "]");
    }
    if (spec.kind == BenchmarkKind::kHiddenShift && spec.width % 2 != 0) {
        throw ArgumentError("hidden_shift: width must be even, got " + std::to_string(spec.width));
    }
    Circuit c;
    switch (spec.kind) {
        case BenchmarkKind::kBernsteinVazirani:
            c = bernstein_vazirani(spec);
            break;
        case BenchmarkKind::kDeutschJozsa:
            c = deutsch_jozsa(spec);
            break;
        case BenchmarkKind::kHiddenShift:
            c = hidden_shift(spec);
            break;
        case BenchmarkKind::kQftMethod1:
            c = qft_method1(spec);
            break;
        case BenchmarkKind::kQftMethod2:
            c = qft_method2(spec);
            break;
        case BenchmarkKind::kPhaseEstimation:
            c = phase_estimation(spec);
            break;
        case BenchmarkKind::kAmplitudeEstimation:
            c = amplitude_estimation(spec);
            break;
        case BenchmarkKind::kGrover:
            c = grover(spec);
            break;
        case BenchmarkKind::kHamiltonianSim:
            c = hamiltonian_sim(spec);
            break;
        case BenchmarkKind::kMonteCarlo:
            c = monte_carlo(spec);
            break;
        case BenchmarkKind::kGhz:
            c = ghz(spec.width);
            break;
        case BenchmarkKind::kGhzParity:
            c = ghz_parity(spec);
            break;
        case BenchmarkKind::kQaoaMaxCut:
            c = qaoa_maxcut(spec);
            break;
        case BenchmarkKind::kExternal:
            c = load_external(spec.path).circuit;
            break;
    }
    c.name = std::string(benchmark_name(spec.kind));
    c.seed = spec.seed;
    c.metadata["instance"] = spec.instance;
    if (spec.kind == BenchmarkKind::kGhzParity) {
        c.metadata["phase"] = spec.phase;
    }
    c.validate();
    GeneratedCircuit out{c, ideal_distribution(c)};
    return out;
}

std::optional<std::uint64_t> instance_count(BenchmarkKind kind, std::size_t width) {
    auto pow2 = [](std::size_t k) { return std::uint64_t{1} << k; };
    switch (kind) {
        case BenchmarkKind::kBernsteinVazirani:
            return pow2(width - 1) - 1;
        case BenchmarkKind::kDeutschJozsa:
            return 2;
        case BenchmarkKind::kHiddenShift:
            return pow2(width) - 1;
        case BenchmarkKind::kQftMethod1:
        case BenchmarkKind::kQftMethod2:
        case BenchmarkKind::kGrover:
            return pow2(width);
        case BenchmarkKind::kPhaseEstimation:
            return pow2(width - 1);
        case BenchmarkKind::kAmplitudeEstimation:
            return pow2(width - 2) - 1;
        case BenchmarkKind::kHamiltonianSim:
        case BenchmarkKind::kMonteCarlo:
        case BenchmarkKind::kGhz:
        case BenchmarkKind::kExternal:
            return 1;
        case BenchmarkKind::kGhzParity:
            return 16;
        case BenchmarkKind::kQaoaMaxCut:
            return std::nullopt;
    }
    return 1;
}

std::size_t default_samples(BenchmarkKind kind) {
    switch (kind) {
        case BenchmarkKind::kAmplitudeEstimation:
            return 2;
        case BenchmarkKind::kMonteCarlo:
            return 1;
        default:
            return 3;
    }
}

std::vector<BenchmarkSpec> sample_instances(BenchmarkKind kind, std::size_t width, std::size_t n_samples,
                                            std::uint64_t seed) {
    if (n_samples == 0) {
        throw ArgumentError("sample_instances needs at least one sample");
    }
    // Smallest admissible instance value for the kind.
    std::uint64_t base = 0;
    if (kind == BenchmarkKind::kBernsteinVazirani || kind == BenchmarkKind::kHiddenShift ||
        kind == BenchmarkKind::kAmplitudeEstimation) {
        base = 1;
    }
    auto count = instance_count(kind, width);
    std::vector<std::uint64_t> values;
    std::mt19937_64 rng(seed);
    if (count && *count <= n_samples) {
        for (std::uint64_t v = 0; v < *count; v++) {
            values.push_back(base + v);
        }
    } else {
        std::uint64_t span = count ? *count : (std::uint64_t{1} << 31);
        std::uniform_int_distribution<std::uint64_t> pick(0, span - 1);
        std::set<std::uint64_t> seen;
        while (values.size() < n_samples) {
            std::uint64_t v = base + pick(rng);
            if (seen.insert(v).second) {
                values.push_back(v);
            }
        }
    }
    std::vector<BenchmarkSpec> specs;
    for (std::size_t i = 0; i < values.size(); i++) {
        BenchmarkSpec s;
        s.kind = kind;
        s.width = width;
        s.instance = values[i];
        if (kind == BenchmarkKind::kGhzParity) {
            s.phase = 2 * kPi * static_cast<double>(values[i]) / 16.0;
        }
        s.seed = seed + i;
        specs.push_back(s);
    }
    return specs;
}

ExternalCircuit parse_external(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ParseError("external circuit: expected a JSON object");
    }
    if (!j.contains("measured") || !j["measured"].is_object()) {
        throw ParseError("measured: expected an object mapping bitstrings to probabilities");
    }
    ExternalCircuit ext;
    ext.circuit = circuit_from_json(j);
    std::map<std::string, double> entries;
    std::size_t n_bits = ext.circuit.readout_qubits().size();
    for (const auto &[key, value] : j["measured"].items()) {
        if (!value.is_number()) {
            throw ParseError("measured." + key + ": expected a number");
        }
        if (key.size() != n_bits || key.find_first_not_of("01") != std::string::npos) {
            throw ParseError(
                "measured." + key + ": expected a bitstring of length " + std::to_string(n_bits));
        }
        entries[key] = value.get<double>();
    }
    Distribution d = Distribution::from_map(entries);
    if (d.n_bits() != n_bits) {
        throw ParseError("measured: no entries");
    }
    double total = d.total();
    for (double p : d.probs()) {
        if (p < 0.0) {
            throw ValidationError("measured: negative probability");
        }
    }
    if (std::abs(total - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "measured: probabilities sum to " << total << ", expected 1";
        throw ValidationError(msg.str());
    }
    std::vector<double> probs(d.probs().begin(), d.probs().end());
    for (auto &p : probs) {
        p /= total;
    }
    ext.measured = Distribution(n_bits, std::move(probs));
    return ext;
}

ExternalCircuit load_external(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return parse_external(j);
    } catch (const Error &e) {
        throw ParseError(path + ": " + e.what());
    }
}

nlohmann::json external_to_json(const ExternalCircuit &ext) {
    nlohmann::json j = circuit_to_json(ext.circuit);
    j["measured"] = ext.measured.to_map();
    return j;
}

void save_external(const std::string &path, const ExternalCircuit &ext) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << external_to_json(ext).dump(2) << "\n";
}

std::vector<Gate> canonical_two_qubit(int q0, int q1, double a, double b, double c) {
    return {
        Gate::rz(q1, -kPi / 2),
        {GateKind::kCX, {q1, q0}, {}},
        Gate::rz(q0, kPi / 2 - 2 * c),
        {GateKind::kRy, {q1}, {2 * a - kPi / 2}},
        {GateKind::kCX, {q0, q1}, {}},
        {GateKind::kRy, {q1}, {kPi / 2 - 2 * b}},
        {GateKind::kCX, {q1, q0}, {}},
        Gate::rz(q0, kPi / 2),
    };
}

}  // namespace nasim

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

#include "nasim/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nasim/errors.hpp"
#include "nasim/gatemodel.hpp"
#include "nasim/statevector.hpp"

namespace nasim {

namespace {

constexpr double kAngleEps = 1e-12;

std::string describe(const Gate &g, std::size_t index) {
    std::ostringstream out;
    out << "op " << index << " (" << gate_name(g.kind) << ")";
    return out.str();
}

class Lowerer {
   public:
    explicit Lowerer(std::vector<Gate> &out) : out_(out) {
    }

    void rz(int q, double theta) {
        theta = wrap_angle(theta);
        if (std::abs(theta) > kAngleEps) {
            out_.push_back(Gate::rz(q, theta));
        }
    }

    void local(double phi, double theta, int q) {
        theta = wrap_angle(theta);
        if (std::abs(theta) <= kAngleEps) {
            return;
        }
        for (const auto &g : decompose_local_rotation(phi, theta, q)) {
            out_.push_back(g);
        }
    }

    void cx(int c, int t) {
        local(kPi / 2, -kPi / 2, t);
        out_.push_back(Gate::cz(c, t));
        local(kPi / 2, kPi / 2, t);
    }

    void h(int q) {
        rz(q, kPi);
        local(kPi / 2, kPi / 2, q);
    }

    // Diagonal unitary with phases[x] on basis state x of `sites` (sites[0] most
    // significant). Expanded in the parity basis: each Walsh coefficient becomes an
    // Rz on the parity of its subset, computed with a CX ladder.
    void diagonal(const std::vector<int> &sites, const std::vector<double> &phases) {
        std::size_t k = sites.size();
        std::size_t dim = std::size_t{1} << k;
        std::vector<double> coeff(phases.begin(), phases.end());
        for (std::size_t h = 1; h < dim; h <<= 1) {
            for (std::size_t i = 0; i < dim; i += 2 * h) {
                for (std::size_t j = i; j < i + h; j++) {
                    double a = coeff[j];
                    double b = coeff[j + h];
                    coeff[j] = a + b;
                    coeff[j + h] = a - b;
                }
            }
        }
        for (auto &c : coeff) {
            c /= static_cast<double>(dim);
        }

        // exp(i a Z..Z) is periodic in a with period pi up to a global phase.
        auto angle = [&](std::size_t mask) {
            double a = std::remainder(coeff[mask], kPi);
            return std::abs(a) <= kAngleEps ? 0.0 : a;
        };
        // Bit j of a member set is member j; dense masks put member 0 most significant.
        auto mask_of = [&](std::size_t set) {
            std::size_t mask = 0;
            for (std::size_t j = 0; j < k; j++) {
                if ((set >> j) & 1) {
                    mask |= std::size_t{1} << (k - 1 - j);
                }
            }
            return mask;
        };
        auto is_cz_term = [&](std::size_t set, double a) {
            return std::popcount(set) == 2 && std::abs(std::abs(a) - kPi / 4) <= kAngleEps;
        };

        std::vector<double> singles(k, 0.0);
        for (std::size_t j = 0; j < k; j++) {
            singles[j] = -2.0 * angle(mask_of(std::size_t{1} << j));
        }
        std::vector<Gate> body;
        Lowerer inner(body);
        // Terms are grouped by their highest member t, which collects the parity.
        for (std::size_t t = k; t-- > 1;) {
            std::size_t tbit = std::size_t{1} << t;
            std::size_t ladder_cost = 0;
            bool any = false;
            for (std::size_t rest = 1; rest < tbit; rest++) {
                double a = angle(mask_of(rest | tbit));
                if (a != 0.0) {
                    any = true;
                    ladder_cost += is_cz_term(rest | tbit, a) ? 1 : 2 * static_cast<std::size_t>(std::popcount(rest));
                }
            }
            if (!any) {
                continue;
            }
            if (ladder_cost <= tbit) {
                for (std::size_t rest = 1; rest < tbit; rest++) {
                    std::size_t set = rest | tbit;
                    double a = angle(mask_of(set));
                    if (a == 0.0) {
                        continue;
                    }
                    if (is_cz_term(set, a)) {
                        // exp(±i pi/4 ZZ) = CZ · Rz(∓pi/2) ⊗ Rz(∓pi/2) up to a global phase.
                        double corr = a > 0 ? -kPi / 2 : kPi / 2;
                        int lo = std::countr_zero(rest);
                        singles[lo] += corr;
                        singles[t] += corr;
                        body.push_back(Gate::cz(sites[lo], sites[t]));
                        continue;
                    }
                    for (std::size_t j = 0; j < t; j++) {
                        if ((rest >> j) & 1) {
                            inner.cx(sites[j], sites[t]);
                        }
                    }
                    inner.rz(sites[t], -2.0 * a);
                    for (std::size_t j = t; j-- > 0;) {
                        if ((rest >> j) & 1) {
                            inner.cx(sites[j], sites[t]);
                        }
                    }
                }
                continue;
            }
            // Gray-code walk: each step flips one control into the parity on t.
            std::size_t prev = 0;
            for (std::size_t i = 1; i < tbit; i++) {
                std::size_t gray = i ^ (i >> 1);
                int j = std::countr_zero(gray ^ prev);
                inner.cx(sites[j], sites[t]);
                inner.rz(sites[t], -2.0 * angle(mask_of(gray | tbit)));
                prev = gray;
            }
            inner.cx(sites[std::countr_zero(prev)], sites[t]);
        }
        for (std::size_t j = 0; j < k; j++) {
            rz(sites[j], singles[j]);
        }
        out_.insert(out_.end(), body.begin(), body.end());
    }

    void lower(const Gate &g) {
        const auto &s = g.sites;
        switch (g.kind) {
            case GateKind::kGlobalRotation:
            case GateKind::kRz:
            case GateKind::kCZ:
                out_.push_back(g);
                return;
            case GateKind::kH:
                h(s[0]);
                return;
            case GateKind::kX:
                local(0.0, kPi, s[0]);
                return;
            case GateKind::kY:
                local(kPi / 2, kPi, s[0]);
                return;
            case GateKind::kZ:
                rz(s[0], kPi);
                return;
            case GateKind::kS:
                rz(s[0], kPi / 2);
                return;
            case GateKind::kSdg:
                rz(s[0], -kPi / 2);
                return;
            case GateKind::kT:
                rz(s[0], kPi / 4);
                return;
            case GateKind::kTdg:
                rz(s[0], -kPi / 4);
                return;
            case GateKind::kRx:
                local(0.0, g.params[0], s[0]);
                return;
            case GateKind::kRy:
                local(kPi / 2, g.params[0], s[0]);
                return;
            case GateKind::kCX:
                cx(s[0], s[1]);
                return;
            case GateKind::kCP:
                diagonal(s, {0.0, 0.0, 0.0, g.params[0]});
                return;
            case GateKind::kSwap:
                cx(s[0], s[1]);
                cx(s[1], s[0]);
                cx(s[0], s[1]);
                return;
            case GateKind::kCCX:
                h(s[2]);
                diagonal(s, mcz_phases(3));
                h(s[2]);
                return;
            case GateKind::kMCZ:
                diagonal(s, mcz_phases(s.size()));
                return;
            case GateKind::kMCRy: {
                // Ry(theta) = Rx(-pi/2) Rz(theta) Rx(pi/2); the controlled Rz is diagonal.
                std::size_t dim = std::size_t{1} << s.size();
                std::vector<double> phases(dim, 0.0);
                phases[dim - 2] = -g.params[0] / 2;
                phases[dim - 1] = g.params[0] / 2;
                int t = s.back();
                local(0.0, kPi / 2, t);
                diagonal(s, phases);
                local(0.0, -kPi / 2, t);
                return;
            }
            case GateKind::kDiagonal:
                diagonal(s, g.params);
                return;
        }
        throw LoweringError("unsupported gate '" + std::string(gate_name(g.kind)) + "'");
    }

   private:
    static std::vector<double> mcz_phases(std::size_t k) {
        std::vector<double> phases(std::size_t{1} << k, 0.0);
        phases.back() = kPi;
        return phases;
    }

    std::vector<Gate> &out_;
};

bool same_axis(double phi_a, double phi_b) {
    return std::abs(wrap_angle(phi_a - phi_b)) <= kAngleEps;
}

bool opposite_axis(double phi_a, double phi_b) {
    return std::abs(std::abs(wrap_angle(phi_a - phi_b)) - kPi) <= kAngleEps;
}

// Rewrites one run of commuting diagonal gates.
void flush_diagonal(std::vector<Gate> &run, std::vector<Gate> &out) {
    struct Slot {
        std::size_t first;
        Gate gate;
        int count;
    };
    std::vector<Slot> slots;
    std::map<int, std::size_t> rz_slot;
    std::map<std::pair<int, int>, std::size_t> cz_slot;
    for (std::size_t i = 0; i < run.size(); i++) {
        const Gate &g = run[i];
        if (g.kind == GateKind::kRz) {
            auto [it, fresh] = rz_slot.try_emplace(g.sites[0], slots.size());
            if (fresh) {
                slots.push_back({i, Gate::rz(g.sites[0], 0.0), 0});
            }
            slots[it->second].gate.params[0] += g.params[0];
        } else {
            auto key = std::minmax(g.sites[0], g.sites[1]);
            auto [it, fresh] = cz_slot.try_emplace(key, slots.size());
            if (fresh) {
                slots.push_back({i, g, 0});
            }
            slots[it->second].count++;
        }
    }
    for (auto &slot : slots) {
        if (slot.gate.kind == GateKind::kRz) {
            double theta = wrap_angle(slot.gate.params[0]);
            if (std::abs(theta) > kAngleEps) {
                out.push_back(Gate::rz(slot.gate.sites[0], theta));
            }
        } else if (slot.count % 2 == 1) {
            out.push_back(slot.gate);
        }
    }
    run.clear();
}

std::vector<Gate> optimize_pass(const std::vector<Gate> &ops) {
    std::vector<Gate> merged;
    for (const auto &g : ops) {
        if (g.kind == GateKind::kGlobalRotation && !merged.empty() &&
            merged.back().kind == GateKind::kGlobalRotation) {
            Gate &prev = merged.back();
            double sign = 0.0;
            if (same_axis(prev.params[0], g.params[0])) {
                sign = 1.0;
            } else if (opposite_axis(prev.params[0], g.params[0])) {
                sign = -1.0;
            }
            if (sign != 0.0) {
                double theta = wrap_angle(prev.params[1] + sign * g.params[1]);
                if (std::abs(theta) <= kAngleEps) {
                    merged.pop_back();
                } else {
                    prev.params[1] = theta;
                }
                continue;
            }
        }
        merged.push_back(g);
    }
    std::vector<Gate> out;
    std::vector<Gate> run;
    for (const auto &g : merged) {
        if (g.kind == GateKind::kGlobalRotation) {
            flush_diagonal(run, out);
            if (std::abs(wrap_angle(g.params[1])) > kAngleEps) {
                out.push_back(g);
            }
        } else {
            run.push_back(g);
        }
    }
    flush_diagonal(run, out);
    return out;
}

// Single-qubit resynthesis. Every run of single-qubit operations on a qubit is
// folded into one 2x2 unitary; non-diagonal parts are emitted in shared moments
// (one pair of global pulses for all qubits), diagonal parts ride along past CZs.
class Resynthesizer {
   public:
    explicit Resynthesizer(std::size_t n) : pending_(n, Eigen::Matrix2cd::Identity()) {
    }

    std::vector<Gate> run(const std::vector<Gate> &ops) {
        for (const auto &g : ops) {
            switch (g.kind) {
                case GateKind::kGlobalRotation: {
                    Eigen::Matrix2cd u = global_rotation_qubit(g.params[0], g.params[1]);
                    for (auto &m : pending_) {
                        m = u * m;
                    }
                    break;
                }
                case GateKind::kRz: {
                    Eigen::Matrix2cd u = global_rotation_qubit(0.0, 0.0);
                    u(0, 0) = std::polar(1.0, -g.params[0] / 2);
                    u(1, 1) = std::polar(1.0, g.params[0] / 2);
                    pending_[g.sites[0]] = u * pending_[g.sites[0]];
                    break;
                }
                default:
                    if (!diagonal(pending_[g.sites[0]]) || !diagonal(pending_[g.sites[1]])) {
                        flush_moment();
                    }
                    out_.push_back(g);
            }
        }
        flush_moment();
        for (std::size_t q = 0; q < pending_.size(); q++) {
            emit_rz(q, diagonal_angle(pending_[q]));
        }
        return std::move(out_);
    }

   private:
    static constexpr double kTol = 1e-11;

    static bool diagonal(const Eigen::Matrix2cd &m) {
        return std::abs(m(0, 1)) <= kTol && std::abs(m(1, 0)) <= kTol;
    }
    static double diagonal_angle(const Eigen::Matrix2cd &m) {
        return std::arg(m(1, 1)) - std::arg(m(0, 0));
    }

    void emit_rz(std::size_t q, double theta) {
        theta = wrap_angle(theta);
        if (std::abs(theta) > kTol) {
            out_.push_back(Gate::rz(static_cast<int>(q), theta));
        }
    }

    // m = e^{i g} Rz(a) Ry(theta) Rz(b) with theta in [0, pi].
    struct Zyz {
        double a, theta, b;
    };
    static Zyz zyz(const Eigen::Matrix2cd &m) {
        cplx det = m.determinant();
        Eigen::Matrix2cd v = m / std::sqrt(det);
        double theta = 2 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
        double sum = std::abs(v(0, 0)) > kTol ? -2 * std::arg(v(0, 0)) : 0.0;  // a + b
        double diff = std::abs(v(1, 0)) > kTol ? 2 * std::arg(v(1, 0)) : 0.0;  // a - b
        if (std::abs(v(0, 0)) <= kTol) {
            return {diff, theta, 0.0};
        }
        if (std::abs(v(1, 0)) <= kTol) {
            return {sum, theta, 0.0};
        }
        return {(sum + diff) / 2, theta, (sum - diff) / 2};
    }

    void flush_moment() {
        // R_phi(theta) = Rz(phi - pi/2) Ry(theta) Rz(pi/2 - phi), so each qubit needs
        // Rz(b + phi - pi/2) before and Rz(a - phi + pi/2) after a rotation about phi.
        std::vector<std::size_t> active;
        std::vector<Zyz> parts;
        for (std::size_t q = 0; q < pending_.size(); q++) {
            if (!diagonal(pending_[q])) {
                active.push_back(q);
                parts.push_back(zyz(pending_[q]));
            }
        }
        if (active.empty()) {
            return;
        }
        // Axis that makes the most pre-rotations vanish.
        double phi = 0.0;
        std::size_t best = 0;
        for (const auto &cand : parts) {
            double c = kPi / 2 - cand.b;
            std::size_t hits = 0;
            for (const auto &p : parts) {
                hits += std::abs(wrap_angle(p.b + c - kPi / 2)) <= kTol ? 1 : 0;
            }
            if (hits > best) {
                best = hits;
                phi = c;
            }
        }
        bool uniform = active.size() == pending_.size();
        for (const auto &p : parts) {
            uniform = uniform && std::abs(p.theta - parts[0].theta) <= kTol;
        }
        for (std::size_t i = 0; i < active.size(); i++) {
            emit_rz(active[i], parts[i].b + phi - kPi / 2);
        }
        if (uniform) {
            out_.push_back(Gate::global_rotation(wrap_angle(phi), parts[0].theta));
        } else {
            auto pulses = decompose_local_rotation(phi, 0.0, 0);
            pulses[0].params[0] = wrap_angle(pulses[0].params[0]);
            pulses[2].params[0] = wrap_angle(pulses[2].params[0]);
            out_.push_back(pulses[0]);
            for (std::size_t i = 0; i < active.size(); i++) {
                emit_rz(active[i], parts[i].theta);
            }
            out_.push_back(pulses[2]);
        }
        for (std::size_t i = 0; i < active.size(); i++) {
            double after = parts[i].a - phi + kPi / 2;
            Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
            d(0, 0) = std::polar(1.0, -after / 2);
            d(1, 1) = std::polar(1.0, after / 2);
            pending_[active[i]] = d;
        }
    }

    std::vector<Eigen::Matrix2cd> pending_;
    std::vector<Gate> out_;
};

}  // namespace

Circuit optimize_native(const Circuit &native) {
    if (!native.is_native()) {
        throw ArgumentError("optimize_native needs a native circuit");
    }
    Circuit out = native;
    out.ops = Resynthesizer(native.n_qubits).run(native.ops);
    while (true) {
        auto next = optimize_pass(out.ops);
        if (next == out.ops) {
            break;
        }
        out.ops = std::move(next);
    }
    return out;
}

double wrap_angle(double theta) {
    double w = std::remainder(theta, 2 * kPi);
    if (w <= -kPi) {
        w += 2 * kPi;
    }
    return w;
}

std::vector<int> Circuit::readout_qubits() const {
    if (!readout.empty()) {
        return readout;
    }
    std::vector<int> all(n_qubits);
    std::iota(all.begin(), all.end(), 0);
    return all;
}

bool Circuit::is_native() const {
    return std::all_of(ops.begin(), ops.end(), [](const Gate &g) { return nasim::is_native(g.kind); });
}

void Circuit::validate() const {
    if (n_qubits == 0) {
        throw ValidationError("circuit needs at least one qubit");
    }
    for (std::size_t i = 0; i < ops.size(); i++) {
        const Gate &g = ops[i];
        std::size_t arity = fixed_arity(g.kind);
        if (g.kind == GateKind::kGlobalRotation) {
            if (!g.sites.empty()) {
                throw ValidationError(describe(g, i) + ": global rotation takes no sites");
            }
        } else if (arity != 0 && g.sites.size() != arity) {
            throw ValidationError(
                describe(g, i) + ": expected " + std::to_string(arity) + " site(s), got " +
                std::to_string(g.sites.size()));
        } else if (arity == 0 && g.sites.empty()) {
            throw ValidationError(describe(g, i) + ": needs at least one site");
        }
        if (g.sites.size() > 16) {
            throw ValidationError(describe(g, i) + ": too many sites");
        }
        int np = fixed_param_count(g.kind);
        std::size_t want = np >= 0 ? static_cast<std::size_t>(np) : (std::size_t{1} << g.sites.size());
        if (g.params.size() != want) {
            throw ValidationError(
                describe(g, i) + ": expected " + std::to_string(want) + " parameter(s), got " +
                std::to_string(g.params.size()));
        }
        for (double p : g.params) {
            if (!std::isfinite(p)) {
                throw ValidationError(describe(g, i) + ": parameters must be finite");
            }
        }
        for (std::size_t a = 0; a < g.sites.size(); a++) {
            if (g.sites[a] < 0 || static_cast<std::size_t>(g.sites[a]) >= n_qubits) {
                throw ValidationError(describe(g, i) + ": site " + std::to_string(g.sites[a]) + " out of range");
            }
            for (std::size_t b = 0; b < a; b++) {
                if (g.sites[a] == g.sites[b]) {
                    throw ValidationError(describe(g, i) + ": repeated site " + std::to_string(g.sites[a]));
                }
            }
        }
    }
    for (std::size_t a = 0; a < readout.size(); a++) {
        if (readout[a] < 0 || static_cast<std::size_t>(readout[a]) >= n_qubits) {
            throw ValidationError("readout qubit " + std::to_string(readout[a]) + " out of range");
        }
        for (std::size_t b = 0; b < a; b++) {
            if (readout[a] == readout[b]) {
                throw ValidationError("readout qubit " + std::to_string(readout[a]) + " repeated");
            }
        }
    }
}

nlohmann::json ops_to_json(const std::vector<Gate> &ops) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto &g : ops) {
        list.push_back({{"gate", std::string(gate_name(g.kind))}, {"sites", g.sites}, {"params", g.params}});
    }
    return list;
}

std::vector<Gate> ops_from_json(const nlohmann::json &j) {
    if (!j.is_array()) {
        throw ParseError("ops: expected a JSON list");
    }
    std::vector<Gate> ops;
    for (std::size_t i = 0; i < j.size(); i++) {
        const auto &rec = j[i];
        std::string where = "ops[" + std::to_string(i) + "]";
        if (!rec.is_object() || !rec.contains("gate") || !rec["gate"].is_string()) {
            throw ParseError(where + ": expected an object with a string field 'gate'");
        }
        auto kind = gate_kind_from_name(rec["gate"].get<std::string>());
        if (!kind) {
            throw ParseError(where + ".gate: unknown gate '" + rec["gate"].get<std::string>() + "'");
        }
        Gate g;
        g.kind = *kind;
        try {
            if (rec.contains("sites")) {
                g.sites = rec["sites"].get<std::vector<int>>();
            }
            if (rec.contains("params")) {
                g.params = rec["params"].get<std::vector<double>>();
            }
        } catch (const nlohmann::json::exception &) {
            throw ParseError(where + ": 'sites' must be a list of integers and 'params' a list of numbers");
        }
        ops.push_back(std::move(g));
    }
    return ops;
}

nlohmann::json circuit_to_json(const Circuit &c) {
    nlohmann::json j;
    j["n_qubits"] = c.n_qubits;
    j["ops"] = ops_to_json(c.ops);
    if (!c.readout.empty()) {
        j["readout"] = c.readout;
    }
    if (!c.name.empty()) {
        j["name"] = c.name;
    }
    if (!c.metadata.empty()) {
        j["metadata"] = c.metadata;
    }
    return j;
}

Circuit circuit_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ParseError("circuit: expected a JSON object");
    }
    if (!j.contains("n_qubits") || !j["n_qubits"].is_number_unsigned()) {
        throw ParseError("n_qubits: expected a non-negative integer");
    }
    if (!j.contains("ops")) {
        throw ParseError("ops: missing");
    }
    Circuit c;
    c.n_qubits = j["n_qubits"].get<std::size_t>();
    c.ops = ops_from_json(j["ops"]);
    if (j.contains("readout")) {
        if (!j["readout"].is_array()) {
            throw ParseError("readout: expected a list of qubit indices");
        }
        c.readout = j["readout"].get<std::vector<int>>();
    }
    if (j.contains("name") && j["name"].is_string()) {
        c.name = j["name"].get<std::string>();
    }
    if (j.contains("metadata")) {
        c.metadata = j["metadata"];
    }
    c.validate();
    return c;
}

std::array<Gate, 3> decompose_local_rotation(double phi, double theta, int site) {
    return {Gate::global_rotation(phi + kPi / 2, -kPi / 2), Gate::rz(site, theta),
            Gate::global_rotation(phi + kPi / 2, kPi / 2)};
}

Circuit lower_to_native(const Circuit &circuit) {
    circuit.validate();
    Circuit out = circuit;
    out.ops.clear();
    Lowerer lowerer(out.ops);
    for (const auto &g : circuit.ops) {
        lowerer.lower(g);
    }
    return optimize_native(out);
}

Schedule schedule_layers(const Circuit &native, const NoiseParams &params) {
    if (!native.is_native()) {
        throw ArgumentError("schedule_layers needs a native circuit");
    }
    GateModel timing(params);
    Schedule schedule;
    std::vector<std::size_t> next_free(native.n_qubits, 0);
    for (std::size_t i = 0; i < native.ops.size(); i++) {
        const Gate &g = native.ops[i];
        std::size_t layer = 0;
        if (g.kind == GateKind::kGlobalRotation) {
            layer = *std::max_element(next_free.begin(), next_free.end());
            std::fill(next_free.begin(), next_free.end(), layer + 1);
        } else {
            for (int s : g.sites) {
                layer = std::max(layer, next_free[s]);
            }
            for (int s : g.sites) {
                next_free[s] = layer + 1;
            }
        }
        if (layer >= schedule.layers.size()) {
            schedule.layers.resize(layer + 1);
        }
        schedule.layers[layer].ops.push_back(i);
        schedule.layers[layer].duration = std::max(schedule.layers[layer].duration, timing.duration(g));
    }
    return schedule;
}

GateCounts count_gates(const Circuit &circuit) {
    GateCounts counts;
    for (const auto &g : circuit.ops) {
        switch (g.kind) {
            case GateKind::kGlobalRotation:
                counts.global++;
                break;
            case GateKind::kRz:
                counts.rz++;
                break;
            case GateKind::kCZ:
                counts.cz++;
                break;
            default:
                counts.other++;
        }
    }
    return counts;
}

}  // namespace nasim

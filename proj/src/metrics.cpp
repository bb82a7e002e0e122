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

#include "nasim/metrics.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "nasim/errors.hpp"
#include "nasim/gatemodel.hpp"
#include "nasim/statevector.hpp"

namespace nasim {

namespace {

double bhattacharyya_sq(std::span<const double> p, std::span<const double> q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); i++) {
        s += std::sqrt(std::max(p[i], 0.0) * std::max(q[i], 0.0));
    }
    return s * s;
}

void check_density(const Matrix &m, const char *name) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError(std::string(name) + " must be a nonempty square matrix");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
        throw ValidationError(std::string(name) + " is not Hermitian");
    }
    if (std::abs(m.trace() - cplx(1.0)) > 1e-8) {
        throw ValidationError(std::string(name) + " does not have unit trace");
    }
}

Matrix psd_sqrt(const Matrix &m, const char *name) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    Eigen::VectorXd vals = eig.eigenvalues();
    if (vals.minCoeff() < -1e-8) {
        throw ValidationError(std::string(name) + " is not positive semidefinite");
    }
    double floor = 1e-13 * std::max(1.0, vals.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < vals.size(); i++) {
        vals(i) = vals(i) > floor ? std::sqrt(vals(i)) : 0.0;
    }
    return eig.eigenvectors() * vals.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
}

// Copy of a native gate relabelled onto sites 0..k-1.
Gate relabel(const Gate &g) {
    Gate out = g;
    for (std::size_t i = 0; i < out.sites.size(); i++) {
        out.sites[i] = static_cast<int>(i);
    }
    return out;
}

double fidelity_at(Gate g, double NoiseParams::*duration, double value, NoiseParams params, std::size_t n_samples,
                   std::uint64_t seed) {
    params.*duration = value;
    return average_gate_fidelity(g, params, n_samples, seed).mean;
}

// Largest duration whose fidelity is still >= target, assuming fidelity falls with duration.
bool bisect_duration(const Gate &g, double NoiseParams::*duration, double target, NoiseParams &params,
                     std::size_t n_samples, std::uint64_t seed) {
    // Durations must stay positive; 1 fs stands in for zero.
    double lo = 1e-15;
    if (fidelity_at(g, duration, lo, params, n_samples, seed) < target) {
        return false;
    }
    double hi = 1e-6;
    while (fidelity_at(g, duration, hi, params, n_samples, seed) >= target) {
        lo = hi;
        hi *= 2;
        if (hi > 1.0) {
            params.*duration = hi;
            return true;
        }
    }
    for (int it = 0; it < 60 && hi - lo > 1e-6 * hi; it++) {
        double mid = 0.5 * (lo + hi);
        if (fidelity_at(g, duration, mid, params, n_samples, seed) >= target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    params.*duration = 0.5 * (lo + hi);
    return true;
}

}  // namespace

ClassicalFidelity classical_fidelity(const Distribution &ideal, const Distribution &output) {
    if (ideal.n_bits() != output.n_bits()) {
        throw ArgumentError(
            "classical_fidelity: bit counts differ (" + std::to_string(ideal.n_bits()) + " vs " +
            std::to_string(output.n_bits()) + ")");
    }
    ClassicalFidelity r;
    r.f_s = bhattacharyya_sq(ideal.probs(), output.probs());
    Distribution uniform = Distribution::uniform(ideal.n_bits());
    double f_u = bhattacharyya_sq(ideal.probs(), uniform.probs());
    if (1.0 - f_u < 1e-12) {
        r.degenerate = true;
        r.f_n = std::numeric_limits<double>::quiet_NaN();
        r.f = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    r.f_n = (r.f_s - f_u) / (1.0 - f_u);
    r.f = std::max(r.f_n, 0.0);
    return r;
}

double quantum_fidelity(const Matrix &rho, const Matrix &sigma) {
    check_density(rho, "rho");
    check_density(sigma, "sigma");
    if (rho.rows() != sigma.rows()) {
        throw ValidationError("quantum_fidelity: dimensions differ");
    }
    Matrix s = psd_sqrt(0.5 * (rho + rho.adjoint()), "rho");
    psd_sqrt(0.5 * (sigma + sigma.adjoint()), "sigma");
    Matrix inner = s * sigma * s;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    // Eigenvalues at the solver's noise floor would otherwise add ~1e-8 after the square root.
    double floor = 1e-13 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    double tr = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); i++) {
        double v = eig.eigenvalues()(i);
        tr += v > floor ? std::sqrt(v) : 0.0;
    }
    return std::min(tr * tr, 1.0);
}

double fidelity_with_pure(const QuquartState &rho, const Vector &psi) {
    std::size_t n = rho.n_sites();
    if (static_cast<std::size_t>(psi.size()) != (std::size_t{1} << n)) {
        throw ArgumentError("fidelity_with_pure: amplitude vector does not match the register");
    }
    auto entries = rho.entries();
    cplx acc = 0.0;
    for (std::size_t key = 0; key < entries.size(); key++) {
        if (entries[key] == cplx(0.0)) {
            continue;
        }
        std::size_t r = 0;
        std::size_t c = 0;
        std::size_t rest = key;
        bool computational = true;
        for (std::size_t site = 0; site < n; site++) {
            int sym = static_cast<int>(rest / rho.stride(site));
            rest %= rho.stride(site);
            if (sym >= 4) {
                computational = false;
                break;
            }
            r = (r << 1) | static_cast<std::size_t>(kSymbolRow[sym]);
            c = (c << 1) | static_cast<std::size_t>(kSymbolCol[sym]);
        }
        if (computational) {
            acc += std::conj(psi(r)) * entries[key] * psi(c);
        }
    }
    return acc.real();
}

Matrix to_dense(const QuquartState &state) {
    std::size_t n = state.n_sites();
    if (n > 6) {
        throw CapacityError("to_dense supports at most 6 sites");
    }
    std::size_t dim = std::size_t{1} << (2 * n);
    Matrix m = Matrix::Zero(dim, dim);
    auto entries = state.entries();
    for (std::size_t key = 0; key < entries.size(); key++) {
        std::size_t r = 0;
        std::size_t c = 0;
        std::size_t rest = key;
        for (std::size_t site = 0; site < n; site++) {
            int sym = static_cast<int>(rest / state.stride(site));
            rest %= state.stride(site);
            r = r * 4 + static_cast<std::size_t>(kSymbolRow[sym]);
            c = c * 4 + static_cast<std::size_t>(kSymbolCol[sym]);
        }
        m(r, c) = entries[key];
    }
    return m;
}

Distribution reduce_readout(const QuquartDistribution &q) {
    std::size_t n = q.n_sites();
    std::vector<double> out(std::size_t{1} << n, 0.0);
    for (std::size_t i = 0; i < q.size(); i++) {
        std::size_t bits = 0;
        for (std::size_t site = 0; site < n; site++) {
            std::size_t digit = (i >> (2 * (n - 1 - site))) & 3;
            // 0 -> 0, 1 -> 1, l0 -> 0, l1 -> 1
            bits = (bits << 1) | (digit & 1);
        }
        out[bits] += q[i];
    }
    return Distribution(n, std::move(out));
}

Distribution apply_measurement_error(const Distribution &d, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ArgumentError("measurement error probability must lie in [0, 1]");
    }
    std::vector<double> probs(d.probs().begin(), d.probs().end());
    for (std::size_t b = 0; b < d.n_bits(); b++) {
        std::size_t bit = std::size_t{1} << b;
        for (std::size_t i = 0; i < probs.size(); i++) {
            if (i & bit) {
                continue;
            }
            double a = probs[i];
            double c = probs[i | bit];
            probs[i] = (1 - p) * a + p * c;
            probs[i | bit] = p * a + (1 - p) * c;
        }
    }
    return Distribution(d.n_bits(), std::move(probs));
}

Vector haar_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (std::size_t i = 0; i < dim; i++) {
        double re = normal(rng);
        double im = normal(rng);
        v(i) = cplx(re, im);
    }
    return v / v.norm();
}

FidelityEstimate average_gate_fidelity(const Gate &native, const NoiseParams &params, std::size_t n_samples,
                                       std::uint64_t seed) {
    if (!is_native(native.kind)) {
        throw ArgumentError("average_gate_fidelity takes a native gate");
    }
    if (n_samples == 0) {
        throw ArgumentError("average_gate_fidelity needs at least one sample");
    }
    Gate g = relabel(native);
    std::size_t k = g.kind == GateKind::kCZ ? 2 : 1;
    Matrix ideal = g.kind == GateKind::kGlobalRotation ? global_rotation_qubit(g.params[0], g.params[1])
                                                       : gate_matrix(g);
    GateModel model(params);
    double duration = model.duration(g);
    std::mt19937_64 rng(seed);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t s = 0; s < n_samples; s++) {
        Vector psi = haar_state(std::size_t{1} << k, rng);
        QuquartState state = QuquartState::from_pure(std::span<const cplx>(psi.data(), psi.size()));
        model.apply(state, g);
        model.apply_decoherence(state, duration);
        double f = fidelity_with_pure(state, ideal * psi);
        sum += f;
        sum_sq += f * f;
    }
    double n = static_cast<double>(n_samples);
    FidelityEstimate est;
    est.mean = sum / n;
    double var = n > 1 ? std::max(sum_sq / n - est.mean * est.mean, 0.0) * n / (n - 1) : 0.0;
    est.std_error = std::sqrt(var / n);
    return est;
}

CalibrationResult calibrate_gate_durations(const NoiseParams &params, const CalibrationTargets &targets,
                                           std::size_t n_samples, std::uint64_t seed) {
    params.validate();
    CalibrationResult r;
    r.params = params;
    Gate global_pi = Gate::global_rotation(0.0, kPi);
    Gate rz_pi = Gate::rz(0, kPi);
    Gate cz = Gate::cz(0, 1);
    r.global_reached =
        bisect_duration(global_pi, &NoiseParams::dur_uw_pi, targets.global_pi, r.params, n_samples, seed);
    r.rz_reached = bisect_duration(rz_pi, &NoiseParams::dur_rz_pi, targets.rz_pi, r.params, n_samples, seed);
    r.cz_reached = bisect_duration(cz, &NoiseParams::dur_cz, targets.cz, r.params, n_samples, seed);
    r.global_pi = average_gate_fidelity(global_pi, r.params, n_samples, seed);
    r.rz_pi = average_gate_fidelity(rz_pi, r.params, n_samples, seed);
    r.cz = average_gate_fidelity(cz, r.params, n_samples, seed);
    return r;
}

}  // namespace nasim

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

#include "nasim/statevector.hpp"

#include <cmath>

#include "nasim/errors.hpp"

namespace nasim {

namespace {

const cplx kI{0.0, 1.0};

Matrix one_qubit(cplx a, cplx b, cplx c, cplx d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Matrix diagonal(const std::vector<double> &phases) {
    Matrix m = Matrix::Zero(phases.size(), phases.size());
    for (std::size_t i = 0; i < phases.size(); i++) {
        m(i, i) = std::exp(kI * phases[i]);
    }
    return m;
}

Matrix rx(double t) {
    return one_qubit(std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2));
}

Matrix ry(double t) {
    return one_qubit(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2));
}

// Applies u to the target (last site) when all other sites are 1.
Matrix controlled(std::size_t k, const Matrix &u) {
    std::size_t dim = std::size_t{1} << k;
    Matrix m = Matrix::Identity(dim, dim);
    m.block(dim - 2, dim - 2, 2, 2) = u;
    return m;
}

}  // namespace

Matrix global_rotation_qubit(double phi, double theta) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return one_qubit(c, -kI * s * std::exp(-kI * phi), -kI * s * std::exp(kI * phi), c);
}

Matrix gate_matrix(const Gate &g) {
    const double r2 = 1.0 / std::sqrt(2.0);
    std::size_t k = g.sites.size();
    switch (g.kind) {
        case GateKind::kGlobalRotation:
            break;
        case GateKind::kRz:
            return diagonal({-g.params[0] / 2, g.params[0] / 2});
        case GateKind::kCZ:
            return diagonal({0, 0, 0, kPi});
        case GateKind::kH:
            return one_qubit(r2, r2, r2, -r2);
        case GateKind::kX:
            return one_qubit(0, 1, 1, 0);
        case GateKind::kY:
            return one_qubit(0, -kI, kI, 0);
        case GateKind::kZ:
            return diagonal({0, kPi});
        case GateKind::kS:
            return diagonal({0, kPi / 2});
        case GateKind::kSdg:
            return diagonal({0, -kPi / 2});
        case GateKind::kT:
            return diagonal({0, kPi / 4});
        case GateKind::kTdg:
            return diagonal({0, -kPi / 4});
        case GateKind::kRx:
            return rx(g.params[0]);
        case GateKind::kRy:
            return ry(g.params[0]);
        case GateKind::kCX:
            return controlled(2, one_qubit(0, 1, 1, 0));
        case GateKind::kCP:
            return diagonal({0, 0, 0, g.params[0]});
        case GateKind::kSwap: {
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
            return m;
        }
        case GateKind::kCCX:
            return controlled(3, one_qubit(0, 1, 1, 0));
        case GateKind::kMCZ: {
            std::vector<double> phases(std::size_t{1} << k, 0.0);
            phases.back() = kPi;
            return diagonal(phases);
        }
        case GateKind::kMCRy:
            return controlled(k, ry(g.params[0]));
        case GateKind::kDiagonal:
            return diagonal(g.params);
    }
    throw ArgumentError("gate_matrix: no site-local matrix for '" + std::string(gate_name(g.kind)) + "'");
}

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits == 0 || n_qubits > 30) {
        throw CapacityError("statevector supports 1 to 30 qubits");
    }
    amps_ = Vector::Zero(Eigen::Index{1} << n_qubits);
    amps_(0) = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, Vector amplitudes) : StateVector(n_qubits) {
    if (amplitudes.size() != amps_.size()) {
        throw ArgumentError("amplitude vector has the wrong length");
    }
    amps_ = std::move(amplitudes);
}

void StateVector::apply_matrix(std::span<const int> sites, const Matrix &u) {
    std::size_t k = sites.size();
    std::size_t dim = std::size_t{1} << k;
    std::vector<std::size_t> offsets(dim, 0);
    std::size_t mask = 0;
    for (std::size_t b = 0; b < k; b++) {
        std::size_t bit = std::size_t{1} << (n_ - 1 - sites[b]);
        mask |= bit;
        for (std::size_t x = 0; x < dim; x++) {
            if ((x >> (k - 1 - b)) & 1) {
                offsets[x] |= bit;
            }
        }
    }
    Vector in(dim);
    std::size_t total = std::size_t{1} << n_;
    for (std::size_t base = 0; base < total; base++) {
        if (base & mask) {
            continue;
        }
        for (std::size_t x = 0; x < dim; x++) {
            in(x) = amps_(base | offsets[x]);
        }
        Vector out = u * in;
        for (std::size_t x = 0; x < dim; x++) {
            amps_(base | offsets[x]) = out(x);
        }
    }
}

void StateVector::apply(const Gate &gate) {
    if (gate.kind == GateKind::kGlobalRotation) {
        Matrix u = global_rotation_qubit(gate.params[0], gate.params[1]);
        for (std::size_t q = 0; q < n_; q++) {
            int site = static_cast<int>(q);
            apply_matrix(std::span<const int>(&site, 1), u);
        }
        return;
    }
    apply_matrix(gate.sites, gate_matrix(gate));
}

void StateVector::run(const Circuit &circuit) {
    if (circuit.n_qubits != n_) {
        throw ArgumentError("circuit width does not match the statevector");
    }
    for (const auto &g : circuit.ops) {
        apply(g);
    }
}

Distribution StateVector::distribution() const {
    std::vector<double> probs(amps_.size());
    for (Eigen::Index i = 0; i < amps_.size(); i++) {
        probs[i] = std::norm(amps_(i));
    }
    return Distribution(n_, std::move(probs));
}

Vector simulate(const Circuit &circuit) {
    circuit.validate();
    StateVector sv(circuit.n_qubits);
    sv.run(circuit);
    return sv.amplitudes();
}

Distribution ideal_distribution(const Circuit &circuit) {
    circuit.validate();
    StateVector sv(circuit.n_qubits);
    sv.run(circuit);
    auto readout = circuit.readout_qubits();
    return select_bits(sv.distribution(), readout);
}

Matrix circuit_unitary(const Circuit &circuit) {
    circuit.validate();
    std::size_t dim = std::size_t{1} << circuit.n_qubits;
    Matrix u(dim, dim);
    for (std::size_t col = 0; col < dim; col++) {
        Vector basis = Vector::Zero(dim);
        basis(col) = 1.0;
        StateVector sv(circuit.n_qubits, std::move(basis));
        sv.run(circuit);
        u.col(col) = sv.amplitudes();
    }
    return u;
}

}  // namespace nasim

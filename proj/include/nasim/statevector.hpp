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

#include <cstddef>

#include "nasim/circuit.hpp"
#include "nasim/distribution.hpp"
#include "nasim/types.hpp"

namespace nasim {

// Qubit-level unitary of a gate on its listed sites (sites[0] most significant).
// Not defined for global rotations, which have no site list.
Matrix gate_matrix(const Gate &gate);
// 2x2 single-qubit block of a global rotation.
Matrix global_rotation_qubit(double phi, double theta);

// Noiseless pure-state simulator; reference for ideal output distributions.
class StateVector {
   public:
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, Vector amplitudes);

    std::size_t n_qubits() const {
        return n_;
    }
    const Vector &amplitudes() const {
        return amps_;
    }

    void apply(const Gate &gate);
    void apply_matrix(std::span<const int> sites, const Matrix &u);
    void run(const Circuit &circuit);
    Distribution distribution() const;

   private:
    std::size_t n_;
    Vector amps_;
};

Vector simulate(const Circuit &circuit);
// Noiseless distribution over the circuit's readout qubits.
Distribution ideal_distribution(const Circuit &circuit);
// Full 2^n unitary; intended for small circuits.
Matrix circuit_unitary(const Circuit &circuit);

}  // namespace nasim

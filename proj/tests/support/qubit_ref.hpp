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

// Textbook qubit matrices and an independent unitary builder for native circuits.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nasim/circuit.hpp"

namespace qref {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
inline constexpr double kPi = 3.14159265358979323846;

inline Mat m2(cplx a, cplx b, cplx c, cplx d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}
// exp(-i theta (cos phi X + sin phi Y) / 2)
inline Mat r_phi(double phi, double theta) {
    cplx i(0, 1);
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return m2(c, -i * s * std::exp(-i * phi), -i * s * std::exp(i * phi), c);
}
inline Mat rz(double theta) {
    cplx i(0, 1);
    return m2(std::exp(-i * (theta / 2)), 0, 0, std::exp(i * (theta / 2)));
}

// Operator on `sites` of an n-qubit register (sites[0] most significant).
inline Mat embed(const Mat &op, const std::vector<int> &sites, int n) {
    int dim = 1 << n;
    int k = static_cast<int>(sites.size());
    Mat out = Mat::Zero(dim, dim);
    for (int r = 0; r < dim; r++) {
        for (int c = 0; c < dim; c++) {
            int rest_r = r, rest_c = c;
            int sr = 0, sc = 0;
            for (int i = 0; i < k; i++) {
                int bit = n - 1 - sites[i];
                sr = (sr << 1) | ((r >> bit) & 1);
                sc = (sc << 1) | ((c >> bit) & 1);
                rest_r &= ~(1 << bit);
                rest_c &= ~(1 << bit);
            }
            if (rest_r == rest_c) {
                out(r, c) = op(sr, sc);
            }
        }
    }
    return out;
}

inline Mat native_unitary(const nasim::Circuit &c) {
    int n = static_cast<int>(c.n_qubits);
    Mat u = Mat::Identity(1 << n, 1 << n);
    for (const auto &g : c.ops) {
        Mat step;
        switch (g.kind) {
            case nasim::GateKind::kGlobalRotation: {
                step = Mat::Identity(1, 1);
                Mat r = r_phi(g.params[0], g.params[1]);
                for (int q = 0; q < n; q++) {
                    Mat next(step.rows() * 2, step.cols() * 2);
                    for (int i = 0; i < step.rows(); i++) {
                        for (int j = 0; j < step.cols(); j++) {
                            next.block(2 * i, 2 * j, 2, 2) = step(i, j) * r;
                        }
                    }
                    step = next;
                }
                break;
            }
            case nasim::GateKind::kRz:
                step = embed(rz(g.params[0]), g.sites, n);
                break;
            case nasim::GateKind::kCZ: {
                Mat cz = Mat::Identity(4, 4);
                cz(3, 3) = -1;
                step = embed(cz, g.sites, n);
                break;
            }
            default:
                throw std::runtime_error("native_unitary: abstract gate");
        }
        u = step * u;
    }
    return u;
}

// Distance between unitaries modulo a global phase.
inline double phase_distance(const Mat &a, const Mat &b) {
    cplx overlap = (b.adjoint() * a).trace();
    if (std::abs(overlap) < 1e-12) {
        return (a - b).cwiseAbs().maxCoeff();
    }
    cplx phase = overlap / std::abs(overlap);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace qref

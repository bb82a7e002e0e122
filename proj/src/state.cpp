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

#include "nasim/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "nasim/errors.hpp"

namespace nasim {

namespace {

// Diagonal symbol for each ququart level.
constexpr int kDiagonalSymbol[4] = {0, 3, 4, 5};
// Symbol of the transposed entry.
constexpr int kTransposeSymbol[kSymbols] = {0, 2, 1, 3, 4, 5};

constexpr double kClosureTol = 1e-12;
constexpr double kUnitaryTol = 1e-12;

void check_sites(const QuquartState &state, std::span<const std::size_t> sites) {
    for (std::size_t i = 0; i < sites.size(); i++) {
        if (sites[i] >= state.n_sites()) {
            throw ArgumentError(
                "site " + std::to_string(sites[i]) + " out of range for " + std::to_string(state.n_sites()) +
                " sites");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (sites[i] == sites[j]) {
                throw ArgumentError("site " + std::to_string(sites[i]) + " listed twice");
            }
        }
    }
}

void check_unitary(const Matrix &u) {
    if (u.rows() != u.cols()) {
        throw ValidationError("unitary must be square");
    }
    double err = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (!(err <= kUnitaryTol)) {
        std::ostringstream msg;
        msg << "matrix is not unitary (|U^dag U - I| = " << err << ")";
        throw ValidationError(msg.str());
    }
}

// Local matrix index for a site tuple: site 0 of the tuple most significant.
struct LocalPair {
    int row;
    int col;
};

LocalPair local_pair(int symbol_index, std::size_t arity) {
    if (arity == 1) {
        return {kSymbolRow[symbol_index], kSymbolCol[symbol_index]};
    }
    int sa = symbol_index / kSymbols;
    int sb = symbol_index % kSymbols;
    return {kSymbolRow[sa] * 4 + kSymbolRow[sb], kSymbolCol[sa] * 4 + kSymbolCol[sb]};
}

int pattern_index(int row, int col, std::size_t arity) {
    if (arity == 1) {
        return symbol_of(row, col);
    }
    int sa = symbol_of(row / 4, col / 4);
    int sb = symbol_of(row % 4, col % 4);
    if (sa < 0 || sb < 0) {
        return -1;
    }
    return sa * kSymbols + sb;
}

}  // namespace

int symbol_of(int row_level, int col_level) {
    if (row_level < 2 && col_level < 2) {
        return row_level * 2 + col_level;
    }
    if (row_level == col_level) {
        return row_level + 2;
    }
    return -1;
}

std::size_t QuquartState::required_bytes(std::size_t n_sites) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    std::size_t bytes = sizeof(cplx);
    for (std::size_t k = 0; k < n_sites; k++) {
        if (bytes > kMax / kSymbols) {
            return kMax;
        }
        bytes *= kSymbols;
    }
    return bytes;
}

std::size_t QuquartState::max_sites(std::size_t memory_cap) {
    std::size_t n = 0;
    while (required_bytes(n + 1) <= memory_cap) {
        n++;
    }
    return n;
}

QuquartState::QuquartState(std::size_t n_sites, std::size_t memory_cap) : n_sites_(n_sites) {
    if (n_sites == 0) {
        throw CapacityError("a register needs at least one site");
    }
    std::size_t need = required_bytes(n_sites);
    if (need > memory_cap) {
        throw CapacityError(
            std::to_string(n_sites) + " sites need " + std::to_string(need) + " bytes, above the memory cap of " +
            std::to_string(memory_cap));
    }
    strides_.resize(n_sites);
    std::size_t s = 1;
    for (std::size_t k = n_sites; k-- > 0;) {
        strides_[k] = s;
        s *= kSymbols;
    }
    entries_.assign(s, cplx(0.0, 0.0));
    entries_[0] = 1.0;
}

QuquartState QuquartState::from_pure(std::span<const cplx> amplitudes, std::size_t memory_cap) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amplitudes.size()) {
        n++;
    }
    if ((std::size_t{1} << n) != amplitudes.size() || n == 0) {
        throw ArgumentError("amplitude vector length must be a power of two >= 2");
    }
    QuquartState state(n, memory_cap);
    state.entries_[0] = 0.0;
    for (std::size_t r = 0; r < amplitudes.size(); r++) {
        for (std::size_t c = 0; c < amplitudes.size(); c++) {
            std::size_t index = 0;
            for (std::size_t k = 0; k < n; k++) {
                int rb = static_cast<int>((r >> (n - 1 - k)) & 1);
                int cb = static_cast<int>((c >> (n - 1 - k)) & 1);
                index += static_cast<std::size_t>(rb * 2 + cb) * state.strides_[k];
            }
            state.entries_[index] = amplitudes[r] * std::conj(amplitudes[c]);
        }
    }
    return state;
}

cplx QuquartState::element(std::span<const int> row_levels, std::span<const int> col_levels) const {
    if (row_levels.size() != n_sites_ || col_levels.size() != n_sites_) {
        throw ArgumentError("element query needs one level per site");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < n_sites_; k++) {
        int r = row_levels[k];
        int c = col_levels[k];
        if (r < 0 || r > 3 || c < 0 || c > 3) {
            throw ArgumentError("ququart level must be in 0..3");
        }
        int s = symbol_of(r, c);
        if (s < 0) {
            return 0.0;
        }
        index += static_cast<std::size_t>(s) * strides_[k];
    }
    return entries_[index];
}

double QuquartState::trace() const {
    std::size_t count = std::size_t{1} << (2 * n_sites_);
    double t = 0.0;
    for (std::size_t q = 0; q < count; q++) {
        std::size_t index = 0;
        for (std::size_t k = 0; k < n_sites_; k++) {
            std::size_t level = (q >> (2 * (n_sites_ - 1 - k))) & 3;
            index += static_cast<std::size_t>(kDiagonalSymbol[level]) * strides_[k];
        }
        t += entries_[index].real();
    }
    return t;
}

double QuquartState::hermiticity_error() const {
    double err = 0.0;
    for (std::size_t i = 0; i < entries_.size(); i++) {
        std::size_t rest = i;
        std::size_t j = 0;
        for (std::size_t k = 0; k < n_sites_; k++) {
            std::size_t digit = rest / strides_[k];
            rest %= strides_[k];
            j += static_cast<std::size_t>(kTransposeSymbol[digit]) * strides_[k];
        }
        err = std::max(err, std::abs(entries_[i] - std::conj(entries_[j])));
    }
    return err;
}

QuquartState init_state(std::size_t n_sites, std::size_t memory_cap) {
    return QuquartState(n_sites, memory_cap);
}

Superop::Superop(std::size_t arity, Matrix m) : arity_(arity), matrix_(std::move(m)) {
    for (Eigen::Index r = 0; r < matrix_.rows(); r++) {
        for (Eigen::Index c = 0; c < matrix_.cols(); c++) {
            if (matrix_(r, c) != cplx(0.0, 0.0)) {
                nonzeros_.push_back({static_cast<std::uint16_t>(r), static_cast<std::uint16_t>(c), matrix_(r, c)});
            }
        }
    }
}

Superop Superop::from_kraus(const KrausSet &kraus) {
    std::size_t d = kraus.dim();
    if (d != 4 && d != 16) {
        throw ValidationError("channel '" + kraus.label + "' must act on 1 or 2 sites");
    }
    std::size_t arity = d == 4 ? 1 : 2;
    int n_pattern = arity == 1 ? kSymbols : kSymbols * kSymbols;
    int n_local = static_cast<int>(d);

    Matrix s = Matrix::Zero(n_pattern, n_pattern);
    double leak = 0.0;
    for (int in = 0; in < n_pattern; in++) {
        LocalPair src = local_pair(in, arity);
        for (int r = 0; r < n_local; r++) {
            for (int c = 0; c < n_local; c++) {
                cplx v = 0.0;
                for (const auto &a : kraus.operators) {
                    v += a(r, src.row) * std::conj(a(c, src.col));
                }
                int out = pattern_index(r, c, arity);
                if (out < 0) {
                    leak = std::max(leak, std::abs(v));
                } else {
                    s(out, in) = v;
                }
            }
        }
    }
    if (leak > kClosureTol) {
        std::ostringstream msg;
        msg << "channel '" << kraus.label << "' maps the sparse pattern outside itself (leakage " << leak << ")";
        throw InternalError(msg.str());
    }
    return Superop(arity, std::move(s));
}

Superop Superop::from_unitary(const Matrix &u) {
    check_unitary(u);
    return from_kraus(KrausSet{"unitary", {u}});
}

Superop Superop::identity(std::size_t arity) {
    int n = arity == 1 ? kSymbols : kSymbols * kSymbols;
    return Superop(arity, Matrix::Identity(n, n));
}

Superop Superop::then(const Superop &next) const {
    if (next.arity_ != arity_) {
        throw ArgumentError("cannot compose maps of different arity");
    }
    return Superop(arity_, next.matrix_ * matrix_);
}

Superop Superop::on_pair(const Superop &single, int position) {
    if (single.arity_ != 1) {
        throw ArgumentError("on_pair expects a single-site map");
    }
    Matrix id = Matrix::Identity(kSymbols, kSymbols);
    return Superop(2, position == 0 ? kron(single.matrix_, id) : kron(id, single.matrix_));
}

Superop Superop::swapped() const {
    if (arity_ != 2) {
        return *this;
    }
    Matrix out(matrix_.rows(), matrix_.cols());
    auto perm = [](Eigen::Index i) { return (i % kSymbols) * kSymbols + i / kSymbols; };
    for (Eigen::Index r = 0; r < matrix_.rows(); r++) {
        for (Eigen::Index c = 0; c < matrix_.cols(); c++) {
            out(perm(r), perm(c)) = matrix_(r, c);
        }
    }
    return Superop(2, std::move(out));
}

void apply_superop(QuquartState &state, std::span<const std::size_t> sites, const Superop &op) {
    if (sites.size() != op.arity()) {
        throw ArgumentError(
            "map acts on " + std::to_string(op.arity()) + " site(s) but " + std::to_string(sites.size()) + " given");
    }
    check_sites(state, sites);

    auto data = state.entries();
    auto nz = op.nonzeros();
    std::size_t total = data.size();

    if (op.arity() == 1) {
        std::size_t st = state.stride(sites[0]);
        std::size_t block = st * kSymbols;
        cplx in[kSymbols];
        cplx out[kSymbols];
        for (std::size_t outer = 0; outer < total; outer += block) {
            for (std::size_t inner = 0; inner < st; inner++) {
                std::size_t base = outer + inner;
                for (int s = 0; s < kSymbols; s++) {
                    in[s] = data[base + s * st];
                    out[s] = 0.0;
                }
                for (const auto &e : nz) {
                    out[e.row] += e.value * in[e.col];
                }
                for (int s = 0; s < kSymbols; s++) {
                    data[base + s * st] = out[s];
                }
            }
        }
        return;
    }

    constexpr int kPair = kSymbols * kSymbols;
    std::size_t st_a = state.stride(sites[0]);
    std::size_t st_b = state.stride(sites[1]);
    std::size_t offsets[kPair];
    for (int sa = 0; sa < kSymbols; sa++) {
        for (int sb = 0; sb < kSymbols; sb++) {
            offsets[sa * kSymbols + sb] = sa * st_a + sb * st_b;
        }
    }
    std::size_t st_hi = std::max(st_a, st_b);
    std::size_t st_lo = std::min(st_a, st_b);
    std::size_t block_hi = st_hi * kSymbols;
    std::size_t block_lo = st_lo * kSymbols;
    cplx in[kPair];
    cplx out[kPair];
    for (std::size_t outer = 0; outer < total; outer += block_hi) {
        for (std::size_t mid = 0; mid < st_hi; mid += block_lo) {
            for (std::size_t inner = 0; inner < st_lo; inner++) {
                std::size_t base = outer + mid + inner;
                for (int s = 0; s < kPair; s++) {
                    in[s] = data[base + offsets[s]];
                    out[s] = 0.0;
                }
                for (const auto &e : nz) {
                    out[e.row] += e.value * in[e.col];
                }
                for (int s = 0; s < kPair; s++) {
                    data[base + offsets[s]] = out[s];
                }
            }
        }
    }
}

void apply_channel(QuquartState &state, std::span<const std::size_t> sites, const KrausSet &channel) {
    channel.validate(1e-10);
    if (sites.size() != channel.arity()) {
        throw ArgumentError(
            "channel '" + channel.label + "' acts on " + std::to_string(channel.arity()) + " site(s) but " +
            std::to_string(sites.size()) + " given");
    }
    check_sites(state, sites);
    apply_superop(state, sites, Superop::from_kraus(channel));
}

void apply_global_unitary(QuquartState &state, const Matrix &u) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw ValidationError("global unitary must be 4x4");
    }
    check_unitary(u);
    double off = 0.0;
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            if (r >= 2 || c >= 2) {
                cplx expected = r == c ? cplx(1.0) : cplx(0.0);
                off = std::max(off, std::abs(u(r, c) - expected));
            }
        }
    }
    if (off > kUnitaryTol) {
        throw ValidationError("global unitary must act as the identity on the loss levels");
    }
    Superop op = Superop::from_unitary(u);
    for (std::size_t k = 0; k < state.n_sites(); k++) {
        std::size_t site[1] = {k};
        apply_superop(state, site, op);
    }
}

void apply_unitary(QuquartState &state, std::span<const std::size_t> sites, const Matrix &u) {
    std::size_t expected = sites.size() == 1 ? 4 : 16;
    if (sites.size() < 1 || sites.size() > 2 || static_cast<std::size_t>(u.rows()) != expected) {
        throw ArgumentError("unitary dimension does not match the number of sites");
    }
    apply_superop(state, sites, Superop::from_unitary(u));
}

QuquartDistribution ququart_distribution(const QuquartState &state) {
    std::size_t n = state.n_sites();
    std::size_t count = std::size_t{1} << (2 * n);
    std::vector<double> probs(count);
    auto data = state.entries();
    for (std::size_t q = 0; q < count; q++) {
        std::size_t index = 0;
        for (std::size_t k = 0; k < n; k++) {
            std::size_t level = (q >> (2 * (n - 1 - k))) & 3;
            index += static_cast<std::size_t>(kDiagonalSymbol[level]) * state.stride(k);
        }
        probs[q] = data[index].real();
    }
    return QuquartDistribution(n, std::move(probs));
}

}  // namespace nasim

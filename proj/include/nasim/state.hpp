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
#include <cstdint>
#include <span>
#include <vector>

#include "nasim/channels.hpp"
#include "nasim/distribution.hpp"
#include "nasim/types.hpp"

namespace nasim {

// 8 GiB: enough for 11 sites (6^11 * 16 bytes ≈ 5.8 GB).
inline constexpr std::size_t kDefaultMemoryCap = std::size_t{8} << 30;

// Per-site entries of the density matrix that can be nonzero. A site is either
// coherent within the computational block {|0>, |1>} or sits incoherently in one
// of the two loss levels, so only these six (row, col) pairs ever appear.
//
//   symbol  0    1    2    3    4      5
//   (r, c) (0,0)(0,1)(1,0)(1,1)(l0,l0)(l1,l1)
inline constexpr int kSymbols = 6;
inline constexpr int kSymbolRow[kSymbols] = {0, 0, 1, 1, 2, 3};
inline constexpr int kSymbolCol[kSymbols] = {0, 1, 0, 1, 2, 3};
// Symbol for the local matrix entry (r, c), or -1 if outside the pattern.
int symbol_of(int row_level, int col_level);

// Density matrix of n ququarts stored in the 6^n sparse block form.
//
// Entries live in one flat array indexed by a mixed-radix key with one base-6
// digit per site; site 0 is the most significant digit.
class QuquartState {
   public:
    // |0...0><0...0|. Throws CapacityError for n_sites == 0 or when 6^n entries
    // exceed memory_cap bytes.
    explicit QuquartState(std::size_t n_sites, std::size_t memory_cap = kDefaultMemoryCap);

    // Bytes needed for n sites; saturates at SIZE_MAX.
    static std::size_t required_bytes(std::size_t n_sites);
    static std::size_t max_sites(std::size_t memory_cap);

    // Pure computational state from 2^n qubit amplitudes (qubit 0 most significant).
    static QuquartState from_pure(std::span<const cplx> amplitudes, std::size_t memory_cap = kDefaultMemoryCap);

    std::size_t n_sites() const {
        return n_sites_;
    }
    std::size_t size() const {
        return entries_.size();
    }
    std::size_t bytes() const {
        return entries_.capacity() * sizeof(cplx);
    }
    std::size_t stride(std::size_t site) const {
        return strides_[site];
    }
    std::span<cplx> entries() {
        return entries_;
    }
    std::span<const cplx> entries() const {
        return entries_;
    }

    // Entry <row|rho|col> of the full 4^n x 4^n matrix; levels are 0, 1, 2 (l0), 3 (l1).
    // Entries outside the pattern are exactly zero.
    cplx element(std::span<const int> row_levels, std::span<const int> col_levels) const;

    double trace() const;
    // max |rho_rc - conj(rho_cr)| over stored entries.
    double hermiticity_error() const;

   private:
    std::size_t n_sites_;
    std::vector<std::size_t> strides_;
    std::vector<cplx> entries_;
};

QuquartState init_state(std::size_t n_sites, std::size_t memory_cap = kDefaultMemoryCap);

// Linear map on the pattern entries of one or two sites (6x6 or 36x36).
//
// Built from a Kraus set: S[s'][s] = Σ_i A_i[r', r] conj(A_i[c', c]). Building
// checks that the map sends the pattern into itself; anything that would produce
// an entry outside the pattern is rejected with InternalError.
class Superop {
   public:
    static Superop from_kraus(const KrausSet &kraus);
    static Superop from_unitary(const Matrix &u);
    static Superop identity(std::size_t arity);

    std::size_t arity() const {
        return arity_;
    }
    const Matrix &matrix() const {
        return matrix_;
    }

    // Applies `this` first, then `next`.
    Superop then(const Superop &next) const;
    // Embeds a single-site map on position 0 or 1 of a two-site map.
    static Superop on_pair(const Superop &single, int position);
    // Exchanges the roles of the two sites of a two-site map.
    Superop swapped() const;

    struct Entry {
        std::uint16_t row;
        std::uint16_t col;
        cplx value;
    };
    std::span<const Entry> nonzeros() const {
        return nonzeros_;
    }

   private:
    Superop(std::size_t arity, Matrix m);
    std::size_t arity_ = 1;
    Matrix matrix_;
    std::vector<Entry> nonzeros_;
};

// ρ ← Σ_i (A_i ⊗ I) ρ (A_i† ⊗ I). Validates the channel (CPTP within 1e-10),
// the site list (distinct, in range, matching the channel arity) and pattern closure.
void apply_channel(QuquartState &state, std::span<const std::size_t> sites, const KrausSet &channel);
void apply_superop(QuquartState &state, std::span<const std::size_t> sites, const Superop &op);

// ρ ← u^{⊗n} ρ u^{⊗n}†, one site at a time. u must be a 4x4 unitary acting as the
// identity on the loss levels.
void apply_global_unitary(QuquartState &state, const Matrix &u);
// u is 4x4 (one site) or 16x16 (two sites, first listed site most significant).
void apply_unitary(QuquartState &state, std::span<const std::size_t> sites, const Matrix &u);

// Exact populations of all 4^n ququart basis strings.
QuquartDistribution ququart_distribution(const QuquartState &state);

}  // namespace nasim

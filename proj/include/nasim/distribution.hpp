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
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nasim {

// Probability distribution over n-bit strings, stored densely (2^n entries).
//
// Bit string character i is qubit i; the dense index puts qubit 0 in the most
// significant position, so index 0b110 is the string "110".
class Distribution {
   public:
    Distribution() = default;
    explicit Distribution(std::size_t n_bits);
    Distribution(std::size_t n_bits, std::vector<double> probs);

    static Distribution uniform(std::size_t n_bits);
    static Distribution delta(const std::string &bits);
    // Keys must all have the same length; missing strings get probability 0.
    static Distribution from_map(const std::map<std::string, double> &entries);

    std::size_t n_bits() const {
        return n_bits_;
    }
    std::size_t size() const {
        return probs_.size();
    }
    double operator[](std::size_t index) const {
        return probs_[index];
    }
    double &operator[](std::size_t index) {
        return probs_[index];
    }
    double prob(const std::string &bits) const;
    std::span<const double> probs() const {
        return probs_;
    }
    double total() const;

    // Throws ValidationError unless entries are >= -tol and sum to 1 within tol.
    void validate(double tol = 1e-9) const;

    // Sparse view; entries with probability <= cutoff are omitted.
    std::map<std::string, double> to_map(double cutoff = 0.0) const;

    static std::string bits_of(std::size_t index, std::size_t n_bits);
    static std::size_t index_of(const std::string &bits);

   private:
    std::size_t n_bits_ = 0;
    std::vector<double> probs_;
};

// Bit i of the result is bit positions[i] of the input; other bits are summed out.
Distribution select_bits(const Distribution &d, std::span<const int> positions);

// Distribution over ququart strings with levels 0, 1, l0, l1 (digits 0..3).
class QuquartDistribution {
   public:
    QuquartDistribution() = default;
    QuquartDistribution(std::size_t n_sites, std::vector<double> probs);

    std::size_t n_sites() const {
        return n_sites_;
    }
    std::size_t size() const {
        return probs_.size();
    }
    double operator[](std::size_t index) const {
        return probs_[index];
    }
    std::span<const double> probs() const {
        return probs_;
    }
    double total() const;

    // Labels are space separated level names, e.g. "0 l1 1".
    double prob(const std::string &label) const;
    static std::string label_of(std::size_t index, std::size_t n_sites);
    static std::size_t index_of(const std::string &label);
    std::map<std::string, double> to_map(double cutoff = 0.0) const;

   private:
    std::size_t n_sites_ = 0;
    std::vector<double> probs_;
};

}  // namespace nasim

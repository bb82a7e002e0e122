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

#include "nasim/distribution.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "nasim/errors.hpp"

namespace nasim {

namespace {

constexpr const char *kLevelNames[4] = {"0", "1", "l0", "l1"};

std::size_t checked_pow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t k = 0; k < exp; k++) {
        if (out > (std::size_t{1} << 40) / base) {
            throw CapacityError("distribution over " + std::to_string(exp) + " sites is too large");
        }
        out *= base;
    }
    return out;
}

}  // namespace

Distribution::Distribution(std::size_t n_bits) : n_bits_(n_bits), probs_(checked_pow(2, n_bits), 0.0) {
}

Distribution::Distribution(std::size_t n_bits, std::vector<double> probs) : n_bits_(n_bits), probs_(std::move(probs)) {
    if (probs_.size() != checked_pow(2, n_bits)) {
        throw ArgumentError(
            "distribution over " + std::to_string(n_bits) + " bits needs " + std::to_string(checked_pow(2, n_bits)) +
            " entries, got " + std::to_string(probs_.size()));
    }
}

Distribution Distribution::uniform(std::size_t n_bits) {
    Distribution d(n_bits);
    double v = 1.0 / static_cast<double>(d.size());
    for (auto &p : d.probs_) {
        p = v;
    }
    return d;
}

Distribution Distribution::delta(const std::string &bits) {
    Distribution d(bits.size());
    d.probs_[index_of(bits)] = 1.0;
    return d;
}

Distribution Distribution::from_map(const std::map<std::string, double> &entries) {
    if (entries.empty()) {
        throw ValidationError("distribution has no entries");
    }
    std::size_t n = entries.begin()->first.size();
    Distribution d(n);
    for (const auto &[bits, p] : entries) {
        if (bits.size() != n) {
            throw ValidationError(
                "bitstring '" + bits + "' has length " + std::to_string(bits.size()) + ", expected " +
                std::to_string(n));
        }
        if (!std::isfinite(p)) {
            throw ValidationError("probability of '" + bits + "' is not finite");
        }
        d.probs_[index_of(bits)] += p;
    }
    return d;
}

double Distribution::prob(const std::string &bits) const {
    if (bits.size() != n_bits_) {
        throw ArgumentError("bitstring '" + bits + "' does not have " + std::to_string(n_bits_) + " bits");
    }
    return probs_[index_of(bits)];
}

double Distribution::total() const {
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

void Distribution::validate(double tol) const {
    for (std::size_t i = 0; i < probs_.size(); i++) {
        if (!(probs_[i] >= -tol)) {
            throw ValidationError("negative probability at '" + bits_of(i, n_bits_) + "'");
        }
    }
    double t = total();
    if (std::abs(t - 1.0) > tol) {
        std::ostringstream msg;
        msg << "distribution sums to " << t << ", expected 1";
        throw ValidationError(msg.str());
    }
}

std::map<std::string, double> Distribution::to_map(double cutoff) const {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < probs_.size(); i++) {
        if (probs_[i] > cutoff) {
            out.emplace(bits_of(i, n_bits_), probs_[i]);
        }
    }
    return out;
}

std::string Distribution::bits_of(std::size_t index, std::size_t n_bits) {
    std::string s(n_bits, '0');
    for (std::size_t i = 0; i < n_bits; i++) {
        if ((index >> (n_bits - 1 - i)) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

std::size_t Distribution::index_of(const std::string &bits) {
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ValidationError("invalid character in bitstring '" + bits + "'");
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    return index;
}

Distribution select_bits(const Distribution &d, std::span<const int> positions) {
    std::size_t n = d.n_bits();
    for (int p : positions) {
        if (p < 0 || static_cast<std::size_t>(p) >= n) {
            throw ArgumentError("bit position " + std::to_string(p) + " out of range");
        }
    }
    Distribution out(positions.size());
    std::size_t m = positions.size();
    for (std::size_t i = 0; i < d.size(); i++) {
        if (d[i] == 0.0) {
            continue;
        }
        std::size_t j = 0;
        for (std::size_t k = 0; k < m; k++) {
            std::size_t bit = (i >> (n - 1 - static_cast<std::size_t>(positions[k]))) & 1;
            j |= bit << (m - 1 - k);
        }
        out[j] += d[i];
    }
    return out;
}

QuquartDistribution::QuquartDistribution(std::size_t n_sites, std::vector<double> probs)
    : n_sites_(n_sites), probs_(std::move(probs)) {
    if (probs_.size() != checked_pow(4, n_sites)) {
        throw ArgumentError("ququart distribution size does not match site count");
    }
}

double QuquartDistribution::total() const {
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

double QuquartDistribution::prob(const std::string &label) const {
    std::istringstream in(label);
    std::string token;
    std::size_t count = 0;
    while (in >> token) {
        count++;
    }
    if (count != n_sites_) {
        throw ArgumentError("label '" + label + "' does not have " + std::to_string(n_sites_) + " sites");
    }
    return probs_[index_of(label)];
}

std::string QuquartDistribution::label_of(std::size_t index, std::size_t n_sites) {
    std::string out;
    for (std::size_t i = 0; i < n_sites; i++) {
        std::size_t level = (index >> (2 * (n_sites - 1 - i))) & 3;
        if (i > 0) {
            out += ' ';
        }
        out += kLevelNames[level];
    }
    return out;
}

std::size_t QuquartDistribution::index_of(const std::string &label) {
    std::istringstream in(label);
    std::string token;
    std::size_t index = 0;
    std::size_t count = 0;
    while (in >> token) {
        std::size_t level = 4;
        for (std::size_t k = 0; k < 4; k++) {
            if (token == kLevelNames[k]) {
                level = k;
            }
        }
        if (level == 4) {
            throw ValidationError("unknown ququart level '" + token + "' in '" + label + "'");
        }
        index = (index << 2) | level;
        count++;
    }
    if (count == 0) {
        throw ValidationError("empty ququart label");
    }
    return index;
}

std::map<std::string, double> QuquartDistribution::to_map(double cutoff) const {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < probs_.size(); i++) {
        if (probs_[i] > cutoff) {
            out.emplace(label_of(i, n_sites_), probs_[i]);
        }
    }
    return out;
}

}  // namespace nasim

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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nasim/channels.hpp"
#include "nasim/circuit.hpp"
#include "nasim/distribution.hpp"

namespace nasim {

enum class NelderMeadStatus {
    kConverged,      // simplex diameter below xtol
    kConvergedFlat,  // objective spread below ftol while the simplex is still wide
    kMaxEvals,
};

std::string_view nelder_mead_status_name(NelderMeadStatus s);

struct NelderMeadOptions {
    double xtol = 1e-8;
    double ftol = 1e-12;
    std::size_t max_evals = 2000;
    // Offset of the initial simplex vertices along each axis.
    double initial_step = 0.5;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t evals = 0;
    NelderMeadStatus status = NelderMeadStatus::kMaxEvals;
    // Best objective value after each evaluation.
    std::vector<double> trace;
};

using Objective = std::function<double(std::span<const double>)>;

// Minimizes with reflection 1, expansion 2, contraction 0.5 and shrink 0.5.
// Throws ArgumentError if x0 is empty or the objective is not finite at x0;
// non-finite values elsewhere count as +inf.
NelderMeadResult nelder_mead(const Objective &objective, std::vector<double> x0, const NelderMeadOptions &options = {});

struct FitReference {
    Circuit circuit;  // abstract or native; lowered once, all-to-all
    Distribution measured;
};

struct FitProblem {
    std::vector<FitReference> references;
    // Start point; parameters not listed in free_params keep these values.
    NoiseParams initial;
    std::vector<std::string> free_params = default_free_params();
    NelderMeadOptions options;
    // Runs after the first start from `initial`, each from a seeded perturbation.
    std::size_t restarts = 5;
    std::uint64_t seed = 0;
    double restart_spread = 0.5;
    std::size_t threads = 1;

    // All probabilities and the CZ phase shift. T1, T2*, the equilibrium
    // population and the pulse durations stay fixed.
    static std::vector<std::string> default_free_params();
    // Throws ValidationError for unknown, duplicate or never-free names and for an
    // empty reference list.
    void validate() const;
};

struct FitResult {
    NoiseParams params;
    double fidelity = 0.0;  // mean classical fidelity over the references
    double initial_fidelity = 0.0;
    std::size_t evals = 0;
    // Best mean fidelity after each evaluation of the winning start.
    std::vector<double> trace;
    std::vector<NelderMeadStatus> statuses;  // one per start
    std::size_t best_start = 0;
};

// Mean classical fidelity between each reference's measurement and its noisy
// simulation. A uniform measured distribution scores by f_s.
double mean_reference_fidelity(const std::vector<FitReference> &references, const NoiseParams &params);

// Maximizes mean_reference_fidelity over the free parameters with Nelder-Mead on
// transformed coordinates (logit for probabilities, log for times, scaled angles).
FitResult fit_noise_params(const FitProblem &problem);

// Every *.json external-circuit file in dir, in file-name order. Throws IoError
// for a missing directory and ValidationError when it holds no references.
std::vector<FitReference> load_references(const std::string &dir);

// Applies {"noise", "free_params", "restarts", "seed", "max_evals", "xtol",
// "ftol", "initial_step", "restart_spread", "threads"} to a problem; errors name the field.
void apply_fit_config(FitProblem &problem, const nlohmann::json &config, const std::string &base_dir = ".");

nlohmann::json fit_report_json(const FitProblem &problem, const FitResult &result);

}  // namespace nasim

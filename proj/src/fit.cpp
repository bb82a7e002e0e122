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

#include "nasim/fit.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "nasim/bench.hpp"
#include "nasim/errors.hpp"
#include "nasim/metrics.hpp"
#include "nasim/runner.hpp"

namespace nasim {

using nlohmann::json;

std::string_view nelder_mead_status_name(NelderMeadStatus s) {
    switch (s) {
        case NelderMeadStatus::kConverged:
            return "converged";
        case NelderMeadStatus::kConvergedFlat:
            return "converged-flat";
        case NelderMeadStatus::kMaxEvals:
            return "max-evals";
    }
    return "max-evals";
}

NelderMeadResult nelder_mead(const Objective &objective, std::vector<double> x0, const NelderMeadOptions &options) {
    const std::size_t n = x0.size();
    if (n == 0) {
        throw ArgumentError("nelder_mead: need at least one dimension");
    }
    NelderMeadResult result;
    double best = std::numeric_limits<double>::infinity();
    auto eval = [&](const std::vector<double> &x) {
        double v = objective(x);
        if (!std::isfinite(v)) {
            v = std::numeric_limits<double>::infinity();
        }
        result.evals++;
        best = std::min(best, v);
        result.trace.push_back(best);
        return v;
    };

    double f0 = objective(x0);
    if (!std::isfinite(f0)) {
        throw ArgumentError("nelder_mead: objective is not finite at the starting point");
    }
    result.evals = 1;
    best = f0;
    result.trace.push_back(f0);

    std::vector<std::vector<double>> pts{x0};
    std::vector<double> fv{f0};
    for (std::size_t i = 0; i < n; i++) {
        std::vector<double> x = x0;
        x[i] += options.initial_step;
        fv.push_back(eval(x));
        pts.push_back(std::move(x));
    }

    std::vector<std::size_t> order(n + 1);
    auto point = [&](const std::vector<double> &a, const std::vector<double> &b, double t) {
        // a + t (b - a)
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; k++) {
            out[k] = a[k] + t * (b[k] - a[k]);
        }
        return out;
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> sp;
        std::vector<double> sf;
        for (std::size_t i : order) {
            sp.push_back(pts[i]);
            sf.push_back(fv[i]);
        }
        pts = std::move(sp);
        fv = std::move(sf);

        double diameter = 0.0;
        double spread = 0.0;
        for (std::size_t i = 1; i <= n; i++) {
            for (std::size_t k = 0; k < n; k++) {
                diameter = std::max(diameter, std::abs(pts[i][k] - pts[0][k]));
            }
            spread = std::max(spread, std::abs(fv[i] - fv[0]));
        }
        if (diameter < options.xtol) {
            result.status = NelderMeadStatus::kConverged;
            break;
        }
        if (spread < options.ftol) {
            result.status = NelderMeadStatus::kConvergedFlat;
            break;
        }
        if (result.evals >= options.max_evals) {
            result.status = NelderMeadStatus::kMaxEvals;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t k = 0; k < n; k++) {
                centroid[k] += pts[i][k] / static_cast<double>(n);
            }
        }
        const std::vector<double> &worst = pts[n];
        std::vector<double> xr = point(centroid, worst, -1.0);
        double fr = eval(xr);
        if (fr < fv[0]) {
            std::vector<double> xe = point(centroid, worst, -2.0);
            double fe = eval(xe);
            if (fe < fr) {
                pts[n] = std::move(xe);
                fv[n] = fe;
            } else {
                pts[n] = std::move(xr);
                fv[n] = fr;
            }
            continue;
        }
        if (fr < fv[n - 1]) {
            pts[n] = std::move(xr);
            fv[n] = fr;
            continue;
        }
        bool shrink = false;
        if (fr < fv[n]) {
            std::vector<double> xc = point(centroid, xr, 0.5);
            double fc = eval(xc);
            if (fc <= fr) {
                pts[n] = std::move(xc);
                fv[n] = fc;
            } else {
                shrink = true;
            }
        } else {
            std::vector<double> xc = point(centroid, worst, 0.5);
            double fc = eval(xc);
            if (fc < fv[n]) {
                pts[n] = std::move(xc);
                fv[n] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 1; i <= n; i++) {
                pts[i] = point(pts[0], pts[i], 0.5);
                fv[i] = eval(pts[i]);
            }
        }
    }
    result.x = pts[0];
    result.f = fv[0];
    return result;
}

std::vector<std::string> FitProblem::default_free_params() {
    std::vector<std::string> names;
    for (const ParamInfo &info : noise_param_table()) {
        if ((info.kind == ParamKind::kProbability && info.name != "p0_equilibrium") || info.kind == ParamKind::kAngle) {
            names.emplace_back(info.name);
        }
    }
    return names;
}

void FitProblem::validate() const {
    if (references.empty()) {
        throw ValidationError("fit: at least one reference is required");
    }
    std::set<std::string> seen;
    for (const std::string &name : free_params) {
        const ParamInfo *info = nullptr;
        for (const ParamInfo &candidate : noise_param_table()) {
            if (candidate.name == name) {
                info = &candidate;
            }
        }
        if (info == nullptr) {
            throw ValidationError("fit: unknown parameter '" + name + "'");
        }
        if (info->kind == ParamKind::kTime) {
            throw ValidationError("fit: " + name + " is always fixed");
        }
        if (!seen.insert(name).second) {
            throw ValidationError("fit: " + name + " listed twice");
        }
    }
    for (std::size_t i = 0; i < references.size(); i++) {
        const FitReference &r = references[i];
        r.circuit.validate();
        if (r.measured.n_bits() != r.circuit.readout_qubits().size()) {
            throw ValidationError("fit: reference " + std::to_string(i) + " has " +
                                  std::to_string(r.measured.n_bits()) + "-bit measurements for " +
                                  std::to_string(r.circuit.readout_qubits().size()) + " readout qubits");
        }
    }
    initial.validate();
}

namespace {

constexpr double kAngleScale = 100.0;
constexpr double kProbabilityFloor = 1e-12;

double to_free(ParamKind kind, double v) {
    switch (kind) {
        case ParamKind::kProbability: {
            double p = std::clamp(v, kProbabilityFloor, 1.0 - kProbabilityFloor);
            return std::log(p / (1.0 - p));
        }
        case ParamKind::kAngle:
            return v * kAngleScale;
        case ParamKind::kTime:
        case ParamKind::kDuration:
            return std::log(v);
    }
    return v;
}

double from_free(ParamKind kind, double u) {
    switch (kind) {
        case ParamKind::kProbability:
            return 1.0 / (1.0 + std::exp(-u));
        case ParamKind::kAngle:
            return u / kAngleScale;
        case ParamKind::kTime:
        case ParamKind::kDuration:
            return std::exp(u);
    }
    return u;
}

struct Prepared {
    std::vector<Circuit> native;
    std::vector<const Distribution *> measured;
};

Prepared prepare(const std::vector<FitReference> &references) {
    Prepared p;
    for (const auto &r : references) {
        p.native.push_back(r.circuit.is_native() ? r.circuit : lower_to_native(r.circuit));
        p.measured.push_back(&r.measured);
    }
    return p;
}

double mean_fidelity(const Prepared &prep, const NoiseParams &params) {
    double sum = 0.0;
    for (std::size_t i = 0; i < prep.native.size(); i++) {
        Distribution out = simulate_noisy(prep.native[i], params).output;
        ClassicalFidelity cf = classical_fidelity(*prep.measured[i], out);
        sum += cf.degenerate ? cf.f_s : cf.f;
    }
    return sum / static_cast<double>(prep.native.size());
}

std::string describe(const std::vector<std::string> &names, const NoiseParams &p) {
    std::ostringstream out;
    out.precision(17);
    out << '{';
    for (std::size_t i = 0; i < names.size(); i++) {
        out << (i ? ", " : "") << names[i] << ": " << get_noise_param(p, names[i]);
    }
    out << '}';
    return out.str();
}

}  // namespace

double mean_reference_fidelity(const std::vector<FitReference> &references, const NoiseParams &params) {
    if (references.empty()) {
        throw ValidationError("fit: at least one reference is required");
    }
    return mean_fidelity(prepare(references), params);
}

FitResult fit_noise_params(const FitProblem &problem) {
    problem.validate();
    Prepared prep = prepare(problem.references);
    const auto &names = problem.free_params;
    std::vector<ParamKind> kinds;
    std::vector<double> u0;
    for (const auto &name : names) {
        ParamKind kind = noise_param_info(name).kind;
        kinds.push_back(kind);
        u0.push_back(to_free(kind, get_noise_param(problem.initial, name)));
    }

    auto params_at = [&](std::span<const double> u) {
        NoiseParams p = problem.initial;
        for (std::size_t i = 0; i < names.size(); i++) {
            set_noise_param(p, names[i], from_free(kinds[i], u[i]));
        }
        return p;
    };
    auto objective = [&](std::span<const double> u) {
        NoiseParams p = params_at(u);
        try {
            return -mean_fidelity(prep, p);
        } catch (const Error &e) {
            throw Error(e.code(), std::string(e.what()) + " (parameters " + describe(names, p) + ")");
        }
    };

    FitResult result;
    result.initial_fidelity = mean_fidelity(prep, problem.initial);
    if (names.empty()) {
        result.params = problem.initial;
        result.fidelity = result.initial_fidelity;
        result.evals = 1;
        result.trace = {result.fidelity};
        return result;
    }

    std::vector<std::vector<double>> starts{u0};
    for (std::size_t r = 1; r <= problem.restarts; r++) {
        std::mt19937_64 rng(problem.seed + r);
        std::normal_distribution<double> noise(0.0, problem.restart_spread);
        std::vector<double> u = u0;
        for (double &x : u) {
            x += noise(rng);
        }
        starts.push_back(std::move(u));
    }

    std::vector<NelderMeadResult> runs(starts.size());
    std::vector<std::exception_ptr> errors(starts.size());
    auto run_start = [&](std::size_t s) {
        try {
            runs[s] = nelder_mead(objective, starts[s], problem.options);
        } catch (...) {
            errors[s] = std::current_exception();
        }
    };
    std::size_t n_threads = std::max<std::size_t>(1, std::min(problem.threads, starts.size()));
    if (n_threads == 1) {
        for (std::size_t s = 0; s < starts.size(); s++) {
            run_start(s);
        }
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < n_threads; t++) {
            pool.emplace_back([&, t] {
                for (std::size_t s = t; s < starts.size(); s += n_threads) {
                    run_start(s);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::size_t best = 0;
    for (std::size_t s = 0; s < runs.size(); s++) {
        result.evals += runs[s].evals;
        result.statuses.push_back(runs[s].status);
        if (runs[s].f < runs[best].f) {
            best = s;
        }
    }
    result.best_start = best;
    result.params = params_at(runs[best].x);
    result.fidelity = -runs[best].f;
    for (double v : runs[best].trace) {
        result.trace.push_back(-v);
    }
    return result;
}

std::vector<FitReference> load_references(const std::string &dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw IoError("references: " + dir + " is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw ValidationError("references: no *.json reference files in " + dir);
    }
    std::vector<FitReference> refs;
    for (const auto &f : files) {
        ExternalCircuit ext = load_external(f.string());
        refs.push_back({std::move(ext.circuit), std::move(ext.measured)});
    }
    return refs;
}

void apply_fit_config(FitProblem &problem, const json &config, const std::string &base_dir) {
    if (config.is_null()) {
        return;
    }
    if (!config.is_object()) {
        throw ParseError("fit config: expected a JSON object");
    }
    auto count = [](const json &v, const std::string &field) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw ParseError(field + ": expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    };
    auto positive = [](const json &v, const std::string &field) {
        if (!v.is_number() || !(v.get<double>() > 0.0)) {
            throw ParseError(field + ": expected a positive number");
        }
        return v.get<double>();
    };
    for (const auto &[key, v] : config.items()) {
        if (!key.empty() && key[0] == '_') {
            continue;
        }
        std::string field = "config." + key;
        if (key == "noise") {
            problem.initial = noise_from_config(v, base_dir);
        } else if (key == "free_params") {
            if (!v.is_array()) {
                throw ParseError(field + ": expected a list of parameter names");
            }
            problem.free_params.clear();
            for (std::size_t i = 0; i < v.size(); i++) {
                if (!v[i].is_string()) {
                    throw ParseError(field + "[" + std::to_string(i) + "]: expected a parameter name");
                }
                problem.free_params.push_back(v[i].get<std::string>());
            }
        } else if (key == "restarts") {
            problem.restarts = count(v, field);
        } else if (key == "seed") {
            problem.seed = count(v, field);
        } else if (key == "threads") {
            problem.threads = std::max<std::size_t>(1, count(v, field));
        } else if (key == "max_evals") {
            problem.options.max_evals = count(v, field);
        } else if (key == "xtol") {
            problem.options.xtol = positive(v, field);
        } else if (key == "ftol") {
            problem.options.ftol = positive(v, field);
        } else if (key == "initial_step") {
            problem.options.initial_step = positive(v, field);
        } else if (key == "restart_spread") {
            problem.restart_spread = positive(v, field);
        } else {
            throw ParseError(field + ": unknown field");
        }
    }
    for (const std::string &name : problem.free_params) {
        try {
            noise_param_info(name);
        } catch (const Error &) {
            throw ParseError("config.free_params: unknown parameter '" + name + "'");
        }
    }
}

json fit_report_json(const FitProblem &problem, const FitResult &result) {
    json statuses = json::array();
    for (NelderMeadStatus s : result.statuses) {
        statuses.push_back(std::string(nelder_mead_status_name(s)));
    }
    return {
        {"free_params", problem.free_params},
        {"references", problem.references.size()},
        {"initial_params", noise_params_to_json(problem.initial)},
        {"final_params", noise_params_to_json(result.params)},
        {"initial_fidelity", result.initial_fidelity},
        {"fidelity", result.fidelity},
        {"evals", result.evals},
        {"starts", statuses},
        {"best_start", result.best_start},
        {"fidelity_trace", result.trace},
        {"seed", problem.seed},
    };
}

}  // namespace nasim

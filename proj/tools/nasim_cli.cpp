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

// Command-line front end over the nasim C API.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nasim/nasim.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitFailures = 1;  // some instances failed; see failures.json
constexpr int kExitError = 2;     // bad input or a library error

struct Failed {
    int code;
};

void check(nasim_status status) {
    if (status != NASIM_OK) {
        std::cerr << "nasim: " << nasim_status_name(status) << " error: " << nasim_last_error() << "\n";
        throw Failed{kExitError};
    }
}

// Owns a string returned by the library.
struct OwnedString {
    char *ptr = nullptr;
    ~OwnedString() {
        nasim_string_free(ptr);
    }
    std::string str() const {
        return ptr ? std::string(ptr) : std::string();
    }
};

struct Params {
    nasim_params *ptr = nullptr;
    ~Params() {
        nasim_params_free(ptr);
    }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "nasim: cannot open " << path << "\n";
        throw Failed{kExitError};
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "nasim: cannot write " << path << "\n";
        throw Failed{kExitError};
    }
}

std::string parent_dir(const std::string &path) {
    fs::path p = fs::path(path).parent_path();
    return p.empty() ? "." : p.string();
}

std::size_t default_threads() {
    if (const char *env = std::getenv("NASIM_THREADS")) {
        try {
            return static_cast<std::size_t>(std::stoul(env));
        } catch (const std::exception &) {
            std::cerr << "nasim: ignoring NASIM_THREADS=" << env << "\n";
        }
    }
    return 1;
}

// "default", "noiseless" or a parameter file, then name=value assignments.
void load_params(Params &p, const std::string &source, const std::vector<std::string> &assignments) {
    check(nasim_params_load(source.c_str(), &p.ptr));
    for (const std::string &a : assignments) {
        auto eq = a.find('=');
        if (eq == std::string::npos) {
            std::cerr << "nasim: --set expects name=value, got '" << a << "'\n";
            throw Failed{kExitError};
        }
        double value = 0.0;
        try {
            value = std::stod(a.substr(eq + 1));
        } catch (const std::exception &) {
            std::cerr << "nasim: --set " << a << ": value is not a number\n";
            throw Failed{kExitError};
        }
        check(nasim_params_set(p.ptr, a.substr(0, eq).c_str(), value));
    }
}

std::string fixed(double v, int digits) {
    if (!(v == v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct RunOptions {
    std::string config;
    std::vector<std::string> set;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<std::string> out;
    std::optional<std::size_t> memory_cap;
};

int cmd_run(const RunOptions &o) {
    std::string text = read_file(o.config);
    std::vector<std::string> overrides = o.set;
    if (o.seed) {
        overrides.push_back("seed=" + std::to_string(*o.seed));
    }
    overrides.push_back("threads=" + std::to_string(o.threads.value_or(default_threads())));
    if (o.memory_cap) {
        overrides.push_back("memory_cap=" + std::to_string(*o.memory_cap));
    }
    std::vector<const char *> argv;
    for (const auto &s : overrides) {
        argv.push_back(s.c_str());
    }
    OwnedString result;
    std::size_t failures = 0;
    check(nasim_run_suite(text.c_str(), argv.data(), argv.size(), parent_dir(o.config).c_str(),
                          o.out ? o.out->c_str() : nullptr, &result.ptr, &failures));
    json doc = json::parse(result.str());
    std::printf("%-22s %5s %-12s %9s %10s\n", "kind", "width", "topology", "fidelity", "depth");
    for (const auto &p : doc["points"]) {
        double f = p["mean_fidelity"].is_number() ? p["mean_fidelity"].get<double>() : std::nan("");
        std::printf("%-22s %5zu %-12s %9s %10s\n", p["kind"].get<std::string>().c_str(), p["width"].get<std::size_t>(),
                    p["topology"].get<std::string>().c_str(), fixed(f, 4).c_str(),
                    fixed(p["mean_depth"].get<double>(), 1).c_str());
    }
    if (failures > 0) {
        std::cerr << "nasim: " << failures << " instance(s) failed; see failures.json\n";
        for (const auto &f : doc["failures"]) {
            std::cerr << "  " << f["kind"].get<std::string>() << " width " << f["width"] << " "
                      << f["topology"].get<std::string>() << ": " << f["message"].get<std::string>() << "\n";
        }
        return kExitFailures;
    }
    return kExitOk;
}

struct FitOptions {
    std::string refs;
    std::optional<std::string> config;
    std::vector<std::string> set;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::string out = "fit_out";
};

int cmd_fit(const FitOptions &o) {
    json config = json::object();
    std::string base = ".";
    if (o.config) {
        config = json::parse(read_file(*o.config), nullptr, false);
        if (config.is_discarded()) {
            std::cerr << "nasim: " << *o.config << " is not valid JSON\n";
            return kExitError;
        }
        base = parent_dir(*o.config);
    }
    for (const std::string &a : o.set) {
        auto eq = a.find('=');
        if (eq == std::string::npos) {
            std::cerr << "nasim: --set expects path=value, got '" << a << "'\n";
            return kExitError;
        }
        std::string pointer = "/" + a.substr(0, eq);
        std::replace(pointer.begin(), pointer.end(), '.', '/');
        json v = json::parse(a.substr(eq + 1), nullptr, false);
        config[json::json_pointer(pointer)] = v.is_discarded() ? json(a.substr(eq + 1)) : v;
    }
    if (o.seed) {
        config["seed"] = *o.seed;
    }
    config["threads"] = o.threads.value_or(default_threads());
    OwnedString report;
    std::string text = config.dump();
    check(nasim_fit(o.refs.c_str(), text.c_str(), base.c_str(), o.out.c_str(), &report.ptr));
    json r = json::parse(report.str());
    std::printf("initial fidelity  %.6f\n", r["initial_fidelity"].get<double>());
    std::printf("achieved fidelity %.6f  (%zu evaluations)\n", r["fidelity"].get<double>(),
                r["evals"].get<std::size_t>());
    for (const auto &name : r["free_params"]) {
        std::string n = name.get<std::string>();
        std::printf("  %-24s %.6g\n", n.c_str(), r["final_params"][n].get<double>());
    }
    std::printf("wrote %s/fitted_params.json and %s/fit_report.json\n", o.out.c_str(), o.out.c_str());
    return kExitOk;
}

struct GateOptions {
    std::string params = "default";
    std::vector<std::string> set;
    std::size_t samples = 1000;
    std::uint64_t seed = 7;
    std::optional<std::string> out;
};

void print_fidelities(const json &j) {
    std::printf("%-10s %10s %10s\n", "gate", "fidelity", "std_error");
    for (const char *g : {"global_pi", "rz_pi", "cz"}) {
        std::printf("%-10s %10.4f %10.1e\n", g, j[g]["mean"].get<double>(), j[g]["std_error"].get<double>());
    }
}

int cmd_gatefid(const GateOptions &o) {
    Params p;
    load_params(p, o.params, o.set);
    OwnedString out;
    check(nasim_gate_fidelities(p.ptr, o.samples, o.seed, &out.ptr));
    print_fidelities(json::parse(out.str()));
    return kExitOk;
}

int cmd_calibrate(const GateOptions &o) {
    Params p;
    load_params(p, o.params, o.set);
    Params calibrated;
    OwnedString report;
    check(nasim_calibrate(p.ptr, nullptr, o.samples, o.seed, &calibrated.ptr, &report.ptr));
    json r = json::parse(report.str());
    print_fidelities(r);
    for (const char *g : {"global_pi", "rz_pi", "cz"}) {
        if (!r["reached"][g].get<bool>()) {
            std::printf("%s: target %.4f not reachable; duration left unchanged\n", g, r["targets"][g].get<double>());
        }
    }
    std::printf("dur_uw_pi %.4g  dur_rz_pi %.4g  dur_cz %.4g\n", r["params"]["dur_uw_pi"].get<double>(),
                r["params"]["dur_rz_pi"].get<double>(), r["params"]["dur_cz"].get<double>());
    if (o.out) {
        OwnedString text;
        check(nasim_params_to_json(calibrated.ptr, &text.ptr));
        write_file(*o.out, text.str() + "\n");
        std::printf("wrote %s\n", o.out->c_str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"nasim: neutral-atom noisy circuit simulator and benchmark runner"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nasim_version()));

    RunOptions run;
    auto *run_cmd = app.add_subcommand("run", "Run a benchmark suite from a JSON config");
    run_cmd->add_option("--config", run.config, "Suite config (JSON)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--set", run.set, "Override a config field, e.g. noise.cz_phaseflip=0.05");
    run_cmd->add_option("--seed", run.seed, "Instance sampling seed");
    run_cmd->add_option("--threads", run.threads, "Worker threads (default: $NASIM_THREADS or 1)");
    run_cmd->add_option("--out", run.out, "Output directory (default: config out_dir)");
    run_cmd->add_option("--memory-cap", run.memory_cap, "Density matrix memory cap in bytes");

    FitOptions fit;
    auto *fit_cmd = app.add_subcommand("fit", "Fit noise parameters to measured reference circuits");
    fit_cmd->add_option("--refs", fit.refs, "Directory of reference circuit files")->required();
    fit_cmd->add_option("--config", fit.config, "Fit config (JSON)")->check(CLI::ExistingFile);
    fit_cmd->add_option("--set", fit.set, "Override a fit config field, e.g. restarts=2");
    fit_cmd->add_option("--seed", fit.seed, "Restart seed");
    fit_cmd->add_option("--threads", fit.threads, "Worker threads (default: $NASIM_THREADS or 1)");
    fit_cmd->add_option("--out", fit.out, "Output directory")->capture_default_str();

    GateOptions gate;
    auto *gate_cmd = app.add_subcommand("gatefid", "Haar-averaged fidelities of the native gates");
    GateOptions cal;
    auto *cal_cmd = app.add_subcommand("calibrate", "Fit pulse durations to the target gate fidelities");
    for (auto [cmd, o] : {std::pair{gate_cmd, &gate}, std::pair{cal_cmd, &cal}}) {
        cmd->add_option("--params", o->params, "Noise parameters: default, noiseless or a JSON file")
            ->capture_default_str();
        cmd->add_option("--set", o->set, "Override a parameter, e.g. cz_phaseflip=0.066");
        cmd->add_option("--samples", o->samples, "Haar samples per gate")->capture_default_str();
        cmd->add_option("--seed", o->seed, "Sampling seed")->capture_default_str();
    }
    cal_cmd->add_option("--out", cal.out, "Write the calibrated parameters to this file");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run_cmd) {
            return cmd_run(run);
        }
        if (*fit_cmd) {
            return cmd_fit(fit);
        }
        if (*gate_cmd) {
            return cmd_gatefid(gate);
        }
        if (*cal_cmd) {
            return cmd_calibrate(cal);
        }
    } catch (const Failed &f) {
        return f.code;
    } catch (const std::exception &e) {
        std::cerr << "nasim: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

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

#include "nasim/nasim.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

#include "json.hpp"
#include "nasim/bench.hpp"
#include "nasim/channels.hpp"
#include "nasim/circuit.hpp"
#include "nasim/errors.hpp"
#include "nasim/fit.hpp"
#include "nasim/gatemodel.hpp"
#include "nasim/metrics.hpp"
#include "nasim/routing.hpp"
#include "nasim/runner.hpp"
#include "nasim/state.hpp"
#include "nasim/statevector.hpp"

struct nasim_params {
    nasim::NoiseParams value;
};

struct nasim_circuit {
    nasim::Circuit value;
};

struct nasim_state {
    explicit nasim_state(nasim::QuquartState s) : value(std::move(s)) {
    }
    nasim::QuquartState value;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

nasim_status fail(nasim_status status, const std::string &message) {
    g_last_error = message;
    return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
nasim_status guarded(F &&body) {
    try {
        g_last_error.clear();
        body();
        return NASIM_OK;
    } catch (const nasim::Error &e) {
        return fail(static_cast<nasim_status>(e.code()), e.what());
    } catch (const json::exception &e) {
        return fail(NASIM_E_PARSE, e.what());
    } catch (const std::bad_alloc &) {
        return fail(NASIM_E_CAPACITY, "out of memory");
    } catch (const std::exception &e) {
        return fail(NASIM_E_INTERNAL, e.what());
    } catch (...) {
        return fail(NASIM_E_INTERNAL, "unknown error");
    }
}

void require(const void *p, const char *what) {
    if (p == nullptr) {
        throw nasim::ArgumentError(std::string(what) + " is NULL");
    }
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

json parse_json(const char *text, const char *what) {
    require(text, what);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw nasim::ParseError(std::string(what) + ": invalid JSON");
    }
    return j;
}

json estimate_json(const nasim::FidelityEstimate &e) {
    return {{"mean", e.mean}, {"std_error", e.std_error}};
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw nasim::IoError("cannot write " + path.string());
    }
}

}  // namespace

extern "C" {

const char *nasim_version(void) {
    return NASIM_VERSION_STRING;
}

const char *nasim_last_error(void) {
    return g_last_error.c_str();
}

const char *nasim_status_name(nasim_status status) {
    switch (status) {
        case NASIM_OK:
            return "ok";
        case NASIM_E_ARGUMENT:
            return "argument";
        case NASIM_E_CAPACITY:
            return "capacity";
        case NASIM_E_VALIDATION:
            return "validation";
        case NASIM_E_INTERNAL:
            return "internal";
        case NASIM_E_PARSE:
            return "parse";
        case NASIM_E_IO:
            return "io";
        case NASIM_E_DEGENERATE:
            return "degenerate";
        case NASIM_E_LOWERING:
            return "lowering";
    }
    return "unknown";
}

void nasim_string_free(char *s) {
    std::free(s);
}

nasim_status nasim_params_default(nasim_params **out) {
    return guarded([&] {
        require(out, "out");
        *out = new nasim_params{nasim::NoiseParams{}};
    });
}

nasim_status nasim_params_noiseless(nasim_params **out) {
    return guarded([&] {
        require(out, "out");
        *out = new nasim_params{nasim::NoiseParams::noiseless()};
    });
}

nasim_status nasim_params_from_json(const char *text, nasim_params **out) {
    return guarded([&] {
        require(out, "out");
        *out = new nasim_params{nasim::noise_params_from_json(parse_json(text, "params"))};
    });
}

nasim_status nasim_params_load(const char *path, nasim_params **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new nasim_params{nasim::noise_from_config(json(std::string(path)))};
    });
}

nasim_status nasim_params_to_json(const nasim_params *params, char **out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        *out = copy_string(nasim::noise_params_to_json(params->value).dump(2));
    });
}

nasim_status nasim_params_get(const nasim_params *params, const char *name, double *out) {
    return guarded([&] {
        require(params, "params");
        require(name, "name");
        require(out, "out");
        *out = nasim::get_noise_param(params->value, name);
    });
}

nasim_status nasim_params_set(nasim_params *params, const char *name, double value) {
    return guarded([&] {
        require(params, "params");
        require(name, "name");
        nasim::NoiseParams p = params->value;
        nasim::set_noise_param(p, name, value);
        p.validate();
        params->value = p;
    });
}

void nasim_params_free(nasim_params *params) {
    delete params;
}

nasim_status nasim_circuit_from_json(const char *text, nasim_circuit **out) {
    return guarded([&] {
        require(out, "out");
        *out = new nasim_circuit{nasim::circuit_from_json(parse_json(text, "circuit"))};
    });
}

nasim_status nasim_circuit_generate(const char *spec_json, nasim_circuit **out) {
    return guarded([&] {
        require(out, "out");
        nasim::BenchmarkSpec spec = nasim::spec_from_json(parse_json(spec_json, "spec"));
        *out = new nasim_circuit{nasim::generate(spec).circuit};
    });
}

nasim_status nasim_circuit_to_json(const nasim_circuit *circuit, char **out) {
    return guarded([&] {
        require(circuit, "circuit");
        require(out, "out");
        *out = copy_string(nasim::circuit_to_json(circuit->value).dump());
    });
}

nasim_status nasim_circuit_n_qubits(const nasim_circuit *circuit, size_t *out) {
    return guarded([&] {
        require(circuit, "circuit");
        require(out, "out");
        *out = circuit->value.n_qubits;
    });
}

nasim_status nasim_circuit_ideal(const nasim_circuit *circuit, char **out) {
    return guarded([&] {
        require(circuit, "circuit");
        require(out, "out");
        json j = nasim::ideal_distribution(circuit->value).to_map(0.0);
        *out = copy_string(j.dump());
    });
}

nasim_status nasim_circuit_lower(const nasim_circuit *circuit, nasim_circuit **out) {
    return guarded([&] {
        require(circuit, "circuit");
        require(out, "out");
        *out = new nasim_circuit{nasim::lower_to_native(circuit->value)};
    });
}

nasim_status nasim_circuit_route(const nasim_circuit *native, const char *topology_json, nasim_circuit **out,
                                 size_t *swaps) {
    return guarded([&] {
        require(native, "native");
        require(out, "out");
        nasim::Topology topo = nasim::topology_from_json(parse_json(topology_json, "topology"));
        nasim::RoutedCircuit routed = nasim::route(native->value, topo);
        if (swaps != nullptr) {
            *swaps = routed.swaps;
        }
        *out = new nasim_circuit{std::move(routed.circuit)};
    });
}

void nasim_circuit_free(nasim_circuit *circuit) {
    delete circuit;
}

nasim_status nasim_state_create(size_t n_sites, size_t memory_cap, nasim_state **out) {
    return guarded([&] {
        require(out, "out");
        std::size_t cap = memory_cap == 0 ? nasim::kDefaultMemoryCap : memory_cap;
        *out = new nasim_state(nasim::init_state(n_sites, cap));
    });
}

nasim_status nasim_state_run(nasim_state *state, const nasim_circuit *native, const nasim_params *params) {
    return guarded([&] {
        require(state, "state");
        require(native, "native");
        require(params, "params");
        const nasim::Circuit &c = native->value;
        if (!c.is_native()) {
            throw nasim::ArgumentError("state_run: circuit is not native");
        }
        if (c.n_qubits != state->value.n_sites()) {
            throw nasim::ArgumentError("state_run: circuit has " + std::to_string(c.n_qubits) +
                                       " qubits, state has " + std::to_string(state->value.n_sites()) + " sites");
        }
        nasim::GateModel model(params->value);
        nasim::Schedule schedule = nasim::schedule_layers(c, params->value);
        model.apply_preparation(state->value);
        for (const nasim::Layer &layer : schedule.layers) {
            for (std::size_t i : layer.ops) {
                model.apply(state->value, c.ops[i]);
            }
            model.apply_decoherence(state->value, layer.duration);
        }
    });
}

nasim_status nasim_state_trace(const nasim_state *state, double *out) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        *out = state->value.trace();
    });
}

nasim_status nasim_state_n_sites(const nasim_state *state, size_t *out) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        *out = state->value.n_sites();
    });
}

nasim_status nasim_state_readout(const nasim_state *state, double *out, size_t len) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        nasim::Distribution d = nasim::reduce_readout(nasim::ququart_distribution(state->value));
        if (len != d.size()) {
            throw nasim::ArgumentError("state_readout: buffer holds " + std::to_string(len) + " values, need " +
                                       std::to_string(d.size()));
        }
        for (std::size_t i = 0; i < d.size(); i++) {
            out[i] = d[i];
        }
    });
}

void nasim_state_free(nasim_state *state) {
    delete state;
}

nasim_status nasim_classical_fidelity(const char *ideal_json, const char *output_json, double *f, double *f_s,
                                      double *f_n) {
    return guarded([&] {
        auto ideal = nasim::Distribution::from_map(parse_json(ideal_json, "ideal").get<std::map<std::string, double>>());
        auto output =
            nasim::Distribution::from_map(parse_json(output_json, "output").get<std::map<std::string, double>>());
        nasim::ClassicalFidelity cf = nasim::classical_fidelity(ideal, output);
        if (f != nullptr) {
            *f = cf.f;
        }
        if (f_s != nullptr) {
            *f_s = cf.f_s;
        }
        if (f_n != nullptr) {
            *f_n = cf.f_n;
        }
    });
}

nasim_status nasim_run_suite(const char *config_json, const char *const *overrides, size_t n_overrides,
                             const char *base_dir, const char *out_dir, char **result_json, size_t *n_failures) {
    return guarded([&] {
        json config = parse_json(config_json, "config");
        for (std::size_t i = 0; i < n_overrides; i++) {
            require(overrides[i], "override");
            nasim::apply_override(config, overrides[i]);
        }
        nasim::RunConfig rc = nasim::run_config_from_json(config, base_dir != nullptr ? base_dir : ".");
        if (out_dir != nullptr) {
            rc.out_dir = out_dir;
        }
        nasim::SuiteResult result = nasim::run_suite(rc);
        if (!rc.out_dir.empty()) {
            nasim::write_suite_outputs(result, rc);
        }
        if (n_failures != nullptr) {
            *n_failures = result.failures.size();
        }
        if (result_json != nullptr) {
            *result_json = copy_string(nasim::suite_to_json(result).dump());
        }
    });
}

nasim_status nasim_fit(const char *references_dir, const char *config_json, const char *base_dir,
                       const char *out_dir, char **report_json) {
    return guarded([&] {
        require(references_dir, "references_dir");
        nasim::FitProblem problem;
        problem.references = nasim::load_references(references_dir);
        if (config_json != nullptr) {
            nasim::apply_fit_config(problem, parse_json(config_json, "config"), base_dir != nullptr ? base_dir : ".");
        }
        nasim::FitResult result = nasim::fit_noise_params(problem);
        json report = nasim::fit_report_json(problem, result);
        if (out_dir != nullptr) {
            std::filesystem::path dir(out_dir);
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec) {
                throw nasim::IoError("cannot create " + dir.string() + ": " + ec.message());
            }
            write_text(dir / "fitted_params.json", nasim::noise_params_to_json(result.params).dump(2) + "\n");
            write_text(dir / "fit_report.json", report.dump(2) + "\n");
        }
        if (report_json != nullptr) {
            *report_json = copy_string(report.dump());
        }
    });
}

nasim_status nasim_gate_fidelities(const nasim_params *params, size_t n_samples, uint64_t seed, char **out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        const nasim::NoiseParams &p = params->value;
        json j = {
            {"global_pi", estimate_json(nasim::average_gate_fidelity(nasim::Gate::global_rotation(0.0, nasim::kPi), p,
                                                                     n_samples, seed))},
            {"rz_pi", estimate_json(nasim::average_gate_fidelity(nasim::Gate::rz(0, nasim::kPi), p, n_samples, seed))},
            {"cz", estimate_json(nasim::average_gate_fidelity(nasim::Gate::cz(0, 1), p, n_samples, seed))},
            {"samples", n_samples},
            {"seed", seed},
        };
        *out = copy_string(j.dump());
    });
}

nasim_status nasim_calibrate(const nasim_params *params, const char *targets_json, size_t n_samples, uint64_t seed,
                             nasim_params **out, char **report_json) {
    return guarded([&] {
        require(params, "params");
        nasim::CalibrationTargets targets;
        if (targets_json != nullptr) {
            json t = parse_json(targets_json, "targets");
            if (!t.is_object()) {
                throw nasim::ParseError("targets: expected a JSON object");
            }
            for (const auto &[key, v] : t.items()) {
                if (!v.is_number()) {
                    throw nasim::ParseError("targets." + key + ": expected a number");
                }
                if (key == "global_pi") {
                    targets.global_pi = v.get<double>();
                } else if (key == "rz_pi") {
                    targets.rz_pi = v.get<double>();
                } else if (key == "cz") {
                    targets.cz = v.get<double>();
                } else {
                    throw nasim::ParseError("targets." + key + ": unknown field");
                }
            }
        }
        nasim::CalibrationResult r = nasim::calibrate_gate_durations(params->value, targets, n_samples, seed);
        if (report_json != nullptr) {
            json j = {
                {"params", nasim::noise_params_to_json(r.params)},
                {"targets", {{"global_pi", targets.global_pi}, {"rz_pi", targets.rz_pi}, {"cz", targets.cz}}},
                {"global_pi", estimate_json(r.global_pi)},
                {"rz_pi", estimate_json(r.rz_pi)},
                {"cz", estimate_json(r.cz)},
                {"reached", {{"global_pi", r.global_reached}, {"rz_pi", r.rz_reached}, {"cz", r.cz_reached}}},
            };
            *report_json = copy_string(j.dump());
        }
        if (out != nullptr) {
            *out = new nasim_params{r.params};
        }
    });
}

}  // extern "C"

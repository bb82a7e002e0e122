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

/* C interface of the nasim simulator.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns a nasim_status; on failure nasim_last_error() holds a
 * message for the calling thread. Strings returned through char** out
 * parameters are owned by the caller and released with nasim_string_free.
 */
#ifndef NASIM_NASIM_H
#define NASIM_NASIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(NASIM_BUILDING_LIBRARY)
#define NASIM_API __declspec(dllexport)
#else
#define NASIM_API __declspec(dllimport)
#endif
#else
#define NASIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nasim_status {
    NASIM_OK = 0,
    NASIM_E_ARGUMENT = 1,
    NASIM_E_CAPACITY = 2,
    NASIM_E_VALIDATION = 3,
    NASIM_E_INTERNAL = 4,
    NASIM_E_PARSE = 5,
    NASIM_E_IO = 6,
    NASIM_E_DEGENERATE = 7,
    NASIM_E_LOWERING = 8,
} nasim_status;

typedef struct nasim_params nasim_params;
typedef struct nasim_circuit nasim_circuit;
typedef struct nasim_state nasim_state;

NASIM_API const char *nasim_version(void);
NASIM_API const char *nasim_last_error(void);
NASIM_API const char *nasim_status_name(nasim_status status);
NASIM_API void nasim_string_free(char *s);

/* Noise parameters. */
NASIM_API nasim_status nasim_params_default(nasim_params **out);
NASIM_API nasim_status nasim_params_noiseless(nasim_params **out);
NASIM_API nasim_status nasim_params_from_json(const char *json, nasim_params **out);
NASIM_API nasim_status nasim_params_load(const char *path, nasim_params **out);
NASIM_API nasim_status nasim_params_to_json(const nasim_params *params, char **out);
NASIM_API nasim_status nasim_params_get(const nasim_params *params, const char *name, double *out);
NASIM_API nasim_status nasim_params_set(nasim_params *params, const char *name, double value);
NASIM_API void nasim_params_free(nasim_params *params);

/* Circuits. A benchmark spec is {"kind", "width", "instance"?, "phase"?, "path"?}. */
NASIM_API nasim_status nasim_circuit_from_json(const char *json, nasim_circuit **out);
NASIM_API nasim_status nasim_circuit_generate(const char *spec_json, nasim_circuit **out);
NASIM_API nasim_status nasim_circuit_to_json(const nasim_circuit *circuit, char **out);
NASIM_API nasim_status nasim_circuit_n_qubits(const nasim_circuit *circuit, size_t *out);
/* Noiseless distribution over the readout qubits, as {bitstring: probability}. */
NASIM_API nasim_status nasim_circuit_ideal(const nasim_circuit *circuit, char **out);
NASIM_API nasim_status nasim_circuit_lower(const nasim_circuit *circuit, nasim_circuit **out);
/* Topology is a JSON value: "all_to_all", "grid" or {"grid": [rows, cols]}. */
NASIM_API nasim_status nasim_circuit_route(const nasim_circuit *native, const char *topology_json,
                                           nasim_circuit **out, size_t *swaps);
NASIM_API void nasim_circuit_free(nasim_circuit *circuit);

/* Ququart density matrices. memory_cap 0 selects the default (8 GiB). */
NASIM_API nasim_status nasim_state_create(size_t n_sites, size_t memory_cap, nasim_state **out);
/* Preparation error, then the native circuit layer by layer with decoherence. */
NASIM_API nasim_status nasim_state_run(nasim_state *state, const nasim_circuit *native, const nasim_params *params);
NASIM_API nasim_status nasim_state_trace(const nasim_state *state, double *out);
NASIM_API nasim_status nasim_state_n_sites(const nasim_state *state, size_t *out);
/* Bit-string probabilities with loss read as 0 (dark) or 1 (bright); len must be 2^n. */
NASIM_API nasim_status nasim_state_readout(const nasim_state *state, double *out, size_t len);
NASIM_API void nasim_state_free(nasim_state *state);

/* Classical fidelity of two distributions given as {bitstring: probability}. */
NASIM_API nasim_status nasim_classical_fidelity(const char *ideal_json, const char *output_json, double *f,
                                                double *f_s, double *f_n);

/* Benchmark suite. overrides are "dotted.path=value" strings applied to the
 * config before parsing; base_dir resolves relative paths in it (NULL for ".").
 * Output files go to out_dir, or to config.out_dir when out_dir is NULL; an
 * empty out_dir writes nothing. result_json (optional) receives the results
 * document. Instance failures do not fail the call; *n_failures (optional)
 * counts them. */
NASIM_API nasim_status nasim_run_suite(const char *config_json, const char *const *overrides, size_t n_overrides,
                                       const char *base_dir, const char *out_dir, char **result_json,
                                       size_t *n_failures);

/* Fits noise parameters to every *.json reference file in references_dir.
 * config_json (may be NULL) holds {"noise", "free_params", "restarts", "seed",
 * "max_evals", "xtol", "ftol", "initial_step", "restart_spread", "threads"};
 * base_dir resolves a relative noise path in it (NULL for "."). Writes
 * fitted_params.json and fit_report.json to out_dir when it is non-NULL. */
NASIM_API nasim_status nasim_fit(const char *references_dir, const char *config_json, const char *base_dir,
                                 const char *out_dir, char **report_json);

/* Haar-averaged fidelities of global pi, local Rz(pi) and CZ as
 * {"global_pi": {"mean", "std_error"}, "rz_pi": ..., "cz": ...}. */
NASIM_API nasim_status nasim_gate_fidelities(const nasim_params *params, size_t n_samples, uint64_t seed,
                                             char **out);

/* Fits the three pulse durations to target fidelities; targets_json may be NULL
 * for the defaults {"global_pi": 0.9995, "rz_pi": 0.995, "cz": 0.954}. */
NASIM_API nasim_status nasim_calibrate(const nasim_params *params, const char *targets_json, size_t n_samples,
                                       uint64_t seed, nasim_params **out, char **report_json);

#ifdef __cplusplus
}
#endif

#endif /* NASIM_NASIM_H */

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

// Exercises the shared library through nasim.h only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nasim/nasim.h"

namespace {

// Takes ownership of a returned string.
std::string take(char *s) {
    std::string out = s != nullptr ? s : "";
    nasim_string_free(s);
    return out;
}

std::filesystem::path scratch(const std::string &tag) {
    auto dir = std::filesystem::temp_directory_path() / ("nasim_capi_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STRNE(nasim_version(), "");
    EXPECT_STREQ(nasim_status_name(NASIM_OK), "ok");
    for (int s = 1; s <= 8; s++) {
        EXPECT_STRNE(nasim_status_name(static_cast<nasim_status>(s)), "ok");
    }
}

TEST(CApi, ParamsGetSetAndRoundTrip) {
    nasim_params *p = nullptr;
    ASSERT_EQ(nasim_params_default(&p), NASIM_OK);
    double v = 0.0;
    ASSERT_EQ(nasim_params_get(p, "p0_equilibrium", &v), NASIM_OK);
    EXPECT_DOUBLE_EQ(v, 0.42);
    ASSERT_EQ(nasim_params_set(p, "cz_phaseflip", 0.01), NASIM_OK);
    ASSERT_EQ(nasim_params_get(p, "cz_phaseflip", &v), NASIM_OK);
    EXPECT_DOUBLE_EQ(v, 0.01);

    // A rejected value leaves the handle untouched.
    EXPECT_EQ(nasim_params_set(p, "cz_phaseflip", 2.0), NASIM_E_VALIDATION);
    EXPECT_NE(std::string(nasim_last_error()), "");
    ASSERT_EQ(nasim_params_get(p, "cz_phaseflip", &v), NASIM_OK);
    EXPECT_DOUBLE_EQ(v, 0.01);
    EXPECT_NE(nasim_params_get(p, "no_such_param", &v), NASIM_OK);

    char *text = nullptr;
    ASSERT_EQ(nasim_params_to_json(p, &text), NASIM_OK);
    std::string json = take(text);
    nasim_params *q = nullptr;
    ASSERT_EQ(nasim_params_from_json(json.c_str(), &q), NASIM_OK);
    ASSERT_EQ(nasim_params_get(q, "cz_phaseflip", &v), NASIM_OK);
    EXPECT_DOUBLE_EQ(v, 0.01);
    nasim_params_free(q);
    nasim_params_free(p);

    EXPECT_EQ(nasim_params_from_json("{not json", &q), NASIM_E_PARSE);
    EXPECT_EQ(nasim_params_load("/nonexistent/params.json", &q), NASIM_E_IO);
    ASSERT_EQ(nasim_params_load("noiseless", &q), NASIM_OK);
    ASSERT_EQ(nasim_params_get(q, "p0_equilibrium", &v), NASIM_OK);
    nasim_params_free(q);
}

TEST(CApi, NullArguments) {
    double v = 0.0;
    EXPECT_EQ(nasim_params_default(nullptr), NASIM_E_ARGUMENT);
    EXPECT_EQ(nasim_params_get(nullptr, "p0", &v), NASIM_E_ARGUMENT);
    EXPECT_NE(std::string(nasim_last_error()).find("NULL"), std::string::npos);
    EXPECT_EQ(nasim_circuit_lower(nullptr, nullptr), NASIM_E_ARGUMENT);
    EXPECT_EQ(nasim_state_trace(nullptr, &v), NASIM_E_ARGUMENT);
    EXPECT_EQ(nasim_fit(nullptr, nullptr, nullptr, nullptr, nullptr), NASIM_E_ARGUMENT);
    // Free functions accept NULL.
    nasim_params_free(nullptr);
    nasim_circuit_free(nullptr);
    nasim_state_free(nullptr);
    nasim_string_free(nullptr);
}

TEST(CApi, CircuitPipelineAndNoiselessRun) {
    nasim_circuit *abstract = nullptr;
    ASSERT_EQ(nasim_circuit_generate(R"({"kind": "ghz", "width": 3})", &abstract), NASIM_OK);
    size_t n = 0;
    ASSERT_EQ(nasim_circuit_n_qubits(abstract, &n), NASIM_OK);
    EXPECT_EQ(n, 3u);

    char *ideal = nullptr;
    ASSERT_EQ(nasim_circuit_ideal(abstract, &ideal), NASIM_OK);
    std::string ideal_json = take(ideal);

    nasim_circuit *native = nullptr;
    ASSERT_EQ(nasim_circuit_lower(abstract, &native), NASIM_OK);
    nasim_circuit *routed = nullptr;
    size_t swaps = 99;
    ASSERT_EQ(nasim_circuit_route(native, R"("all_to_all")", &routed, &swaps), NASIM_OK);
    EXPECT_EQ(swaps, 0u);

    char *text = nullptr;
    ASSERT_EQ(nasim_circuit_to_json(routed, &text), NASIM_OK);
    nasim_circuit *copy = nullptr;
    ASSERT_EQ(nasim_circuit_from_json(take(text).c_str(), &copy), NASIM_OK);

    nasim_params *p = nullptr;
    ASSERT_EQ(nasim_params_noiseless(&p), NASIM_OK);
    nasim_state *s = nullptr;
    ASSERT_EQ(nasim_state_create(3, 0, &s), NASIM_OK);
    // Abstract circuits are refused.
    EXPECT_EQ(nasim_state_run(s, abstract, p), NASIM_E_ARGUMENT);
    ASSERT_EQ(nasim_state_run(s, copy, p), NASIM_OK);
    double tr = 0.0;
    ASSERT_EQ(nasim_state_trace(s, &tr), NASIM_OK);
    EXPECT_NEAR(tr, 1.0, 1e-12);

    std::vector<double> probs(8);
    EXPECT_EQ(nasim_state_readout(s, probs.data(), 4), NASIM_E_ARGUMENT);
    ASSERT_EQ(nasim_state_readout(s, probs.data(), probs.size()), NASIM_OK);
    EXPECT_NEAR(probs[0], 0.5, 1e-10);
    EXPECT_NEAR(probs[7], 0.5, 1e-10);

    // Readout order is big-endian over qubits, like the bitstrings.
    std::string out_json = "{\"000\": " + std::to_string(probs[0]) + ", \"111\": " + std::to_string(probs[7]) + "}";
    double f = 0, fs = 0, fn = 0;
    ASSERT_EQ(nasim_classical_fidelity(ideal_json.c_str(), out_json.c_str(), &f, &fs, &fn), NASIM_OK);
    EXPECT_NEAR(f, 1.0, 1e-9);
    EXPECT_NEAR(fs, 1.0, 1e-9);

    nasim_state_free(s);
    nasim_params_free(p);
    nasim_circuit_free(copy);
    nasim_circuit_free(routed);
    nasim_circuit_free(native);
    nasim_circuit_free(abstract);
}

TEST(CApi, ErrorCodes) {
    nasim_circuit *c = nullptr;
    EXPECT_EQ(nasim_circuit_generate(R"({"kind": "bogus", "width": 3})", &c), NASIM_E_PARSE);
    nasim_state *s = nullptr;
    EXPECT_EQ(nasim_state_create(12, 1 << 20, &s), NASIM_E_CAPACITY);
    EXPECT_EQ(s, nullptr);
    double f = 0.0;
    EXPECT_EQ(nasim_classical_fidelity(R"({"0": 1.0})", R"({"0": 0.5, "1": 0.5})", &f, nullptr, nullptr), NASIM_OK);
    // A uniform ideal leaves the normalization undefined; f comes back NaN.
    EXPECT_EQ(nasim_classical_fidelity(R"({"0": 0.5, "1": 0.5})", R"({"0": 1.0})", &f, nullptr, nullptr), NASIM_OK);
    EXPECT_TRUE(std::isnan(f));
    EXPECT_EQ(nasim_classical_fidelity(R"({"0": 1.0})", R"({"00": 1.0})", &f, nullptr, nullptr), NASIM_E_ARGUMENT);
}

TEST(CApi, RunSuiteWithOverrides) {
    const char *config = R"({"noise": "noiseless", "kinds": ["ghz"], "widths": [2, 3],
                             "topologies": ["all_to_all"], "seed": 1, "out_dir": "unused"})";
    const char *overrides[] = {"widths=2", "threads=1"};
    char *result = nullptr;
    size_t failures = 7;
    ASSERT_EQ(nasim_run_suite(config, overrides, 2, nullptr, "", &result, &failures), NASIM_OK);
    std::string r = take(result);
    EXPECT_EQ(failures, 0u);
    EXPECT_NE(r.find("\"points\""), std::string::npos);
    EXPECT_NE(r.find("\"width\":2"), std::string::npos);
    EXPECT_EQ(r.find("\"width\":3"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists("unused"));

    const char *bad[] = {"kinds=[\"bogus\"]"};
    EXPECT_EQ(nasim_run_suite(config, bad, 1, nullptr, "", nullptr, nullptr), NASIM_E_PARSE);
    EXPECT_NE(std::string(nasim_last_error()).find("kinds[0]"), std::string::npos);
}

TEST(CApi, FitWritesOutputs) {
    auto dir = scratch("fit");
    // One reference: the noiseless GHZ circuit with its ideal output as the measurement.
    nasim_circuit *abstract = nullptr;
    ASSERT_EQ(nasim_circuit_generate(R"({"kind": "ghz", "width": 2})", &abstract), NASIM_OK);
    char *text = nullptr;
    char *ideal = nullptr;
    ASSERT_EQ(nasim_circuit_to_json(abstract, &text), NASIM_OK);
    ASSERT_EQ(nasim_circuit_ideal(abstract, &ideal), NASIM_OK);
    std::string circuit = take(text);
    std::string measured = take(ideal);
    nasim_circuit_free(abstract);
    ASSERT_EQ(circuit.back(), '}');
    circuit.pop_back();
    std::filesystem::create_directories(dir / "refs");
    std::ofstream(dir / "refs" / "ghz.json") << circuit << ", \"measured\": " << measured << "}\n";

    const char *config = R"({"noise": "noiseless", "free_params": ["cz_phaseflip"], "restarts": 0, "max_evals": 20})";
    char *report = nullptr;
    auto out = dir / "out";
    ASSERT_EQ(nasim_fit((dir / "refs").c_str(), config, nullptr, out.c_str(), &report), NASIM_OK)
        << nasim_last_error();
    std::string r = take(report);
    EXPECT_NE(r.find("\"fidelity\""), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(out / "fitted_params.json"));
    EXPECT_TRUE(std::filesystem::exists(out / "fit_report.json"));

    auto empty = dir / "empty";
    std::filesystem::create_directories(empty);
    EXPECT_EQ(nasim_fit(empty.c_str(), nullptr, nullptr, nullptr, nullptr), NASIM_E_VALIDATION);
    std::filesystem::remove_all(dir);
}

TEST(CApi, GateFidelitiesNoiseless) {
    nasim_params *p = nullptr;
    ASSERT_EQ(nasim_params_noiseless(&p), NASIM_OK);
    char *out = nullptr;
    ASSERT_EQ(nasim_gate_fidelities(p, 20, 3, &out), NASIM_OK);
    std::string j = take(out);
    for (const char *g : {"global_pi", "rz_pi", "cz"}) {
        EXPECT_NE(j.find(g), std::string::npos);
    }
    // Every mean is 1 to print precision.
    EXPECT_EQ(j.find("\"mean\":0.9"), std::string::npos);
    nasim_params_free(p);
}

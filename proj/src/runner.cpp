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

#include "nasim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "nasim/errors.hpp"
#include "nasim/gatemodel.hpp"

namespace nasim {

namespace fs = std::filesystem;
using nlohmann::json;

NoisyRun simulate_noisy(const Circuit &native, const NoiseParams &params, std::size_t memory_cap) {
    if (!native.is_native()) {
        throw ArgumentError("simulate_noisy: circuit is not native");
    }
    Schedule schedule = schedule_layers(native, params);
    GateModel model(params);
    QuquartState state(native.n_qubits, memory_cap);
    model.apply_preparation(state);
    for (const Layer &layer : schedule.layers) {
        for (std::size_t i : layer.ops) {
            model.apply(state, native.ops[i]);
        }
        model.apply_decoherence(state, layer.duration);
    }
    Distribution all = reduce_readout(ququart_distribution(state));
    std::vector<int> readout = native.readout_qubits();
    Distribution selected = select_bits(all, readout);
    return {apply_measurement_error(selected, params.meas_error), schedule.depth()};
}

namespace {

json number_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json instance_json(const BenchmarkSpec &spec) {
    json j = spec_to_json(spec);
    j.erase("kind");
    j.erase("width");
    return j;
}

}  // namespace

json record_to_json(const ResultRecord &r) {
    return {
        {"kind", r.kind},
        {"width", r.width},
        {"topology", r.topology},
        {"instance", r.instance},
        {"depth", r.depth},
        {"gates", {{"global", r.gates.global}, {"rz", r.gates.rz}, {"cz", r.gates.cz}}},
        {"swaps", r.swaps},
        {"f", number_or_null(r.f)},
        {"f_s", number_or_null(r.f_s)},
        {"f_n", number_or_null(r.f_n)},
        {"degenerate", r.degenerate},
    };
}

ResultRecord run_instance(const BenchmarkSpec &spec, const Topology &topology, const NoiseParams &params,
                          std::size_t memory_cap) {
    auto start = std::chrono::steady_clock::now();
    GeneratedCircuit generated = generate(spec);
    Circuit native = lower_to_native(generated.circuit);
    RoutedCircuit routed = route(native, topology);
    NoisyRun run = simulate_noisy(routed.circuit, params, memory_cap);
    ClassicalFidelity cf = classical_fidelity(generated.ideal, run.output);

    ResultRecord r;
    r.kind = std::string(benchmark_name(spec.kind));
    r.width = generated.circuit.n_qubits;
    r.topology = topology.name();
    r.instance = instance_json(spec);
    r.depth = run.depth;
    r.gates = count_gates(routed.circuit);
    r.swaps = routed.swaps;
    r.f = cf.f;
    r.f_s = cf.f_s;
    r.f_n = cf.f_n;
    r.degenerate = cf.degenerate;
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::size_t RunConfig::samples_for(BenchmarkKind kind) const {
    auto it = samples_per_point.find(kind);
    return it != samples_per_point.end() ? it->second : default_samples(kind);
}

void RunConfig::validate() const {
    if (kinds.empty()) {
        throw ValidationError("config.kinds: no benchmark kinds selected");
    }
    if (topologies.empty()) {
        throw ValidationError("config.topologies: no topologies selected");
    }
    if (min_width < 1 || min_width > max_width) {
        throw ValidationError("config.widths: need 1 <= min <= max, got [" + std::to_string(min_width) + ", " +
                              std::to_string(max_width) + "]");
    }
    bool has_external = std::find(kinds.begin(), kinds.end(), BenchmarkKind::kExternal) != kinds.end();
    if (has_external && external.empty()) {
        throw ValidationError("config.external: kind external needs at least one circuit file");
    }
    std::size_t limit = QuquartState::max_sites(memory_cap);
    for (BenchmarkKind kind : kinds) {
        if (kind == BenchmarkKind::kExternal) {
            continue;
        }
        std::size_t top = std::min(max_width, nasim::max_width(kind));
        if (top >= min_width && top > limit) {
            throw CapacityError("config.widths: " + std::string(benchmark_name(kind)) + " width " +
                                std::to_string(top) + " needs " + std::to_string(QuquartState::required_bytes(top)) +
                                " bytes, above memory_cap " + std::to_string(memory_cap));
        }
    }
    for (const auto &[kind, n] : samples_per_point) {
        if (n == 0) {
            throw ValidationError("config.samples_per_point." + std::string(benchmark_name(kind)) + ": must be >= 1");
        }
    }
    noise.validate();
}

void apply_override(json &config, const std::string &assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ParseError("override '" + assignment + "': expected path=value");
    }
    std::string path = assignment.substr(0, eq);
    std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        value = text;
    }
    if (!config.is_object()) {
        throw ParseError("override '" + assignment + "': config is not an object");
    }
    json *node = &config;
    std::size_t pos = 0;
    while (true) {
        auto dot = path.find('.', pos);
        std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (key.empty()) {
            throw ParseError("override '" + assignment + "': empty path component");
        }
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        json &child = (*node)[key];
        if (child.is_null()) {
            child = json::object();
        }
        if (!child.is_object()) {
            throw ParseError("override '" + assignment + "': " + path.substr(0, dot) + " is not an object");
        }
        node = &child;
        pos = dot + 1;
    }
}

namespace {

std::string resolve(const std::string &base_dir, const std::string &path) {
    fs::path p(path);
    return p.is_absolute() ? path : (fs::path(base_dir) / p).string();
}

json read_json_file(const std::string &path, const std::string &field) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(field + ": cannot open " + path);
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw ParseError(field + ": " + path + " is not valid JSON");
    }
    return j;
}

std::uint64_t as_uint(const json &v, const std::string &field) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ParseError(field + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

BenchmarkKind kind_of(const json &v, const std::string &field) {
    if (!v.is_string()) {
        throw ParseError(field + ": expected a benchmark kind name");
    }
    auto kind = benchmark_kind_from_name(v.get<std::string>());
    if (!kind) {
        throw ParseError(field + ": unknown benchmark kind '" + v.get<std::string>() + "'");
    }
    return *kind;
}

}  // namespace

NoiseParams noise_from_config(const json &v, const std::string &base_dir) {
    try {
        if (v.is_object()) {
            return noise_params_from_json(v);
        }
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            if (s == "default") {
                return NoiseParams{};
            }
            if (s == "noiseless") {
                return NoiseParams::noiseless();
            }
            return noise_params_from_json(read_json_file(resolve(base_dir, s), "config.noise"));
        }
    } catch (const IoError &) {
        throw;
    } catch (const Error &e) {
        std::string what = e.what();
        throw ParseError(what.rfind("noise.", 0) == 0 ? "config." + what : "config.noise: " + what);
    }
    throw ParseError("config.noise: expected an object, \"default\", \"noiseless\" or a file path");
}

RunConfig run_config_from_json(const json &j, const std::string &base_dir) {
    if (!j.is_object()) {
        throw ParseError("config: expected a JSON object");
    }
    RunConfig c;
    bool kinds_given = false;
    for (const auto &[key, v] : j.items()) {
        if (!key.empty() && key[0] == '_') {
            continue;
        }
        std::string field = "config." + key;
        if (key == "noise") {
            c.noise = noise_from_config(v, base_dir);
        } else if (key == "kinds") {
            kinds_given = true;
            if (v.is_string() && v.get<std::string>() == "all") {
                for (BenchmarkKind k : all_benchmark_kinds()) {
                    if (k != BenchmarkKind::kExternal) {
                        c.kinds.push_back(k);
                    }
                }
            } else if (v.is_array()) {
                for (std::size_t i = 0; i < v.size(); i++) {
                    c.kinds.push_back(kind_of(v[i], field + "[" + std::to_string(i) + "]"));
                }
            } else {
                throw ParseError(field + ": expected a list of kinds or \"all\"");
            }
        } else if (key == "topologies") {
            if (!v.is_array()) {
                throw ParseError(field + ": expected a list");
            }
            c.topologies.clear();
            for (std::size_t i = 0; i < v.size(); i++) {
                try {
                    c.topologies.push_back(topology_from_json(v[i]));
                } catch (const Error &e) {
                    throw ParseError(field + "[" + std::to_string(i) + "]: " + e.what());
                }
            }
        } else if (key == "widths") {
            if (v.is_number_integer()) {
                c.min_width = c.max_width = as_uint(v, field);
            } else if (v.is_array() && v.size() == 2) {
                c.min_width = as_uint(v[0], field + "[0]");
                c.max_width = as_uint(v[1], field + "[1]");
            } else if (v.is_object()) {
                for (const auto &[k, w] : v.items()) {
                    if (k == "min") {
                        c.min_width = as_uint(w, field + ".min");
                    } else if (k == "max") {
                        c.max_width = as_uint(w, field + ".max");
                    } else {
                        throw ParseError(field + "." + k + ": unknown field");
                    }
                }
            } else {
                throw ParseError(field + ": expected N, [min, max] or {\"min\", \"max\"}");
            }
        } else if (key == "samples_per_point") {
            if (!v.is_object()) {
                throw ParseError(field + ": expected an object of kind: count");
            }
            for (const auto &[k, n] : v.items()) {
                c.samples_per_point[kind_of(json(k), field + "." + k)] = as_uint(n, field + "." + k);
            }
        } else if (key == "external") {
            if (!v.is_array()) {
                throw ParseError(field + ": expected a list of file paths");
            }
            for (std::size_t i = 0; i < v.size(); i++) {
                if (!v[i].is_string()) {
                    throw ParseError(field + "[" + std::to_string(i) + "]: expected a file path");
                }
                c.external.push_back(resolve(base_dir, v[i].get<std::string>()));
            }
        } else if (key == "seed") {
            c.seed = as_uint(v, field);
        } else if (key == "threads") {
            c.threads = as_uint(v, field);
        } else if (key == "memory_cap") {
            c.memory_cap = as_uint(v, field);
        } else if (key == "out_dir") {
            if (!v.is_string()) {
                throw ParseError(field + ": expected a directory path");
            }
            c.out_dir = v.get<std::string>();
        } else {
            throw ParseError(field + ": unknown field");
        }
    }
    if (!kinds_given) {
        throw ParseError("config.kinds: missing");
    }
    c.validate();
    return c;
}

json run_config_to_json(const RunConfig &c) {
    json kinds = json::array();
    for (BenchmarkKind k : c.kinds) {
        kinds.push_back(std::string(benchmark_name(k)));
    }
    json topologies = json::array();
    for (const Topology &t : c.topologies) {
        topologies.push_back(topology_to_json(t));
    }
    json samples = json::object();
    for (const auto &[k, n] : c.samples_per_point) {
        samples[std::string(benchmark_name(k))] = n;
    }
    return {
        {"noise", noise_params_to_json(c.noise)},
        {"kinds", kinds},
        {"topologies", topologies},
        {"widths", {c.min_width, c.max_width}},
        {"samples_per_point", samples},
        {"external", c.external},
        {"seed", c.seed},
        {"threads", c.threads},
        {"memory_cap", c.memory_cap},
        {"out_dir", c.out_dir},
    };
}

namespace {

struct Task {
    std::size_t point = 0;
    BenchmarkSpec spec;
    Topology topology;
};

struct Outcome {
    std::optional<ResultRecord> record;
    std::optional<Failure> failure;
};

std::uint64_t point_seed(std::uint64_t seed, BenchmarkKind kind, std::size_t width) {
    std::uint64_t h = seed * 0x9E3779B97F4A7C15ULL;
    h ^= (static_cast<std::uint64_t>(kind) + 1) * 0xBF58476D1CE4E5B9ULL;
    h ^= (static_cast<std::uint64_t>(width) + 1) * 0x94D049BB133111EBULL;
    return h;
}

}  // namespace

SuiteResult run_suite(const RunConfig &config) {
    config.validate();
    SuiteResult result;
    std::vector<Task> tasks;

    auto add_point = [&](BenchmarkKind kind, std::size_t width, const Topology &topo,
                         const std::vector<BenchmarkSpec> &specs) {
        PointSummary p;
        p.kind = std::string(benchmark_name(kind));
        p.width = width;
        p.topology = topo.name();
        std::size_t index = result.points.size();
        result.points.push_back(p);
        for (const BenchmarkSpec &s : specs) {
            tasks.push_back({index, s, topo});
        }
    };

    for (BenchmarkKind kind : config.kinds) {
        if (kind == BenchmarkKind::kExternal) {
            // One instance per file; points group files of equal width.
            std::map<std::size_t, std::vector<BenchmarkSpec>> by_width;
            for (const std::string &path : config.external) {
                std::size_t width = load_external(path).circuit.n_qubits;
                BenchmarkSpec s;
                s.kind = kind;
                s.width = width;
                s.path = path;
                s.seed = config.seed;
                by_width[width].push_back(s);
            }
            for (const Topology &topo : config.topologies) {
                for (const auto &[width, specs] : by_width) {
                    add_point(kind, width, topo, specs);
                }
            }
            continue;
        }
        for (std::size_t width = config.min_width; width <= config.max_width; width++) {
            if (!width_supported(kind, width)) {
                result.skipped_points += config.topologies.size();
                continue;
            }
            auto specs =
                sample_instances(kind, width, config.samples_for(kind), point_seed(config.seed, kind, width));
            for (const Topology &topo : config.topologies) {
                add_point(kind, width, topo, specs);
            }
        }
    }

    std::vector<Outcome> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) {
                return;
            }
            const Task &t = tasks[i];
            try {
                outcomes[i].record = run_instance(t.spec, t.topology, config.noise, config.memory_cap);
            } catch (const Error &e) {
                outcomes[i].failure = Failure{std::string(benchmark_name(t.spec.kind)), t.spec.width,
                                              t.topology.name(), instance_json(t.spec), static_cast<int>(e.code()),
                                              e.what()};
            } catch (const std::exception &e) {
                outcomes[i].failure =
                    Failure{std::string(benchmark_name(t.spec.kind)), t.spec.width, t.topology.name(),
                            instance_json(t.spec), static_cast<int>(ErrorCode::kInternal), e.what()};
            }
        }
    };
    std::size_t n_threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    n_threads = std::max<std::size_t>(1, std::min(n_threads, tasks.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < n_threads; k++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    std::vector<double> f_sum(result.points.size(), 0.0);
    std::vector<double> depth_sum(result.points.size(), 0.0);
    std::vector<std::size_t> scored(result.points.size(), 0);
    for (std::size_t i = 0; i < tasks.size(); i++) {
        if (outcomes[i].failure) {
            result.failures.push_back(*outcomes[i].failure);
            continue;
        }
        const ResultRecord &r = *outcomes[i].record;
        std::size_t p = tasks[i].point;
        result.points[p].instances++;
        depth_sum[p] += static_cast<double>(r.depth);
        if (!r.degenerate) {
            f_sum[p] += r.f;
            scored[p]++;
        }
        result.records.push_back(r);
    }
    for (std::size_t p = 0; p < result.points.size(); p++) {
        PointSummary &s = result.points[p];
        s.mean_fidelity =
            scored[p] > 0 ? f_sum[p] / static_cast<double>(scored[p]) : std::numeric_limits<double>::quiet_NaN();
        s.mean_depth = s.instances > 0 ? depth_sum[p] / static_cast<double>(s.instances)
                                       : std::numeric_limits<double>::quiet_NaN();
    }
    // Points whose every instance failed carry no data.
    std::erase_if(result.points, [](const PointSummary &s) { return s.instances == 0; });
    return result;
}

json suite_to_json(const SuiteResult &result) {
    json records = json::array();
    for (const auto &r : result.records) {
        records.push_back(record_to_json(r));
    }
    json points = json::array();
    for (const auto &p : result.points) {
        points.push_back({{"kind", p.kind},
                          {"width", p.width},
                          {"topology", p.topology},
                          {"mean_fidelity", number_or_null(p.mean_fidelity)},
                          {"mean_depth", number_or_null(p.mean_depth)},
                          {"instances", p.instances}});
    }
    json failures = json::array();
    for (const auto &f : result.failures) {
        failures.push_back({{"kind", f.kind},
                            {"width", f.width},
                            {"topology", f.topology},
                            {"instance", f.instance},
                            {"code", f.code},
                            {"message", f.message}});
    }
    return {{"records", records},
            {"points", points},
            {"failures", failures},
            {"skipped_points", result.skipped_points}};
}

namespace {

std::string csv_number(double v) {
    if (!std::isfinite(v)) {
        return "";
    }
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

}  // namespace

std::string summary_csv(const SuiteResult &result) {
    std::ostringstream out;
    out << "kind,width,topology,mean_fidelity,mean_depth\n";
    for (const auto &p : result.points) {
        out << p.kind << ',' << p.width << ',' << p.topology << ',' << csv_number(p.mean_fidelity) << ','
            << csv_number(p.mean_depth) << '\n';
    }
    return out.str();
}

std::string heatmap_csv(const SuiteResult &result) {
    struct Cell {
        double sum = 0.0;
        std::size_t n = 0;
    };
    // (topology, width, depth bin exponent)
    std::map<std::tuple<std::string, std::size_t, int>, Cell> cells;
    for (const auto &p : result.points) {
        if (!std::isfinite(p.mean_fidelity) || !std::isfinite(p.mean_depth)) {
            continue;
        }
        int bin = p.mean_depth < 1.0 ? 0 : static_cast<int>(std::floor(std::log2(p.mean_depth)));
        Cell &c = cells[{p.topology, p.width, bin}];
        c.sum += p.mean_fidelity;
        c.n++;
    }
    std::ostringstream out;
    out << "topology,width,depth_lo,depth_hi,mean_fidelity,points\n";
    for (const auto &[key, c] : cells) {
        const auto &[topo, width, bin] = key;
        out << topo << ',' << width << ',' << (std::size_t{1} << bin) << ',' << (std::size_t{1} << (bin + 1)) << ','
            << csv_number(c.sum / static_cast<double>(c.n)) << ',' << c.n << '\n';
    }
    return out.str();
}

std::string timings_csv(const SuiteResult &result) {
    std::ostringstream out;
    out << "kind,width,topology,instance,wall_time\n";
    for (const auto &r : result.records) {
        out << r.kind << ',' << r.width << ',' << r.topology << ',' << r.instance.value("instance", 0ULL) << ','
            << csv_number(r.wall_time) << '\n';
    }
    return out.str();
}

namespace {

void write_file(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

}  // namespace

void write_suite_outputs(const SuiteResult &result, const RunConfig &config) {
    fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    json results = suite_to_json(result);
    results["config"] = run_config_to_json(config);
    write_file(dir / "results.json", results.dump(2) + "\n");
    write_file(dir / "summary.csv", summary_csv(result));
    write_file(dir / "heatmap.csv", heatmap_csv(result));
    write_file(dir / "timings.csv", timings_csv(result));
    fs::path manifest = dir / "failures.json";
    if (!result.failures.empty()) {
        write_file(manifest, suite_to_json(result)["failures"].dump(2) + "\n");
    } else {
        fs::remove(manifest, ec);
    }
}

}  // namespace nasim

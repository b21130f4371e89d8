// Copyright 2026 The tcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tcd/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace tcd {

using nlohmann::json;

const char *circuit_kind_name(CircuitKind k) {
    switch (k) {
        case CircuitKind::RandomClifford: return "random_clifford";
        case CircuitKind::Memory: return "memory";
        case CircuitKind::Ghz: return "ghz";
        case CircuitKind::Distillation: return "distillation";
        case CircuitKind::SmallAngle: return "small_angle";
    }
    return "?";
}

CircuitKind parse_circuit_kind(const std::string &s) {
    for (auto k : {CircuitKind::RandomClifford, CircuitKind::Memory, CircuitKind::Ghz, CircuitKind::Distillation,
                   CircuitKind::SmallAngle})
        if (s == circuit_kind_name(k)) return k;
    throw std::invalid_argument("unknown circuit kind: " + s);
}

LogicalCircuit build_circuit(const CircuitSpec &spec, size_t distance) {
    switch (spec.kind) {
        case CircuitKind::RandomClifford: {
            RandomCliffordOptions o;
            o.num_qubits = spec.num_qubits;
            o.depth = spec.depth;
            return build_random_clifford(spec.seed, o);
        }
        case CircuitKind::Memory: return build_memory(spec.rounds ? spec.rounds : distance);
        case CircuitKind::Ghz: return build_ghz_comparison();
        case CircuitKind::Distillation: return build_distillation();
        case CircuitKind::SmallAngle: return build_small_angle_example(spec.branch);
    }
    throw std::invalid_argument("build_circuit: bad kind");
}

static const char *layout_name(LayoutKind k) { return k == LayoutKind::Rotated ? "rotated" : "unrotated"; }

static LayoutKind parse_layout(const std::string &s) {
    if (s == "rotated") return LayoutKind::Rotated;
    if (s == "unrotated") return LayoutKind::Unrotated;
    throw std::invalid_argument("unknown layout: " + s);
}

static const char *noise_name(NoiseKind k) {
    return k == NoiseKind::CircuitLevel ? "circuit" : "phenomenological";
}

static NoiseKind parse_noise(const std::string &s) {
    if (s == "circuit") return NoiseKind::CircuitLevel;
    if (s == "phenomenological") return NoiseKind::Phenomenological;
    throw std::invalid_argument("unknown noise kind: " + s);
}

ExperimentConfig default_config(const std::string &experiment) {
    ExperimentConfig c;
    c.experiment = experiment;
    if (experiment == "threshold") {
        c.p = {0.002, 0.0025, 0.003, 0.004, 0.005, 0.006, 0.007, 0.008, 0.009, 0.010, 0.012, 0.014};
        c.per_layer = true;
    } else if (experiment == "ghz-compare") {
        c.circuit.kind = CircuitKind::Ghz;
        c.layout = LayoutKind::Rotated;
        c.shots = 1000000;
    } else if (experiment == "distill") {
        c.circuit.kind = CircuitKind::Distillation;
        c.layout = LayoutKind::Rotated;
        c.distances = {3, 5};
        c.mode = DecodeMode::Commit;
        c.p = {0.002, 0.003, 0.004, 0.005, 0.006, 0.007, 0.008, 0.009, 0.010, 0.012};
    } else if (experiment == "volume-runtime") {
        c.distances = {3, 5, 7, 9, 11};
        c.p = {0.001};
        c.shots = 2000;
        c.threads = 1;
    } else if (experiment == "surgery-estimate") {
        c.circuit.num_qubits = 10;
        c.circuit.depth = 14;
    } else if (experiment != "run") {
        throw std::invalid_argument("unknown experiment: " + experiment);
    }
    return c;
}

template <class T>
static T field(const json &j, const char *key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("config field ") + key + ": " + e.what());
    }
}

ExperimentConfig parse_config(const std::string &json_text, const ExperimentConfig &base) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("config is not JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    ExperimentConfig c = base;
    for (auto &[key, v] : j.items()) {
        if (key == "experiment") {
            c.experiment = field<std::string>(j, "experiment");
        } else if (key == "circuit") {
            if (!v.is_object()) throw std::invalid_argument("config field circuit must be an object");
            for (auto &[ck, cv] : v.items()) {
                (void)cv;
                if (ck == "kind") c.circuit.kind = parse_circuit_kind(field<std::string>(v, "kind"));
                else if (ck == "seed") c.circuit.seed = field<uint64_t>(v, "seed");
                else if (ck == "num_qubits") c.circuit.num_qubits = field<size_t>(v, "num_qubits");
                else if (ck == "depth") c.circuit.depth = field<size_t>(v, "depth");
                else if (ck == "rounds") c.circuit.rounds = field<size_t>(v, "rounds");
                else if (ck == "branch") c.circuit.branch = field<bool>(v, "branch");
                else throw std::invalid_argument("unknown circuit field: " + ck);
            }
        } else if (key == "layout") {
            c.layout = parse_layout(field<std::string>(j, "layout"));
        } else if (key == "distances") {
            c.distances = field<std::vector<size_t>>(j, "distances");
        } else if (key == "p") {
            c.p = field<std::vector<double>>(j, "p");
        } else if (key == "shots") {
            c.shots = field<uint64_t>(j, "shots");
        } else if (key == "seed") {
            c.seed = field<uint64_t>(j, "seed");
        } else if (key == "mode") {
            c.mode = parse_mode(field<std::string>(j, "mode"));
        } else if (key == "noise") {
            c.noise = parse_noise(field<std::string>(j, "noise"));
        } else if (key == "threads") {
            c.threads = field<size_t>(j, "threads");
        } else if (key == "bootstrap") {
            c.bootstrap = field<size_t>(j, "bootstrap");
        } else if (key == "per_layer") {
            c.per_layer = field<bool>(j, "per_layer");
        } else if (key == "surgery") {
            c.surgery = field<std::string>(j, "surgery");
        } else if (key == "out") {
            c.out = field<std::string>(j, "out");
        } else {
            throw std::invalid_argument("unknown config field: " + key);
        }
    }
    if (c.distances.empty()) throw std::invalid_argument("config needs at least one distance");
    for (size_t d : c.distances)
        if (d < 2) throw std::invalid_argument("distance must be at least 2");
    for (double p : c.p)
        if (!(p >= 0.0 && p <= 0.75)) throw std::invalid_argument("p must lie in [0, 0.75]");
    if (c.surgery != "distillation" && c.surgery != "clifford")
        throw std::invalid_argument("surgery must be distillation or clifford");
    return c;
}

std::string config_to_json(const ExperimentConfig &c) {
    json j;
    j["experiment"] = c.experiment;
    j["circuit"] = {{"kind", circuit_kind_name(c.circuit.kind)},
                    {"seed", c.circuit.seed},
                    {"num_qubits", c.circuit.num_qubits},
                    {"depth", c.circuit.depth},
                    {"rounds", c.circuit.rounds},
                    {"branch", c.circuit.branch}};
    j["layout"] = layout_name(c.layout);
    j["distances"] = c.distances;
    j["p"] = c.p;
    j["shots"] = c.shots;
    j["seed"] = c.seed;
    j["mode"] = mode_name(c.mode);
    j["noise"] = noise_name(c.noise);
    j["threads"] = c.threads;
    j["bootstrap"] = c.bootstrap;
    j["per_layer"] = c.per_layer;
    j["surgery"] = c.surgery;
    j["out"] = c.out;
    return j.dump();
}

uint64_t point_seed(uint64_t seed, size_t distance, size_t p_index) {
    // splitmix64 over the point coordinates
    uint64_t z = seed ^ ((uint64_t)distance << 32) ^ (uint64_t)p_index * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

static size_t worker_count(size_t threads) {
    if (threads) return threads;
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

// Batches b = w, w + W, ... on worker w; counts and step times summed over workers.
static ShotCounts run_batches(const Pipeline &pl, uint64_t seed, uint64_t shots, size_t threads,
                              std::vector<int64_t> *step_ns) {
    const uint64_t nb = (shots + kLanes - 1) / kLanes;
    const size_t w = (size_t)std::min<uint64_t>(worker_count(threads), std::max<uint64_t>(nb, 1));
    std::vector<ShotCounts> part(w);
    std::vector<std::vector<int64_t>> ns(w);
    std::vector<std::exception_ptr> err(w);
    auto work = [&](size_t t) {
        try {
            part[t].observable_failures.assign(pl.observables().meas.size(), 0);
            std::vector<int64_t> local;
            for (uint64_t b = t; b < nb; b += w) {
                size_t lanes = (size_t)std::min<uint64_t>(kLanes, shots - b * kLanes);
                ShotBatch batch = pl.sampler().sample(seed, b, lanes, false);
                pl.evaluate(batch, part[t], step_ns ? &local : nullptr);
                if (step_ns) {
                    ns[t].resize(local.size(), 0);
                    for (size_t i = 0; i < local.size(); i++) ns[t][i] += local[i];
                }
            }
        } catch (...) {
            err[t] = std::current_exception();
        }
    };
    if (w == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < w; t++) pool.emplace_back(work, t);
        for (auto &th : pool) th.join();
    }
    for (auto &e : err)
        if (e) std::rethrow_exception(e);
    ShotCounts total;
    total.observable_failures.assign(pl.observables().meas.size(), 0);
    for (auto &p : part) total.merge(p);
    if (step_ns) {
        step_ns->assign(pl.decoder().steps().size(), 0);
        for (auto &v : ns)
            for (size_t i = 0; i < v.size(); i++) (*step_ns)[i] += v[i];
    }
    return total;
}

ShotCounts run_shots(const Pipeline &pl, uint64_t seed, uint64_t shots, size_t threads) {
    return run_batches(pl, seed, shots, threads, nullptr);
}

PipelineConfig pipeline_config(const ExperimentConfig &cfg, size_t distance, double p) {
    PipelineConfig pc;
    pc.layout = cfg.layout;
    pc.distance = distance;
    pc.noise.kind = cfg.noise;
    pc.noise.p = p;
    pc.decoder.mode = cfg.mode;
    return pc;
}

std::vector<RatePoint> run_sweep(const ExperimentConfig &cfg) {
    std::vector<RatePoint> out;
    for (size_t d : cfg.distances) {
        LogicalCircuit c = build_circuit(cfg.circuit, d);
        for (size_t i = 0; i < cfg.p.size(); i++) {
            Pipeline pl(c, pipeline_config(cfg, d, cfg.p[i]));
            ShotCounts k = run_shots(pl, point_seed(cfg.seed, d, i), cfg.shots, cfg.threads);
            out.push_back({d, cfg.p[i], k.shots, k.failures});
        }
    }
    return out;
}

ThresholdOptions threshold_options(const ExperimentConfig &cfg) {
    ThresholdOptions o;
    o.bootstrap = cfg.bootstrap;
    o.seed = cfg.seed;
    if (cfg.per_layer) {
        o.depth = cfg.circuit.depth;
        o.num_qubits = cfg.circuit.num_qubits;
    }
    return o;
}

std::vector<ModeRate> run_ghz_comparison(const ExperimentConfig &cfg) {
    if (cfg.p.empty()) throw std::invalid_argument("ghz comparison needs p");
    std::vector<ModeRate> out;
    LogicalCircuit c = build_circuit(cfg.circuit, 0);
    for (DecodeMode m : {DecodeMode::Parallel, DecodeMode::IterativeCopy}) {
        ExperimentConfig mc = cfg;
        mc.mode = m;
        for (size_t d : cfg.distances) {
            Pipeline pl(c, pipeline_config(mc, d, cfg.p[0]));
            ShotCounts k = run_shots(pl, point_seed(cfg.seed, d, (size_t)m), cfg.shots, cfg.threads);
            out.push_back({m, {d, cfg.p[0], k.shots, k.failures}});
        }
    }
    return out;
}

std::vector<DistillationPoint> run_distillation(const ExperimentConfig &cfg) {
    if (cfg.mode != DecodeMode::Commit) throw std::invalid_argument("distillation runs in commit mode");
    DistillationLayout lay;
    LogicalCircuit c = build_distillation(&lay);
    const size_t num_stages = lay.stage_measurements.size();
    std::vector<size_t> stage_of(c.num_measurements(), 0);
    for (size_t s = 0; s < num_stages; s++)
        for (size_t m : lay.stage_measurements[s]) stage_of.at(m) = s;
    const size_t probe_meas = lay.stage_measurements.back().back();
    std::vector<DistillationPoint> out;
    for (size_t d : cfg.distances) {
        for (size_t i = 0; i < cfg.p.size(); i++) {
            Pipeline pl(c, pipeline_config(cfg, d, cfg.p[i]));
            std::vector<int64_t> ns;
            ShotCounts k = run_batches(pl, point_seed(cfg.seed, d, i), cfg.shots, cfg.threads, &ns);
            DistillationPoint dp;
            dp.point = {d, cfg.p[i], k.shots, k.failures};
            dp.stages.assign(num_stages, {});
            // logical measurement columns of each observable
            auto product_measurements = [&](uint32_t o) { return pl.basis().columns.at(pl.observables().columns.at(o)); };
            std::vector<bool> seen(pl.checks().size(), false);
            uint32_t probe_obs = UINT32_MAX;
            for (size_t o = 0; o < pl.observables().meas.size(); o++) {
                std::vector<uint32_t> ms = product_measurements((uint32_t)o);
                if (std::find(ms.begin(), ms.end(), (uint32_t)probe_meas) != ms.end()) probe_obs = (uint32_t)o;
            }
            if (probe_obs == UINT32_MAX) throw std::logic_error("distillation: probe is not a reliable product");
            dp.probe_failures = k.observable_failures[probe_obs];
            const auto &steps = pl.decoder().steps();
            for (size_t si = 0; si < steps.size(); si++) {
                const DecodeStep &st = steps[si];
                std::vector<uint32_t> ms = product_measurements(st.observable);
                size_t s = 0;
                for (uint32_t m : ms) s = std::max(s, stage_of[m]);
                dp.stages[s].steps++;
                dp.stages[s].volume += st.subgraph.checks.size();
                dp.stages[s].ns_per_shot += k.shots ? (double)ns[si] / (double)k.shots : 0.0;
                if (st.observable == probe_obs)
                    for (uint32_t ch : st.subgraph.checks) dp.redecoded_at_probe += seen[ch];
                for (uint32_t ch : st.subgraph.checks) seen[ch] = true;
            }
            out.push_back(dp);
        }
    }
    return out;
}

std::vector<VolumeSample> measure_volume_runtime(const ExperimentConfig &cfg) {
    if (cfg.p.empty()) throw std::invalid_argument("volume-runtime needs p");
    std::vector<VolumeSample> out;
    for (size_t d : cfg.distances) {
        LogicalCircuit c = build_circuit(cfg.circuit, d);
        Pipeline pl(c, pipeline_config(cfg, d, cfg.p[0]));
        std::vector<int64_t> ns;
        ShotCounts k = run_batches(pl, point_seed(cfg.seed, d, 0), cfg.shots, 1, &ns);
        const auto &steps = pl.decoder().steps();
        for (size_t si = 0; si < steps.size(); si++)
            out.push_back({d, steps[si].observable, steps[si].subgraph.checks.size(),
                           k.shots ? (double)ns[si] / (double)k.shots : 0.0});
    }
    return out;
}

}  // namespace tcd

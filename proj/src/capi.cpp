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


#include "tcd/tcd.h"

#include <exception>
#include <memory>
#include <stdexcept>
#include <string>

#include "tcd/bench.hpp"

struct tcd_config {
    tcd::ExperimentConfig cfg;
    std::string json;
};

struct tcd_report {
    tcd::Report report;
    std::string csv;
};

struct tcd_pipeline {
    tcd::LogicalCircuit circuit;
    std::unique_ptr<tcd::Pipeline> pipeline;
    size_t threads = 0;
};

namespace {

thread_local std::string last_error;

template <class F>
tcd_status guarded(F &&f) {
    try {
        f();
        last_error.clear();
        return TCD_OK;
    } catch (const std::invalid_argument &e) {
        last_error = e.what();
        return TCD_ERR_INVALID_ARGUMENT;
    } catch (const std::exception &e) {
        last_error = e.what();
        return TCD_ERR_RUNTIME;
    } catch (...) {
        last_error = "unknown error";
        return TCD_ERR_RUNTIME;
    }
}

tcd_status null_arg(const char *what) {
    last_error = std::string("null argument: ") + what;
    return TCD_ERR_NULL;
}

}  // namespace

extern "C" {

const char *tcd_version(void) { return "0.1.0"; }

const char *tcd_last_error(void) { return last_error.c_str(); }

int tcd_csv_version(void) { return tcd::kCsvVersion; }

tcd_status tcd_config_create(const char *experiment, tcd_config **out) {
    if (!experiment) return null_arg("experiment");
    if (!out) return null_arg("out");
    return guarded([&] { *out = new tcd_config{tcd::default_config(experiment), {}}; });
}

tcd_status tcd_config_apply_json(tcd_config *cfg, const char *json) {
    if (!cfg) return null_arg("cfg");
    if (!json) return null_arg("json");
    return guarded([&] { cfg->cfg = tcd::parse_config(json, cfg->cfg); });
}

tcd_status tcd_config_set_seed(tcd_config *cfg, uint64_t seed) {
    if (!cfg) return null_arg("cfg");
    cfg->cfg.seed = seed;
    return TCD_OK;
}

tcd_status tcd_config_set_shots(tcd_config *cfg, uint64_t shots) {
    if (!cfg) return null_arg("cfg");
    cfg->cfg.shots = shots;
    return TCD_OK;
}

tcd_status tcd_config_set_mode(tcd_config *cfg, const char *mode) {
    if (!cfg) return null_arg("cfg");
    if (!mode) return null_arg("mode");
    return guarded([&] { cfg->cfg.mode = tcd::parse_mode(mode); });
}

tcd_status tcd_config_set_out(tcd_config *cfg, const char *path) {
    if (!cfg) return null_arg("cfg");
    if (!path) return null_arg("path");
    cfg->cfg.out = path;
    return TCD_OK;
}

tcd_status tcd_config_json(const tcd_config *cfg, const char **out) {
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    return guarded([&] {
        auto *c = const_cast<tcd_config *>(cfg);
        c->json = tcd::config_to_json(c->cfg);
        *out = c->json.c_str();
    });
}

tcd_status tcd_config_out(const tcd_config *cfg, const char **out) {
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    *out = cfg->cfg.out.c_str();
    return TCD_OK;
}

void tcd_config_destroy(tcd_config *cfg) { delete cfg; }

tcd_status tcd_run(const tcd_config *cfg, tcd_report **out) {
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    return guarded([&] {
        auto r = std::make_unique<tcd_report>();
        r->report = tcd::run_experiment(cfg->cfg);
        r->csv = r->report.csv();
        *out = r.release();
    });
}

tcd_status tcd_report_csv(const tcd_report *r, const char **out) {
    if (!r) return null_arg("report");
    if (!out) return null_arg("out");
    *out = r->csv.c_str();
    return TCD_OK;
}

tcd_status tcd_report_summary(const tcd_report *r, const char **out) {
    if (!r) return null_arg("report");
    if (!out) return null_arg("out");
    *out = r->report.summary_json.c_str();
    return TCD_OK;
}

size_t tcd_report_num_violations(const tcd_report *r) { return r ? r->report.violations.size() : 0; }

const char *tcd_report_violation(const tcd_report *r, size_t i) {
    if (!r || i >= r->report.violations.size()) return nullptr;
    return r->report.violations[i].c_str();
}

void tcd_report_destroy(tcd_report *r) { delete r; }

tcd_status tcd_pipeline_create(const tcd_config *cfg, size_t distance, double p, tcd_pipeline **out) {
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    return guarded([&] {
        auto pl = std::make_unique<tcd_pipeline>();
        pl->circuit = tcd::build_circuit(cfg->cfg.circuit, distance);
        pl->pipeline = std::make_unique<tcd::Pipeline>(pl->circuit, tcd::pipeline_config(cfg->cfg, distance, p));
        pl->threads = cfg->cfg.threads;
        *out = pl.release();
    });
}

tcd_status tcd_pipeline_run(const tcd_pipeline *pl, uint64_t seed, uint64_t shots, uint64_t *failures) {
    if (!pl) return null_arg("pipeline");
    if (!failures) return null_arg("failures");
    return guarded([&] { *failures = tcd::run_shots(*pl->pipeline, seed, shots, pl->threads).failures; });
}

size_t tcd_pipeline_num_observables(const tcd_pipeline *pl) {
    return pl ? pl->pipeline->observables().meas.size() : 0;
}

void tcd_pipeline_destroy(tcd_pipeline *pl) { delete pl; }

tcd_status tcd_surgery_estimate(const char *kind, size_t num_qubits, size_t depth, double *work, double *latency) {
    if (!kind) return null_arg("kind");
    if (!work || !latency) return null_arg("work/latency");
    return guarded([&] {
        tcd::SurgeryEstimate e;
        std::string k = kind;
        if (k == "distillation") e = tcd::surgery_distillation();
        else if (k == "clifford") e = tcd::surgery_clifford(num_qubits, depth);
        else throw std::invalid_argument("unknown surgery kind: " + k);
        *work = e.work;
        *latency = e.latency;
    });
}

}  // extern "C"

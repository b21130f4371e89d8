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


#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tcd/bench.hpp"

namespace tcd {

using nlohmann::json;

namespace {

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string num(uint64_t v) { return std::to_string(v); }

json finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<std::string> rate_cells(const RatePoint &pt) {
    Interval ci = wilson_interval(pt.failures, pt.shots);
    return {num(pt.distance), num(pt.p), num(pt.shots), num(pt.failures), num(pt.rate()), num(ci.lo), num(ci.hi)};
}

const std::vector<std::string> kRateColumns{"distance", "p", "shots", "failures", "rate", "ci_lo", "ci_hi"};

void check_noiseless(const RatePoint &pt, Report &r) {
    if (pt.p == 0.0 && pt.failures)
        r.violations.push_back("noiseless point at d=" + num(pt.distance) + " has " + num(pt.failures) + " failures");
}

json threshold_json(const ThresholdResult &t) {
    json j;
    j["bounded"] = t.bounded;
    j["p_th"] = t.p_th;
    j["ci"] = {finite(t.ci.lo), finite(t.ci.hi)};
    j["crossings"] = json::array();
    for (auto &c : t.crossings)
        j["crossings"].push_back({{"d_small", c.small}, {"d_large", c.large}, {"found", c.found}, {"side", c.side},
                                  {"p", c.p}});
    j["slopes"] = json::array();
    for (auto &s : t.slopes)
        j["slopes"].push_back({{"distance", s.distance}, {"points", s.points}, {"exponent", s.exponent},
                               {"expected", s.expected}});
    return j;
}

Report threshold_report(const ExperimentConfig &cfg, bool fit) {
    Report r;
    auto pts = run_sweep(cfg);
    auto opt = threshold_options(cfg);
    r.columns = kRateColumns;
    if (cfg.per_layer) {
        for (auto c : {"per_layer_rate", "per_layer_lo", "per_layer_hi"}) r.columns.push_back(c);
    }
    for (auto &pt : pts) {
        check_noiseless(pt, r);
        auto row = rate_cells(pt);
        if (cfg.per_layer) {
            const double pmax = max_failure_rate(opt.num_qubits);
            Interval ci = wilson_interval(pt.failures, pt.shots);
            for (double v : {pt.rate(), ci.lo, ci.hi})
                row.push_back(num(per_layer_rate(std::min(v, pmax), opt.depth, opt.num_qubits)));
        }
        r.rows.push_back(row);
    }
    json s;
    if (fit && cfg.distances.size() >= 2) s["threshold"] = threshold_json(estimate_threshold(pts, opt));
    r.summary_json = s.dump();
    return r;
}

Report ghz_report(const ExperimentConfig &cfg) {
    Report r;
    auto res = run_ghz_comparison(cfg);
    r.columns = {"mode"};
    r.columns.insert(r.columns.end(), kRateColumns.begin(), kRateColumns.end());
    json s;
    std::vector<double> par, it;
    for (auto &m : res) {
        check_noiseless(m.point, r);
        auto row = rate_cells(m.point);
        row.insert(row.begin(), mode_name(m.mode));
        r.rows.push_back(row);
        (m.mode == DecodeMode::Parallel ? par : it).push_back(m.point.rate());
    }
    json ratios = json::array();
    for (size_t i = 0; i + 1 < par.size(); i++) {
        ratios.push_back(par[i + 1] > 0 ? json(par[i] / par[i + 1]) : json(nullptr));
        if (cfg.p[0] > 0 && !(par[i + 1] < par[i]))
            r.violations.push_back("subgraph decoding rate does not decrease from d=" + num(cfg.distances[i]) +
                                   " to d=" + num(cfg.distances[i + 1]));
    }
    s["parallel_step_ratios"] = ratios;
    double spread = 0.0;
    for (double v : it)
        if (it[0] > 0) spread = std::max(spread, std::fabs(v / it[0] - 1.0));
    s["iterative_relative_spread"] = spread;
    r.summary_json = s.dump();
    return r;
}

Report distill_report(const ExperimentConfig &cfg) {
    Report r;
    auto res = run_distillation(cfg);
    r.columns = kRateColumns;
    r.columns.push_back("probe_failures");
    const size_t ns = res.empty() ? 0 : res[0].stages.size();
    for (size_t s = 0; s < ns; s++)
        for (auto c : {"_steps", "_volume", "_ns_per_shot"}) r.columns.push_back("stage" + num(s + 1) + c);
    r.columns.push_back("redecoded_at_probe");
    std::vector<RatePoint> pts, probe;
    for (auto &dp : res) {
        check_noiseless(dp.point, r);
        auto row = rate_cells(dp.point);
        row.push_back(num(dp.probe_failures));
        for (auto &st : dp.stages) {
            row.push_back(num(st.steps));
            row.push_back(num(st.volume));
            row.push_back(num(st.ns_per_shot));
        }
        row.push_back(num(dp.redecoded_at_probe));
        r.rows.push_back(row);
        pts.push_back(dp.point);
        probe.push_back(dp.point);
        probe.back().failures = dp.probe_failures;
        const auto &last = dp.stages.back();
        for (size_t s = 0; s + 1 < dp.stages.size(); s++)
            if (!(last.volume < dp.stages[s].volume))
                r.violations.push_back("final stage volume is not below stage " + num(s + 1) + " at d=" +
                                       num(dp.point.distance));
        if (dp.redecoded_at_probe)
            r.violations.push_back(num(dp.redecoded_at_probe) + " committed checks re-decoded at the probe, d=" +
                                   num(dp.point.distance));
    }
    json s;
    if (cfg.distances.size() >= 2) {
        s["threshold"] = threshold_json(estimate_threshold(probe, threshold_options(cfg)));
        s["threshold_any_product"] = threshold_json(estimate_threshold(pts, threshold_options(cfg)));
    }
    r.summary_json = s.dump();
    return r;
}

Report volume_report(const ExperimentConfig &cfg) {
    Report r;
    auto res = measure_volume_runtime(cfg);
    r.columns = {"distance", "observable", "volume", "ns_per_shot"};
    std::vector<double> x, y;
    for (auto &v : res) {
        r.rows.push_back({num(v.distance), num((uint64_t)v.observable), num(v.volume), num(v.ns_per_shot)});
        x.push_back((double)v.volume);
        y.push_back(v.ns_per_shot);
    }
    json s;
    if (x.size() >= 2) {
        auto f = linear_fit(x, y);
        s["fit"] = {{"slope_ns_per_check", f.slope}, {"intercept_ns", f.intercept}, {"r2", f.r2}};
    }
    r.summary_json = s.dump();
    return r;
}

Report surgery_report(const ExperimentConfig &cfg) {
    Report r;
    r.columns = {"kind", "num_qubits", "depth", "work_T0", "latency_T0"};
    SurgeryEstimate e;
    if (cfg.surgery == "distillation") {
        e = surgery_distillation();
        r.rows.push_back({"distillation", "", "", num(e.work), num(e.latency)});
    } else {
        e = surgery_clifford(cfg.circuit.num_qubits, cfg.circuit.depth);
        r.rows.push_back({"clifford", num(cfg.circuit.num_qubits), num(cfg.circuit.depth), num(e.work), num(e.latency)});
    }
    r.summary_json = json{{"work_T0", e.work}, {"latency_T0", e.latency}}.dump();
    return r;
}

}  // namespace

std::string Report::csv() const {
    std::ostringstream o;
    o << "# tcd-csv v" << kCsvVersion << " " << experiment << "\n";
    for (size_t i = 0; i < columns.size(); i++) o << (i ? "," : "") << columns[i];
    o << "\n";
    for (auto &row : rows) {
        for (size_t i = 0; i < row.size(); i++) o << (i ? "," : "") << row[i];
        o << "\n";
    }
    return o.str();
}

Report run_experiment(const ExperimentConfig &cfg) {
    Report r;
    const std::string &e = cfg.experiment;
    if (e == "threshold") r = threshold_report(cfg, true);
    else if (e == "run") r = threshold_report(cfg, false);
    else if (e == "ghz-compare") r = ghz_report(cfg);
    else if (e == "distill") r = distill_report(cfg);
    else if (e == "volume-runtime") r = volume_report(cfg);
    else if (e == "surgery-estimate") r = surgery_report(cfg);
    else throw std::invalid_argument("unknown experiment: " + e);
    r.experiment = e;
    json s = json::parse(r.summary_json);
    s["experiment"] = e;
    s["csv_version"] = kCsvVersion;
    s["config"] = json::parse(config_to_json(cfg));
    s["violations"] = r.violations;
    r.summary_json = s.dump();
    return r;
}

}  // namespace tcd

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


#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tcd/tcd.h"

namespace {

constexpr int kExitError = 2;
constexpr int kExitInvariant = 3;

struct Options {
    std::string config;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> shots;
    std::string out;
    std::string mode;
    std::optional<size_t> threads;
    bool print_config = false;
    // surgery-estimate
    std::string kind;
    std::optional<size_t> qubits;
    std::optional<size_t> depth;
};

bool check(tcd_status s) {
    if (s == TCD_OK) return true;
    std::cerr << "tcd: " << tcd_last_error() << "\n";
    return false;
}

std::string read_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path);
    if (!f || !(f << text)) throw std::runtime_error("cannot write " + path);
}

int run(const std::string &experiment, const Options &o) {
    tcd_config *cfg = nullptr;
    if (!check(tcd_config_create(experiment.c_str(), &cfg))) return kExitError;
    std::unique_ptr<tcd_config, decltype(&tcd_config_destroy)> cfg_guard(cfg, tcd_config_destroy);
    if (!o.config.empty() && !check(tcd_config_apply_json(cfg, read_file(o.config).c_str()))) return kExitError;
    if (o.seed && !check(tcd_config_set_seed(cfg, *o.seed))) return kExitError;
    if (o.shots && !check(tcd_config_set_shots(cfg, *o.shots))) return kExitError;
    if (!o.mode.empty() && !check(tcd_config_set_mode(cfg, o.mode.c_str()))) return kExitError;
    if (!o.out.empty() && !check(tcd_config_set_out(cfg, o.out.c_str()))) return kExitError;
    std::string overlay;
    auto add = [&](const std::string &kv) { overlay += (overlay.empty() ? "" : ",") + kv; };
    if (o.threads) add("\"threads\":" + std::to_string(*o.threads));
    if (!o.kind.empty()) add("\"surgery\":\"" + o.kind + "\"");
    if (o.qubits || o.depth) {
        std::string c;
        if (o.qubits) c += "\"num_qubits\":" + std::to_string(*o.qubits);
        if (o.depth) c += std::string(c.empty() ? "" : ",") + "\"depth\":" + std::to_string(*o.depth);
        add("\"circuit\":{" + c + "}");
    }
    if (!overlay.empty() && !check(tcd_config_apply_json(cfg, ("{" + overlay + "}").c_str()))) return kExitError;
    if (o.print_config) {
        const char *json = nullptr;
        if (!check(tcd_config_json(cfg, &json))) return kExitError;
        std::cout << json << "\n";
        return 0;
    }

    tcd_report *rep = nullptr;
    if (!check(tcd_run(cfg, &rep))) return kExitError;
    std::unique_ptr<tcd_report, decltype(&tcd_report_destroy)> rep_guard(rep, tcd_report_destroy);
    const char *csv = nullptr, *summary = nullptr, *out = nullptr;
    if (!check(tcd_report_csv(rep, &csv)) || !check(tcd_report_summary(rep, &summary)) ||
        !check(tcd_config_out(cfg, &out)))
        return kExitError;
    if (*out) {
        write_file(out, csv);
        write_file(std::string(out) + ".json", std::string(summary) + "\n");
    } else {
        std::cout << csv;
    }
    std::cerr << summary << "\n";
    const size_t nv = tcd_report_num_violations(rep);
    for (size_t i = 0; i < nv; i++) std::cerr << "invariant violated: " << tcd_report_violation(rep, i) << "\n";
    return nv ? kExitInvariant : 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Correlated decoding of transversal logical circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tcd_version()));
    Options o;
    const std::pair<const char *, const char *> commands[] = {
        {"threshold", "failure rates over (d, p) and the crossing estimate"},
        {"ghz-compare", "product-subgraph versus iterative-copy decoding of the GHZ circuit"},
        {"distill", "distillation factory with committed corrections"},
        {"volume-runtime", "decode time against decoding volume per product"},
        {"surgery-estimate", "decoding work and latency of lattice-surgery baselines"},
        {"run", "failure rates of any configured circuit"},
    };
    for (auto [name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--shots", o.shots, "shots per point");
        sub->add_option("--out", o.out, "CSV output path (summary goes to <out>.json)");
        sub->add_option("--mode", o.mode, "decode mode")->check(CLI::IsMember({"parallel", "commit", "iterative"}));
        sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
        sub->add_flag("--print-config", o.print_config, "print the resolved config and exit");
        if (std::string(name) == "surgery-estimate") {
            sub->add_option("--kind", o.kind, "distillation or clifford")
                ->check(CLI::IsMember({"distillation", "clifford"}));
            sub->add_option("--qubits", o.qubits, "logical qubits of the Clifford circuit");
            sub->add_option("--depth", o.depth, "depth of the Clifford circuit");
        }
    }
    CLI11_PARSE(app, argc, argv);
    try {
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const std::exception &e) {
        std::cerr << "tcd: " << e.what() << "\n";
        return kExitError;
    }
}

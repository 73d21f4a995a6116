#pragma once

#include <string>
#include <vector>

namespace bpf {

struct ExperimentResult {
    std::string id;
    int passes = 0;
    int fails = 0;
    int skipped = 0;  // rows recorded but not asserted (vacuous bounds etc.)
    std::vector<std::string> files;
};

// Runs the experiment described by the JSON config text, writing CSV files
// and a summary.json under out_dir. Deterministic given the config.
// Known ids: levelk, brry, restriction, mainlemma, prg, prg-general,
// chernoff, mod3, parseval.
ExperimentResult run_experiment(const std::string& config_json, const std::string& out_dir);

// Built-in default config for an experiment id (the configs used by the
// acceptance runs).
std::string default_experiment_config(const std::string& id);

}  // namespace bpf

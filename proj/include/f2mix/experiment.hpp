#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "f2mix/instance.hpp"
#include "f2mix/recovery.hpp"

namespace f2mix {

// Batch experiment: run the driver on independently generated instances and
// aggregate exact-recovery statistics.
struct ExperimentConfig {
    std::string name = "experiment";
    InstanceSpec instance;
    std::size_t trials = 0;
    Rational wmin = Rational(3, 10);
    double delta = 0.1;
    std::uint64_t seed = 0;
    double success_threshold = 0.9;
    double weight_tolerance = 0.05;
    std::size_t threads = 0;   // 0 = hardware concurrency
    bool zero_timing = false;  // report micros as 0 for byte-stable output
};

ExperimentConfig experiment_config_from_json(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

struct TrialRow {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string regime;
    bool exact_match = false;
    double w0_err = 0;
    std::uint64_t samples = 0;
    std::uint64_t micros = 0;
    std::string error; // nonempty when the driver threw
};

struct ExperimentReport {
    std::vector<TrialRow> rows;
    std::size_t successes = 0;
    // Success = exact pair recovery AND weight error within tolerance
    // (weight check skipped for unidentifiable regimes).
    std::optional<double> success_rate; // empty when trials == 0
    double ci_low = 0, ci_high = 0;     // 95% Wilson interval

    std::string to_csv() const;  // header: trial,seed,regime,exact_match,w0_err,samples,micros
    std::string to_json(const ExperimentConfig& cfg) const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Runs fn(i) for i in [0, count) on up to 'threads' workers.  Results must be
// written to per-index slots; used by the experiment runner and the
// acceptance suite.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

} // namespace f2mix

#include "f2mix/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "f2mix/errors.hpp"

namespace f2mix {

using nlohmann::json;

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads == 0)
        threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                fn(i);
            }
        });
    for (auto& th : pool)
        th.join();
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.name = j.value("name", cfg.name);
        cfg.instance.n = j.at("n").get<std::size_t>();
        cfg.instance.d0 = j.at("d0").get<std::size_t>();
        cfg.instance.d1 = j.at("d1").get<std::size_t>();
        cfg.instance.relation = relation_from_string(j.at("relation").get<std::string>());
        cfg.instance.w0 = parse_decimal(j.at("w0").get<std::string>());
        cfg.trials = j.at("trials").get<std::size_t>();
        cfg.wmin = parse_decimal(j.at("wmin").get<std::string>());
        cfg.delta = j.value("delta", 0.1);
        cfg.seed = j.value("seed", std::uint64_t(0));
        cfg.success_threshold = j.value("success_threshold", 0.9);
        cfg.weight_tolerance = j.value("weight_tolerance", 0.05);
        cfg.threads = j.value("threads", std::size_t(0));
        cfg.zero_timing = j.value("zero_timing", false);
    } catch (const json::exception& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return experiment_config_from_json(ss.str());
}

namespace {

void wilson_interval(std::size_t successes, std::size_t trials, double& lo, double& hi) {
    if (trials == 0) {
        lo = hi = 0;
        return;
    }
    const double z = 1.959963985;
    double p = static_cast<double>(successes) / static_cast<double>(trials);
    double nt = static_cast<double>(trials);
    double denom = 1.0 + z * z / nt;
    double center = (p + z * z / (2 * nt)) / denom;
    double half = z * std::sqrt(p * (1 - p) / nt + z * z / (4 * nt * nt)) / denom;
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

bool pair_matches(const RecoveryResult& r, const Instance& inst) {
    return (r.a0_hat == inst.a0 && r.a1_hat == inst.a1) ||
           (r.a0_hat == inst.a1 && r.a1_hat == inst.a0);
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.rows.resize(cfg.trials);

    SplitRng master(cfg.seed);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        TrialRow& row = report.rows[t];
        row.trial = t;
        row.seed = master.split(t).next();

        InstanceSpec spec = cfg.instance;
        spec.seed = row.seed;
        auto start = std::chrono::steady_clock::now();
        try {
            Instance inst = gen_instance(spec);
            MixtureOracle oracle = inst.make_oracle();
            RecoveryResult res =
                recover_driver(oracle, inst.n, cfg.wmin, cfg.delta, SplitRng(row.seed).split(1));
            row.regime = regime_name(res.regime);
            row.exact_match = pair_matches(res, inst);
            row.samples = res.samples_used;
            if (res.weights_identifiable) {
                double w0_true = to_double(inst.w0);
                // Align the estimate with the true pair's orientation.
                double w_for_a0 = res.a0_hat == inst.a0 ? res.w0_hat : res.w1_hat;
                row.w0_err = row.exact_match ? std::abs(w_for_a0 - w0_true) : 1.0;
            } else {
                row.w0_err = 0.0;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
            row.exact_match = false;
            row.w0_err = 1.0;
        }
        auto end = std::chrono::steady_clock::now();
        row.micros = cfg.zero_timing
                         ? 0
                         : static_cast<std::uint64_t>(
                               std::chrono::duration_cast<std::chrono::microseconds>(end - start)
                                   .count());
    });

    for (const auto& row : report.rows) {
        bool weight_ok = row.w0_err <= cfg.weight_tolerance;
        if (row.exact_match && weight_ok)
            ++report.successes;
    }
    if (cfg.trials > 0) {
        report.success_rate =
            static_cast<double>(report.successes) / static_cast<double>(cfg.trials);
        wilson_interval(report.successes, cfg.trials, report.ci_low, report.ci_high);
    }
    return report;
}

std::string ExperimentReport::to_csv() const {
    std::string out = "trial,seed,regime,exact_match,w0_err,samples,micros\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%zu,%llu,%s,%d,%.6f,%llu,%llu\n", r.trial,
                      static_cast<unsigned long long>(r.seed),
                      r.error.empty() ? r.regime.c_str() : "error", r.exact_match ? 1 : 0,
                      r.w0_err, static_cast<unsigned long long>(r.samples),
                      static_cast<unsigned long long>(r.micros));
        out += buf;
    }
    return out;
}

std::string ExperimentReport::to_json(const ExperimentConfig& cfg) const {
    json j;
    j["name"] = cfg.name;
    j["trials"] = rows.size();
    j["successes"] = successes;
    if (success_rate)
        j["success_rate"] = *success_rate;
    else
        j["success_rate"] = nullptr;
    j["ci95_low"] = ci_low;
    j["ci95_high"] = ci_high;
    j["success_threshold"] = cfg.success_threshold;
    j["passed"] = rows.empty() || (success_rate && *success_rate >= cfg.success_threshold);
    return j.dump(2) + "\n";
}

} // namespace f2mix

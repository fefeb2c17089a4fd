// Command-line harness: instance generation, recovery, comparability
// testing, batch experiments, and the noisy-parity round-trip demo.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "f2mix/comparability.hpp"
#include "f2mix/errors.hpp"
#include "f2mix/experiment.hpp"
#include "f2mix/instance.hpp"
#include "f2mix/lpn.hpp"
#include "f2mix/recovery.hpp"

using namespace f2mix;
using nlohmann::json;

namespace {

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw ParseError("cannot open for writing: " + out_path);
    out << text;
}

json subspace_rows(const Subspace& s) {
    json rows = json::array();
    for (const auto& r : s.basis().row_data)
        rows.push_back(r.to_bits());
    return rows;
}

int cmd_gen(const InstanceSpec& spec, const std::string& out_path) {
    Instance inst = gen_instance(spec);
    write_output(instance_to_json(inst), out_path);
    return 0;
}

int cmd_recover(const std::string& instance_path, const std::string& wmin_str, double delta,
                std::uint64_t seed, bool seed_set, std::uint64_t max_samples,
                const std::string& out_path) {
    bool canonicalized = false;
    Instance inst = load_instance(instance_path, &canonicalized);
    if (canonicalized)
        std::cerr << "warning: instance bases were not in reduced echelon form; canonicalized\n";

    Rational wmin = parse_decimal(wmin_str);
    if (wmin < Rational(1, 100))
        std::cerr << "warning: wmin below 1/100 is outside the large-gap guarantee regime\n";
    std::uint64_t oracle_seed = seed_set ? seed : inst.seed;
    MixtureOracle oracle = inst.make_oracle(oracle_seed);

    auto start = std::chrono::steady_clock::now();
    RecoveryResult res;
    if (max_samples > 0) {
        BudgetedOracle budgeted(oracle, max_samples);
        res = recover_driver(budgeted, inst.n, wmin, delta, SplitRng(oracle_seed).split(1));
    } else {
        res = recover_driver(oracle, inst.n, wmin, delta, SplitRng(oracle_seed).split(1));
    }
    auto end = std::chrono::steady_clock::now();

    json j;
    j["regime"] = regime_name(res.regime);
    j["a0_hat"] = subspace_rows(res.a0_hat);
    j["a1_hat"] = subspace_rows(res.a1_hat);
    j["w0_hat"] = res.w0_hat;
    j["w1_hat"] = res.w1_hat;
    j["weights_identifiable"] = res.weights_identifiable;
    j["samples"] = res.samples_used;
    j["micros"] = std::chrono::duration_cast<std::chrono::microseconds>(end - start).count();
    bool exact = (res.a0_hat == inst.a0 && res.a1_hat == inst.a1) ||
                 (res.a0_hat == inst.a1 && res.a1_hat == inst.a0);
    j["exact_match"] = exact;
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_test_comparability(const std::string& instance_path, const std::string& wmin_str,
                           double delta, std::uint64_t seed, bool seed_set,
                           const std::string& out_path) {
    Instance inst = load_instance(instance_path);
    MixtureOracle oracle = inst.make_oracle(seed_set ? seed : inst.seed);
    ComparabilityParams params(inst.n, to_double(parse_decimal(wmin_str)), delta);
    bool comparable = test_comparability(oracle, params);
    json j;
    j["comparable"] = comparable;
    j["truth_comparable"] = is_subset(inst.a0, inst.a1) || is_subset(inst.a1, inst.a0);
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_prefix,
                   const std::string& format) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    ExperimentReport report = run_experiment(cfg);
    if (format == "csv" || format == "both" || out_prefix.empty())
        write_output(report.to_csv(), out_prefix.empty() ? "" : out_prefix + ".csv");
    if (format == "json" || format == "both")
        write_output(report.to_json(cfg), out_prefix.empty() ? "" : out_prefix + ".json");
    bool passed = report.rows.empty() ||
                  (report.success_rate && *report.success_rate >= cfg.success_threshold);
    std::fprintf(stderr, "%s: %zu/%zu exact (threshold %.2f) -> %s\n", cfg.name.c_str(),
                 report.successes, report.rows.size(), cfg.success_threshold,
                 passed ? "pass" : "fail");
    return passed ? 0 : 1;
}

// Constraint vector (secret | 1), i.e. the hyperplane <secret,x> + y = 0.
Subspace parity_hyperplane(const GF2Vector& secret) {
    std::size_t n = secret.length();
    GF2Matrix row(1, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        row.row_data[0].set(i, secret.get(i));
    row.row_data[0].set(n, true);
    return kernel(row);
}

int cmd_lpn_demo(std::size_t n, const std::string& eps_str, std::size_t trials,
                 std::uint64_t seed, const std::string& out_path) {
    const Rational eps = parse_decimal(eps_str);
    const double eps_d = to_double(eps);
    SplitRng master(seed);

    // Weight identity of the forward reduction: concatenated samples put
    // mass 1 - eps on the parity hyperplane.
    GF2Vector secret = random_vector(n, master);
    Subspace a1 = parity_hyperplane(secret);
    LpnOracle lpn(secret, eps_d, master.split(7));
    std::size_t in_a1 = 0;
    const std::size_t mass_draws = 100000;
    for (std::size_t i = 0; i < mass_draws; ++i) {
        auto [x, y] = lpn.draw();
        if (a1.contains(lpn_to_mixture(x, y)))
            ++in_a1;
    }
    double mass = static_cast<double>(in_a1) / mass_draws;

    // Round trips: mixture -> per-coordinate LPN -> brute force -> selection.
    std::size_t recovered = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        SplitRng trial_rng = master.split(1000 + t);
        Subspace hidden = parity_hyperplane(random_vector(n, trial_rng));
        MixtureOracle oracle(Subspace::full(n + 1), hidden, 2 * eps, trial_rng.split(3));
        Subspace got = lpn_roundtrip_recover(oracle, n + 1, 2 * eps, 0.05, 600);
        if (got == hidden)
            ++recovered;
    }

    json j;
    j["n"] = n;
    j["eps"] = eps_d;
    j["hyperplane_mass"] = mass;
    j["hyperplane_mass_expected"] = 1.0 - eps_d;
    j["roundtrip_trials"] = trials;
    j["roundtrip_recovered"] = recovered;
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"learning mixtures of two GF(2) subspaces from samples"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
    InstanceSpec spec;
    std::string relation = "incomparable", w0 = "0.5", gen_out;
    gen->add_option("--n", spec.n, "ambient dimension")->required();
    gen->add_option("--d0", spec.d0, "dimension of the first component")->required();
    gen->add_option("--d1", spec.d1, "dimension of the second component")->required();
    gen->add_option("--relation", relation, "incomparable|nested|identical|random");
    gen->add_option("--w0", w0, "weight of the first component (decimal)");
    gen->add_option("--seed", spec.seed, "generator seed");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // recover
    auto* rec = app.add_subcommand("recover", "run the full recovery driver on an instance");
    std::string rec_instance, rec_wmin = "0.3", rec_out;
    double rec_delta = 0.1;
    std::uint64_t rec_seed = 0, rec_budget = 0;
    bool rec_seed_set = false;
    rec->add_option("--instance", rec_instance, "instance JSON path")->required();
    rec->add_option("--wmin", rec_wmin, "weight lower bound (decimal)");
    rec->add_option("--delta", rec_delta, "confidence parameter");
    rec->add_option("--seed", rec_seed, "oracle seed override")
        ->each([&](const std::string&) { rec_seed_set = true; });
    rec->add_option("--max-samples", rec_budget, "oracle budget (0 = unlimited)");
    rec->add_option("--out", rec_out, "output path (default stdout)");

    // test-comparability
    auto* tc = app.add_subcommand("test-comparability", "decide comparable vs incomparable");
    std::string tc_instance, tc_wmin = "0.3", tc_out;
    double tc_delta = 0.01;
    std::uint64_t tc_seed = 0;
    bool tc_seed_set = false;
    tc->add_option("--instance", tc_instance, "instance JSON path")->required();
    tc->add_option("--wmin", tc_wmin, "weight lower bound (decimal)");
    tc->add_option("--delta", tc_delta, "confidence parameter");
    tc->add_option("--seed", tc_seed, "oracle seed override")
        ->each([&](const std::string&) { tc_seed_set = true; });
    tc->add_option("--out", tc_out, "output path (default stdout)");

    // experiment
    auto* ex = app.add_subcommand("experiment", "run a batch experiment from a JSON config");
    std::string ex_config, ex_out, ex_format = "both";
    ex->add_option("--config", ex_config, "config JSON path")->required();
    ex->add_option("--out", ex_out, "output path prefix (default stdout, CSV only)");
    ex->add_option("--format", ex_format, "csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    // lpn-demo
    auto* lp = app.add_subcommand("lpn-demo", "noisy-parity reduction round trips");
    std::size_t lp_n = 7, lp_trials = 20;
    std::string lp_eps = "0.1";
    std::uint64_t lp_seed = 0;
    std::string lp_out;
    lp->add_option("--n", lp_n, "parity arity");
    lp->add_option("--eps", lp_eps, "noise rate (decimal)");
    lp->add_option("--trials", lp_trials, "round-trip trials");
    lp->add_option("--seed", lp_seed, "seed");
    lp->add_option("--out", lp_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            spec.relation = relation_from_string(relation);
            spec.w0 = parse_decimal(w0);
            return cmd_gen(spec, gen_out);
        }
        if (*rec)
            return cmd_recover(rec_instance, rec_wmin, rec_delta, rec_seed, rec_seed_set,
                               rec_budget, rec_out);
        if (*tc)
            return cmd_test_comparability(tc_instance, tc_wmin, tc_delta, tc_seed, tc_seed_set,
                                          tc_out);
        if (*ex)
            return cmd_experiment(ex_config, ex_out, ex_format);
        if (*lp)
            return cmd_lpn_demo(lp_n, lp_eps, lp_trials, lp_seed, lp_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

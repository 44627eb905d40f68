/// Acceptance suite: one PASS/FAIL line per criterion.
///
/// Usage: acceptance [path-to-rvea-binary]
/// With a binary path, criterion 9 also compares the bytes of two separate
/// process invocations.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "rvea/algorithms.hpp"
#include "rvea/drift.hpp"
#include "rvea/experiments.hpp"
#include "rvea/format.hpp"
#include "rvea/scaling_fit.hpp"
#include "rvea/step_operators.hpp"
#include "rvea/token_process.hpp"
#include "support/stats.hpp"

namespace {

using namespace rvea;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) { return format_general(v, 6); }

ExperimentPlan ea_plan(std::vector<GridCell> grid, std::vector<StepOperatorKind> ops, std::size_t reps,
                       std::uint64_t seed) {
    ExperimentPlan plan;
    plan.grid = std::move(grid);
    plan.algorithms = {AlgorithmKind::OnePlusOneEA};
    plan.operators = std::move(ops);
    plan.metric = MetricKind::Interval;
    plan.target_policy = TargetPolicy::AllZero;
    plan.start_policy = StartPolicy::uniform_random();
    plan.replicates = reps;
    plan.base_seed = seed;
    return plan;
}

bool uncensored(const std::vector<AggregateResult>& results) {
    for (const auto& a : results) {
        if (a.right_censored()) return false;
    }
    return true;
}

Outcome rls_law() {
    ExperimentPlan plan;
    plan.grid = {{20, 4}};
    plan.start_policy = StartPolicy::fixed_hamming(20);
    plan.replicates = 2000;
    plan.base_seed = 1;
    const auto res = execute_plan(plan);
    const double expected = 60.0 * testing::harmonic_sum(20);
    const double rel = std::abs(res[0].mean - expected) / expected;
    return {rel <= 0.03 && uncensored(res),
            "mean " + fmt(res[0].mean) + " vs " + fmt(expected) + ", rel err " + fmt(rel) + " (tol 0.03)"};
}

Outcome drift_exactness() {
    const RunConfig cfg{.algorithm = AlgorithmKind::RLS,
                        .op = StepOperatorKind::Uniform,
                        .instance = ProblemInstance::all_zero(SpaceParams(10, 4), MetricKind::Interval),
                        .seed = 2,
                        .iteration_cap = kDefaultIterationCap,
                        .initial_point = std::nullopt,
                        .trace_potentials = {}};
    const auto est =
        estimate_drift(cfg, PotentialKind::hamming(), DriftConditioning::planted({1, 5, 10}), 10000);
    bool pass = est.size() == 3;
    std::string detail;
    for (const auto& e : est) {
        const double predicted = e.level / 30.0;
        const bool ok = std::abs(e.mean_drop - predicted) <= e.confidence_halfwidth && e.samples >= 10000;
        pass = pass && ok;
        detail += "k=" + fmt(e.level) + ": " + fmt(e.mean_drop) + " +- " + fmt(e.confidence_halfwidth) + " vs " +
                  fmt(predicted) + "; ";
    }
    return {pass, detail};
}

Outcome ea_uniform() {
    const auto res = execute_plan(ea_plan({{100, 3}}, {StepOperatorKind::Uniform}, 500, 3));
    const double expected = std::numbers::e * 2.0 * 100.0 * std::log(100.0);
    const double rel = std::abs(res[0].mean - expected) / expected;
    return {rel <= 0.20 && uncensored(res),
            "mean " + fmt(res[0].mean) + " vs " + fmt(expected) + ", rel err " + fmt(rel) + " (tol 0.20)"};
}

Outcome pm1_linearity() {
    const auto res = execute_plan(ea_plan({{50, 64}, {50, 128}, {50, 256}}, {StepOperatorKind::PlusMinusOne}, 300, 4));
    const double lo = res[1].mean / res[0].mean;
    const double hi = res[2].mean / res[1].mean;
    const auto inside = [](double x) { return x >= 1.7 && x <= 2.3; };
    return {inside(lo) && inside(hi) && uncensored(res),
            "means " + fmt(res[0].mean) + ", " + fmt(res[1].mean) + ", " + fmt(res[2].mean) + "; ratios " + fmt(lo) +
                ", " + fmt(hi) + " (want [1.7, 2.3])"};
}

Outcome harmonic_polylog() {
    const auto res = execute_plan(ea_plan({{50, 16}, {50, 256}}, {StepOperatorKind::Harmonic}, 300, 5));
    const double ratio = res[1].mean / res[0].mean;
    return {ratio <= 5.0 && uncensored(res),
            "means " + fmt(res[0].mean) + ", " + fmt(res[1].mean) + "; ratio " + fmt(ratio) + " (want <= 5)"};
}

Outcome operator_ordering() {
    const auto res = execute_plan(ea_plan(
        {{30, 512}}, {StepOperatorKind::Uniform, StepOperatorKind::PlusMinusOne, StepOperatorKind::Harmonic}, 200, 6));
    const double uniform = res[0].mean;
    const double pm1 = res[1].mean;
    const double harmonic = res[2].mean;
    return {harmonic <= pm1 / 2.0 && harmonic <= uniform / 2.0 && uncensored(res),
            "uniform " + fmt(uniform) + ", pm1 " + fmt(pm1) + ", harmonic " + fmt(harmonic)};
}

Outcome token_oracle() {
    bool pass = true;
    std::string detail;
    std::uint64_t seed = 70;
    for (std::int64_t r : {15, 63, 255}) {
        for (const auto& law : {StepSizeLaw::unit(), StepSizeLaw::uniform(), StepSizeLaw::harmonic()}) {
            const TokenConfig cfg{.r = r, .distribution = law, .seed = seed++};
            std::vector<double> times;
            bool capped = false;
            for (const auto& rec : token_batch(cfg, 100000)) {
                if (rec.capped()) {
                    capped = true;
                } else {
                    times.push_back(static_cast<double>(*rec.hitting_time));
                }
            }
            const auto ms = testing::mean_se(times);
            const double exact = token_expected_hitting_time_exact(r, law);
            const double z = std::abs(ms.mean - exact) / ms.se;
            pass = pass && !capped && z <= 3.0;
            detail += std::string(law.name()) + "@" + std::to_string(r) + " z=" + fmt(z) + "; ";
        }
    }
    return {pass, detail};
}

Outcome token_scaling() {
    std::vector<ScalingPoint> pts;
    for (int k = 4; k <= 12; ++k) {
        const auto r = (std::int64_t{1} << k) - 1;
        pts.push_back({1.0, static_cast<double>(r), token_expected_hitting_time_exact(r, StepSizeLaw::harmonic())});
    }
    const auto fit = fit_scaling(pts, scaling_model("log-quadratic"));
    return {fit.r_squared >= 0.999, "R^2 " + format_general(fit.r_squared, 8) + ", a " + fmt(fit.coefficients[0]) +
                                        ", b " + fmt(fit.coefficients[1]) + ", c " + fmt(fit.coefficients[2])};
}

bool metric_axioms() {
    for (auto kind : {MetricKind::Interval, MetricKind::Ring}) {
        for (std::int64_t r = 2; r <= 64; ++r) {
            for (Value a = 0; a < r; ++a) {
                for (Value b = 0; b < r; ++b) {
                    const auto dab = metric_distance(kind, a, b, r);
                    if ((dab == 0) != (a == b) || dab != metric_distance(kind, b, a, r)) return false;
                    for (Value c = 0; c < r; ++c) {
                        if (metric_distance(kind, a, c, r) > dab + metric_distance(kind, b, c, r)) return false;
                    }
                }
            }
        }
    }
    return true;
}

bool harmonic_chi_square() {
    for (std::int64_t r : {4, 64, 1024}) {
        const HarmonicTable table(r);
        Rng rng(static_cast<std::uint64_t>(r) * 31);
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(r - 1), 0);
        for (int i = 0; i < 100000; ++i) ++counts[static_cast<std::size_t>(table.sample(rng) - 1)];
        if (!testing::chi_square(counts, harmonic_pmf(r)).passes()) return false;
    }
    return true;
}

bool binary_ks() {
    std::vector<std::vector<double>> samples;
    std::uint64_t seed = 90;
    for (auto op : {StepOperatorKind::Uniform, StepOperatorKind::PlusMinusOne, StepOperatorKind::Harmonic}) {
        const RunConfig cfg{.algorithm = AlgorithmKind::OnePlusOneEA,
                            .op = op,
                            .instance = ProblemInstance::all_zero(SpaceParams(16, 2), MetricKind::Ring),
                            .seed = seed++,
                            .iteration_cap = kDefaultIterationCap,
                            .initial_point = std::nullopt,
                            .trace_potentials = {}};
        std::vector<double> times;
        for (const auto& rec : run_batch(cfg, 10000)) times.push_back(static_cast<double>(*rec.hitting_time));
        samples.push_back(std::move(times));
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            if (!testing::ks_two_sample(samples[i], samples[j]).passes()) return false;
        }
    }
    return true;
}

bool fitness_monotone() {
    std::uint64_t seed = 500;
    for (auto algo : {AlgorithmKind::RLS, AlgorithmKind::OnePlusOneEA}) {
        for (auto op : {StepOperatorKind::Uniform, StepOperatorKind::PlusMinusOne, StepOperatorKind::Harmonic}) {
            for (auto metric : {MetricKind::Interval, MetricKind::Ring}) {
                const RunConfig cfg{.algorithm = algo,
                                    .op = op,
                                    .instance = ProblemInstance::all_zero(SpaceParams(10, 12), metric),
                                    .seed = seed++,
                                    .iteration_cap = kDefaultIterationCap,
                                    .initial_point = std::nullopt,
                                    .trace_potentials = {PotentialKind::fitness()}};
                for (const auto& rec : run_batch(cfg, 20)) {
                    for (std::size_t t = 1; t < rec.trace.size(); ++t) {
                        if (rec.trace[t].values[0] > rec.trace[t - 1].values[0]) return false;
                    }
                }
            }
        }
    }
    return true;
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return "<popen failed>";
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
}

bool cli_deterministic(const std::string& binary) {
    const std::vector<std::vector<std::string>> commands{
        {"run", "--n", "8,12", "--r", "3,9", "--algo", "rls,ea", "--op", "uniform,pm1,harmonic", "--reps", "30",
         "--seed", "11"},
        {"run", "--n", "8", "--r", "5", "--metric", "ring", "--target", "random", "--start", "max", "--reps", "30",
         "--seed", "12", "--format", "json"},
        {"drift", "--n", "10", "--r", "4", "--levels", "1,5,10", "--samples", "2000", "--seed", "13"},
        {"drift", "--n", "10", "--r", "4", "--mode", "trajectory", "--samples", "2000", "--seed", "13", "--potential",
         "exp"},
        {"token", "--r", "15,63", "--dist", "unit,uniform,harmonic", "--reps", "1000", "--seed", "14"},
        {"pmf", "--r", "64", "--format", "json"},
    };
    for (const auto& args : commands) {
        std::vector<std::string> outputs;
        for (const char* threads : {"1", "2"}) {
            auto full = args;
            if (args.front() != "pmf") full.insert(full.end(), {"--threads", threads});
            std::ostringstream out;
            std::ostringstream err;
            if (cli::run_cli(full, out, err) != 0) return false;
            outputs.push_back(out.str());
            if (!binary.empty()) {
                std::string command = "'" + binary + "'";
                for (const auto& a : full) command += " " + a;
                command += " 2>/dev/null";
                outputs.push_back(capture(command));
            }
        }
        for (const auto& o : outputs) {
            if (o != outputs.front() || o.empty()) return false;
        }
    }
    return true;
}

Outcome properties(const std::string& binary) {
    const bool axioms = metric_axioms();
    const bool chi = harmonic_chi_square();
    const bool ks = binary_ks();
    const bool monotone = fitness_monotone();
    const bool bytes = cli_deterministic(binary);
    const auto mark = [](bool b) { return b ? "ok" : "FAILED"; };
    return {axioms && chi && ks && monotone && bytes,
            std::string("metric axioms ") + mark(axioms) + "; harmonic chi-square " + mark(chi) + "; r=2 KS " +
                mark(ks) + "; fitness monotone " + mark(monotone) + "; CLI byte-determinism " + mark(bytes) +
                (binary.empty() ? " (in-process only)" : "")};
}

} // namespace

int main(int argc, char** argv) {
    const std::string binary = argc > 1 ? argv[1] : "";
    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "RLS exact law", 10, rls_law},
        {2, "RLS drift exactness", 30, drift_exactness},
        {3, "EA uniform leading constant", 120, ea_uniform},
        {4, "pm1 linear in r", 300, pm1_linearity},
        {5, "harmonic polylog in r", 300, harmonic_polylog},
        {6, "operator ordering at r=512", 600, operator_ordering},
        {7, "token Monte-Carlo vs exact", 120, token_oracle},
        {8, "token harmonic log-quadratic fit", 10, token_scaling},
        {9, "property suites", 120, [&] { return properties(binary); }},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = seconds <= c.budget_seconds;
        const bool pass = outcome.pass && in_budget;
        if (!pass) ++failures;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << outcome.detail
                  << " [" << format_general(seconds, 3) << " s, budget " << c.budget_seconds << " s"
                  << (in_budget ? "" : ", OVER BUDGET") << "]" << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}

#include "rvea/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "rvea/drift.hpp"
#include "rvea/errors.hpp"
#include "rvea/parallel.hpp"

namespace rvea {

std::string_view to_string(TargetPolicy policy) noexcept {
    switch (policy) {
    case TargetPolicy::AllZero: return "zero";
    case TargetPolicy::Center: return "center";
    case TargetPolicy::UniformRandomPerReplicate: return "random";
    }
    return "?";
}

TargetPolicy parse_target_policy(std::string_view text) {
    if (text == "zero") return TargetPolicy::AllZero;
    if (text == "center") return TargetPolicy::Center;
    if (text == "random") return TargetPolicy::UniformRandomPerReplicate;
    throw DomainError("unknown target policy '" + std::string(text) + "' (expected zero|center|random)");
}

StartPolicy StartPolicy::fixed_hamming(std::int64_t k) {
    if (k < 0) throw DomainError("FixedHamming needs k >= 0");
    return StartPolicy(Kind::FixedHamming, k);
}

std::string StartPolicy::name() const {
    switch (kind_) {
    case Kind::UniformRandom: return "uniform";
    case Kind::FixedHamming: return "hamming:" + std::to_string(k_);
    case Kind::AllMaxDistance: return "max";
    }
    return "?";
}

StartPolicy parse_start_policy(std::string_view text) {
    if (text == "uniform") return StartPolicy::uniform_random();
    if (text == "max") return StartPolicy::all_max_distance();
    constexpr std::string_view prefix = "hamming:";
    if (text.starts_with(prefix)) {
        const auto digits = text.substr(prefix.size());
        std::int64_t k = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
            return StartPolicy::fixed_hamming(k);
        }
    }
    throw DomainError("unknown start policy '" + std::string(text) + "' (expected uniform|max|hamming:K)");
}

void ExperimentPlan::validate() const {
    if (grid.empty()) throw DomainError("experiment grid is empty");
    if (algorithms.empty()) throw DomainError("no algorithms selected");
    if (operators.empty()) throw DomainError("no step operators selected");
    if (replicates < 1) throw DomainError("replicates must be >= 1");
    if (iteration_cap == 0) throw DomainError("iteration_cap must be positive");
    for (const auto& cell : grid) {
        const SpaceParams params(cell.n, cell.r);
        if (start_policy.kind() == StartPolicy::Kind::FixedHamming && start_policy.hamming() > params.n()) {
            throw DomainError("FixedHamming k = " + std::to_string(start_policy.hamming()) +
                              " exceeds n = " + std::to_string(params.n()));
        }
    }
}

ValueVector make_target(TargetPolicy policy, const SpaceParams& params, Rng& rng) {
    const auto n = static_cast<std::size_t>(params.n());
    switch (policy) {
    case TargetPolicy::AllZero: return ValueVector(std::vector<Value>(n, 0));
    case TargetPolicy::Center: return ValueVector(std::vector<Value>(n, params.r() / 2));
    case TargetPolicy::UniformRandomPerReplicate: return sample_uniform_point(params, rng);
    }
    return {};
}

std::optional<ValueVector> make_start(const StartPolicy& policy, const ProblemInstance& instance, Rng& rng) {
    switch (policy.kind()) {
    case StartPolicy::Kind::UniformRandom: return std::nullopt;
    case StartPolicy::Kind::FixedHamming:
        if (policy.hamming() > instance.n()) throw DomainError("FixedHamming k exceeds n");
        return plant_state(PotentialKind::hamming(), instance, policy.hamming(), rng);
    case StartPolicy::Kind::AllMaxDistance: {
        ValueVector x = instance.target();
        const auto r = instance.r();
        for (auto& v : x.values) {
            if (instance.metric() == MetricKind::Ring) {
                v = (v + r / 2) % r;
            } else {
                v = v >= r - 1 - v ? 0 : r - 1;
            }
        }
        return x;
    }
    }
    return std::nullopt;
}

AggregateResult aggregate(GridCell cell, AlgorithmKind algorithm, StepOperatorKind op, MetricKind metric,
                          std::span<const RunRecord> records) {
    AggregateResult out;
    out.n = cell.n;
    out.r = cell.r;
    out.algorithm = algorithm;
    out.op = op;
    out.metric = metric;
    out.replicates = records.size();
    std::vector<double> times;
    times.reserve(records.size());
    for (const auto& rec : records) {
        if (rec.capped()) {
            ++out.capped_count;
        } else {
            times.push_back(static_cast<double>(*rec.hitting_time));
        }
    }
    if (times.empty()) {
        out.mean = out.median = out.std_error = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double m = static_cast<double>(times.size());
    double sum = 0.0;
    for (double t : times) sum += t;
    out.mean = sum / m;
    if (times.size() > 1) {
        double ss = 0.0;
        for (double t : times) ss += (t - out.mean) * (t - out.mean);
        out.std_error = std::sqrt(ss / (m - 1.0) / m);
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    out.median = times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    return out;
}

namespace {

struct CellSpec {
    GridCell cell;
    AlgorithmKind algorithm;
    StepOperatorKind op;
};

constexpr std::uint64_t kPolicyStream = 0x5eed;

} // namespace

std::vector<AggregateResult> execute_plan(const ExperimentPlan& plan) {
    plan.validate();
    std::vector<CellSpec> cells;
    for (const auto& cell : plan.grid) {
        for (auto algorithm : plan.algorithms) {
            for (auto op : plan.operators) cells.push_back({cell, algorithm, op});
        }
    }
    const std::size_t reps = plan.replicates;
    std::vector<RunRecord> records(cells.size() * reps);
    parallel_for(records.size(), plan.threads, [&](std::size_t task) {
        const std::size_t c = task / reps;
        const std::size_t k = task % reps;
        const auto& spec = cells[c];
        const std::uint64_t seed = sub_seed(sub_seed(plan.base_seed, c), k);
        Rng policy_rng(sub_seed(seed, kPolicyStream));
        const SpaceParams params(spec.cell.n, spec.cell.r);
        ProblemInstance instance(params, plan.metric, make_target(plan.target_policy, params, policy_rng));
        auto start = make_start(plan.start_policy, instance, policy_rng);
        RunConfig config{.algorithm = spec.algorithm,
                         .op = spec.op,
                         .instance = std::move(instance),
                         .seed = seed,
                         .iteration_cap = plan.iteration_cap,
                         .initial_point = std::move(start),
                         .trace_potentials = {}};
        records[task] = run(config);
    });
    std::vector<AggregateResult> out;
    out.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& spec = cells[c];
        out.push_back(aggregate(spec.cell, spec.algorithm, spec.op, plan.metric,
                                std::span<const RunRecord>(records).subspan(c * reps, reps)));
    }
    return out;
}

} // namespace rvea

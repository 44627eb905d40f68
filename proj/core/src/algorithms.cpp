#include "rvea/algorithms.hpp"

#include <string>

#include "rvea/errors.hpp"
#include "rvea/parallel.hpp"

namespace rvea {

std::string_view to_string(AlgorithmKind kind) noexcept {
    return kind == AlgorithmKind::RLS ? "rls" : "ea";
}

AlgorithmKind parse_algorithm(std::string_view text) {
    if (text == "rls") return AlgorithmKind::RLS;
    if (text == "ea" || text == "oneplusone" || text == "1+1") return AlgorithmKind::OnePlusOneEA;
    throw DomainError("unknown algorithm '" + std::string(text) + "' (expected rls|ea)");
}

void RunConfig::validate() const {
    if (iteration_cap == 0) throw DomainError("iteration_cap must be positive");
    if (initial_point && !initial_point->conforms(instance.params())) {
        throw DomainError("initial point does not conform to the instance");
    }
}

Heuristic::Heuristic(AlgorithmKind algorithm, StepOperatorKind op, ProblemInstance instance)
    : algorithm_(algorithm),
      instance_(std::move(instance)),
      operator_(op, instance_.metric(), instance_.r()) {}

SearchState Heuristic::make_state(ValueVector x) const {
    const Fitness f = fitness(instance_, x);
    return {std::move(x), f};
}

std::size_t Heuristic::mutate(ValueVector& x, std::vector<Change>& changes, Rng& rng) const {
    changes.clear();
    const auto n = static_cast<std::uint64_t>(instance_.n());
    auto touch = [&](std::size_t i) {
        if (const auto moved = operator_.apply_unchecked(x[i], rng)) {
            changes.push_back({i, x[i]});
            x[i] = *moved;
        }
    };
    if (algorithm_ == AlgorithmKind::RLS) {
        touch(static_cast<std::size_t>(uniform_below(rng, n)));
        return 1;
    }
    std::size_t selected = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (uniform_below(rng, n) == 0) {
            ++selected;
            touch(i);
        }
    }
    return selected;
}

Fitness Heuristic::advance(SearchState& state, Rng& rng) {
    mutate(state.x, scratch_, rng);
    // Incremental update in unsigned arithmetic; intermediate values may wrap.
    Fitness offspring = state.f;
    for (const auto& c : scratch_) {
        offspring += static_cast<Fitness>(instance_.component_distance(c.index, state.x[c.index]));
        offspring -= static_cast<Fitness>(instance_.component_distance(c.index, c.previous));
    }
    if (offspring <= state.f) {
        state.f = offspring;
    } else {
        for (auto it = scratch_.rbegin(); it != scratch_.rend(); ++it) state.x[it->index] = it->previous;
    }
    return offspring;
}

namespace {

TracePoint trace_point(const RunConfig& config, std::uint64_t iteration, const ValueVector& x) {
    TracePoint point{iteration, {}};
    point.values.reserve(config.trace_potentials.size());
    for (const auto& kind : config.trace_potentials) point.values.push_back(potential(kind, config.instance, x));
    return point;
}

} // namespace

RunRecord run(const RunConfig& config) {
    config.validate();
    Rng rng(config.seed);
    Heuristic heuristic(config.algorithm, config.op, config.instance);
    SearchState state = heuristic.make_state(config.initial_point ? *config.initial_point
                                                                  : sample_uniform_point(config.instance.params(), rng));
    const bool tracing = !config.trace_potentials.empty();

    RunRecord record;
    if (tracing) record.trace.push_back(trace_point(config, 0, state.x));
    record.evaluations = 1;
    if (state.f == 0) {
        record.hitting_time = 0;
        return record;
    }
    for (std::uint64_t t = 1; t <= config.iteration_cap; ++t) {
        const Fitness offspring = heuristic.advance(state, rng);
        ++record.evaluations;
        if (tracing) record.trace.push_back(trace_point(config, t, state.x));
        if (offspring == 0) {
            record.hitting_time = t;
            break;
        }
    }
    record.final_fitness = state.f;
    return record;
}

std::vector<RunRecord> run_batch(const RunConfig& config, std::size_t replicates, unsigned threads) {
    if (replicates == 0) throw DomainError("run_batch: replicates must be >= 1");
    config.validate();
    std::vector<RunRecord> records(replicates);
    parallel_for(replicates, threads, [&](std::size_t k) {
        RunConfig replicate = config;
        replicate.seed = sub_seed(config.seed, k);
        records[k] = run(replicate);
    });
    return records;
}

} // namespace rvea

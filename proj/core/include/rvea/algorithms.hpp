#pragma once

/// @file algorithms.hpp
/// RLS and the (1+1) EA on r-valued OneMax functions.
///
/// Both heuristics keep a single individual x. Each round produces an
/// offspring y by applying the step operator to one uniformly chosen
/// component (RLS) or to every component independently with probability 1/n
/// (EA), evaluates f(y), and replaces x by y iff f(y) <= f(x). An infeasible
/// elementary step leaves its component unchanged; the other components of
/// the same offspring still mutate.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rvea/potential.hpp"
#include "rvea/random.hpp"
#include "rvea/search_space.hpp"
#include "rvea/step_operators.hpp"

namespace rvea {

enum class AlgorithmKind { RLS, OnePlusOneEA };

[[nodiscard]] std::string_view to_string(AlgorithmKind kind) noexcept;
/// Accepts "rls" and "ea" (or "oneplusone").
[[nodiscard]] AlgorithmKind parse_algorithm(std::string_view text);

inline constexpr std::uint64_t kDefaultIterationCap = 10'000'000'000ULL;

struct RunConfig {
    AlgorithmKind algorithm = AlgorithmKind::RLS;
    StepOperatorKind op = StepOperatorKind::Uniform;
    ProblemInstance instance;
    std::uint64_t seed = 0;
    std::uint64_t iteration_cap = kDefaultIterationCap;
    /// Fixed start; replaces random initialization when set.
    std::optional<ValueVector> initial_point;
    /// Potentials recorded after every iteration; empty disables tracing.
    std::vector<PotentialKind> trace_potentials;

    /// Throws DomainError if the initial point does not conform or the cap is zero.
    void validate() const;
};

struct TracePoint {
    std::uint64_t iteration;
    /// One value per entry of RunConfig::trace_potentials, in the same order.
    std::vector<double> values;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunRecord {
    /// Index of the first iteration whose offspring has fitness 0; 0 if the
    /// start is optimal; nullopt if the iteration cap was reached first.
    std::optional<std::uint64_t> hitting_time;
    Fitness final_fitness = 0;
    /// Fitness evaluations including the initial one.
    std::uint64_t evaluations = 0;
    /// Entry 0 is the initial point, entry t the state after iteration t.
    std::vector<TracePoint> trace;

    [[nodiscard]] bool capped() const noexcept { return !hitting_time.has_value(); }

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Current individual and its fitness.
struct SearchState {
    ValueVector x;
    Fitness f = 0;
};

/// A component overwritten by mutation, with its value before the change.
struct Change {
    std::size_t index;
    Value previous;
};

/// Mutation-selection machinery for one (algorithm, operator, instance) triple.
class Heuristic {
public:
    Heuristic(AlgorithmKind algorithm, StepOperatorKind op, ProblemInstance instance);

    [[nodiscard]] AlgorithmKind algorithm() const noexcept { return algorithm_; }
    [[nodiscard]] const ProblemInstance& instance() const noexcept { return instance_; }
    [[nodiscard]] const StepOperator& step_operator() const noexcept { return operator_; }

    /// Mutates x in place without selection. `changes` is overwritten with the
    /// components that actually changed. Returns how many components were
    /// selected for mutation, counting those whose step turned out infeasible.
    std::size_t mutate(ValueVector& x, std::vector<Change>& changes, Rng& rng) const;

    /// One round of mutation and elitist selection. Returns the offspring's fitness.
    Fitness advance(SearchState& state, Rng& rng);

    /// A state for x with its fitness. Throws DomainError if x does not conform.
    [[nodiscard]] SearchState make_state(ValueVector x) const;

private:
    AlgorithmKind algorithm_;
    ProblemInstance instance_;
    StepOperator operator_;
    std::vector<Change> scratch_;
};

/// A single run until the optimum is evaluated or the cap is reached.
/// Deterministic in config.seed.
[[nodiscard]] RunRecord run(const RunConfig& config);

/// `replicates` runs; replicate k uses seed sub_seed(config.seed, k). The
/// result does not depend on `threads` (0 = hardware concurrency).
[[nodiscard]] std::vector<RunRecord> run_batch(const RunConfig& config, std::size_t replicates,
                                               unsigned threads = 0);

} // namespace rvea

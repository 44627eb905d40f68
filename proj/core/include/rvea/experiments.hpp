#pragma once

/// @file experiments.hpp
/// Replicated run-time studies over grids of (n, r), algorithms and operators.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rvea/algorithms.hpp"

namespace rvea {

enum class TargetPolicy {
    AllZero,                   ///< z = (0, ..., 0)
    Center,                    ///< z = (floor(r/2), ..., floor(r/2))
    UniformRandomPerReplicate, ///< z drawn uniformly for each replicate
};

[[nodiscard]] std::string_view to_string(TargetPolicy policy) noexcept;
/// Accepts "zero", "center" and "random".
[[nodiscard]] TargetPolicy parse_target_policy(std::string_view text);

class StartPolicy {
public:
    enum class Kind {
        UniformRandom,  ///< the algorithms' own uniform initialization
        FixedHamming,   ///< k uniformly chosen components of z set to uniform wrong values
        AllMaxDistance, ///< every component as far from z_i as the metric allows
    };

    static StartPolicy uniform_random() noexcept { return StartPolicy(Kind::UniformRandom, 0); }
    static StartPolicy fixed_hamming(std::int64_t k);
    static StartPolicy all_max_distance() noexcept { return StartPolicy(Kind::AllMaxDistance, 0); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::int64_t hamming() const noexcept { return k_; }

    /// "uniform", "hamming:K" or "max".
    [[nodiscard]] std::string name() const;

    friend bool operator==(const StartPolicy&, const StartPolicy&) = default;

private:
    StartPolicy(Kind kind, std::int64_t k) noexcept : kind_(kind), k_(k) {}

    Kind kind_;
    std::int64_t k_;
};

/// Accepts "uniform", "max" and "hamming:K".
[[nodiscard]] StartPolicy parse_start_policy(std::string_view text);

struct GridCell {
    std::int64_t n;
    std::int64_t r;

    friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct ExperimentPlan {
    std::vector<GridCell> grid;
    std::vector<AlgorithmKind> algorithms{AlgorithmKind::RLS};
    std::vector<StepOperatorKind> operators{StepOperatorKind::Uniform};
    MetricKind metric = MetricKind::Interval;
    TargetPolicy target_policy = TargetPolicy::AllZero;
    StartPolicy start_policy = StartPolicy::uniform_random();
    std::size_t replicates = 1;
    std::uint64_t base_seed = 0;
    std::uint64_t iteration_cap = kDefaultIterationCap;
    /// Worker threads (0 = hardware concurrency). Does not affect results.
    unsigned threads = 0;

    /// Throws DomainError for an empty grid or empty algorithm/operator list,
    /// zero replicates, invalid (n, r), or a FixedHamming k > n.
    void validate() const;
};

struct AggregateResult {
    std::int64_t n = 0;
    std::int64_t r = 0;
    AlgorithmKind algorithm = AlgorithmKind::RLS;
    StepOperatorKind op = StepOperatorKind::Uniform;
    MetricKind metric = MetricKind::Interval;
    /// Statistics over uncapped runs only; NaN when every run was capped.
    double mean = 0.0;
    /// Standard error of the mean; 0 for a single run.
    double std_error = 0.0;
    double median = 0.0;
    std::size_t replicates = 0;
    std::size_t capped_count = 0;

    /// True when at least one run hit the iteration cap.
    [[nodiscard]] bool right_censored() const noexcept { return capped_count > 0; }

    friend bool operator==(const AggregateResult&, const AggregateResult&) = default;
};

/// Target vector for a policy.
[[nodiscard]] ValueVector make_target(TargetPolicy policy, const SpaceParams& params, Rng& rng);

/// Start point for a policy; std::nullopt for UniformRandom.
[[nodiscard]] std::optional<ValueVector> make_start(const StartPolicy& policy, const ProblemInstance& instance, Rng& rng);

/// Statistics of one cell's runs.
[[nodiscard]] AggregateResult aggregate(GridCell cell, AlgorithmKind algorithm, StepOperatorKind op, MetricKind metric,
                                        std::span<const RunRecord> records);

/// One aggregate per grid cell x algorithm x operator, in that nesting order.
///
/// Seeding: cell c (in output order) gets seed sub_seed(base_seed, c), and its
/// replicate k runs with sub_seed(cell seed, k). Target and start policies
/// draw from a separate stream keyed by the replicate seed.
[[nodiscard]] std::vector<AggregateResult> execute_plan(const ExperimentPlan& plan);

} // namespace rvea

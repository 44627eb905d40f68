#include <gtest/gtest.h>

#include "rvea/algorithms.hpp"
#include "rvea/errors.hpp"
#include "support/stats.hpp"

namespace rvea {
namespace {

constexpr std::array kOperators{StepOperatorKind::Uniform, StepOperatorKind::PlusMinusOne, StepOperatorKind::Harmonic};
constexpr std::array kAlgorithms{AlgorithmKind::RLS, AlgorithmKind::OnePlusOneEA};

RunConfig make_config(AlgorithmKind algo, StepOperatorKind op, std::int64_t n, std::int64_t r, MetricKind metric,
                      std::uint64_t seed) {
    return RunConfig{.algorithm = algo,
                     .op = op,
                     .instance = ProblemInstance::all_zero(SpaceParams(n, r), metric),
                     .seed = seed,
                     .iteration_cap = kDefaultIterationCap,
                     .initial_point = std::nullopt,
                     .trace_potentials = {}};
}

std::vector<double> hitting_times(const std::vector<RunRecord>& records) {
    std::vector<double> out;
    for (const auto& rec : records) out.push_back(static_cast<double>(*rec.hitting_time));
    return out;
}

TEST(Run, SingleBitNeedsOneIteration) {
    auto cfg = make_config(AlgorithmKind::RLS, StepOperatorKind::Uniform, 1, 2, MetricKind::Interval, 1);
    cfg.initial_point = ValueVector{1};
    for (const auto& rec : run_batch(cfg, 10000, 1)) {
        ASSERT_EQ(rec.hitting_time, std::optional<std::uint64_t>(1));
        ASSERT_EQ(rec.evaluations, 2u);
    }
}

TEST(Run, StartAtOptimumHitsAtZero) {
    for (auto algo : kAlgorithms) {
        for (auto op : kOperators) {
            for (auto m : {MetricKind::Interval, MetricKind::Ring}) {
                auto cfg = make_config(algo, op, 6, 5, m, 3);
                cfg.initial_point = cfg.instance.target();
                const auto rec = run(cfg);
                EXPECT_EQ(rec.hitting_time, std::optional<std::uint64_t>(0));
                EXPECT_EQ(rec.final_fitness, 0u);
                EXPECT_EQ(rec.evaluations, 1u);
            }
        }
    }
}

TEST(Run, RecordInvariants) {
    for (auto algo : kAlgorithms) {
        for (auto op : kOperators) {
            auto cfg = make_config(algo, op, 8, 6, MetricKind::Ring, 17);
            for (const auto& rec : run_batch(cfg, 50, 1)) {
                ASSERT_FALSE(rec.capped());
                ASSERT_EQ(rec.final_fitness, 0u);
                ASSERT_EQ(rec.evaluations, *rec.hitting_time + 1);
            }
        }
    }
}

TEST(Run, CapMarksRecord) {
    auto cfg = make_config(AlgorithmKind::OnePlusOneEA, StepOperatorKind::Uniform, 50, 10, MetricKind::Interval, 5);
    cfg.iteration_cap = 3;
    cfg.initial_point = ValueVector(std::vector<Value>(50, 9));
    const auto rec = run(cfg);
    EXPECT_TRUE(rec.capped());
    EXPECT_GT(rec.final_fitness, 0u);
    EXPECT_EQ(rec.evaluations, 4u);
}

TEST(Run, ValidatesConfig) {
    auto cfg = make_config(AlgorithmKind::RLS, StepOperatorKind::Uniform, 3, 4, MetricKind::Interval, 1);
    cfg.initial_point = ValueVector{0, 4, 0};
    EXPECT_THROW((void)run(cfg), DomainError);
    cfg.initial_point = ValueVector{0, 0};
    EXPECT_THROW((void)run(cfg), DomainError);
    cfg.initial_point.reset();
    cfg.iteration_cap = 0;
    EXPECT_THROW((void)run(cfg), DomainError);
}

TEST(Run, RlsExactLaw) {
    auto cfg = make_config(AlgorithmKind::RLS, StepOperatorKind::Uniform, 20, 4, MetricKind::Interval, 42);
    cfg.initial_point = ValueVector(std::vector<Value>(20, 3));
    const auto times = hitting_times(run_batch(cfg, 2000));
    const double expected = 20.0 * 3.0 * testing::harmonic_sum(20);
    EXPECT_NEAR(expected, 215.8644, 1e-3);
    EXPECT_NEAR(testing::mean_se(times).mean, expected, 0.03 * expected);
}

TEST(Run, RlsRandomStartMatchesAveragedClosedForm) {
    auto cfg = make_config(AlgorithmKind::RLS, StepOperatorKind::Uniform, 10, 2, MetricKind::Interval, 99);
    const auto times = hitting_times(run_batch(cfg, 1000));
    const auto pk = testing::binomial_pmf(10, 0.5);
    double expected = 0.0;
    for (int k = 1; k <= 10; ++k) expected += pk[static_cast<std::size_t>(k)] * 10.0 * testing::harmonic_sum(k);
    EXPECT_NEAR(testing::mean_se(times).mean, expected, 0.05 * expected);
}

TEST(RunBatch, Deterministic) {
    auto cfg = make_config(AlgorithmKind::OnePlusOneEA, StepOperatorKind::Harmonic, 10, 7, MetricKind::Ring, 5);
    cfg.trace_potentials = {PotentialKind::fitness()};
    const auto a = run_batch(cfg, 3, 1);
    const auto b = run_batch(cfg, 3, 1);
    const auto c = run_batch(cfg, 3, 3);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(RunBatch, SingleReplicateUsesFirstSubSeed) {
    auto cfg = make_config(AlgorithmKind::RLS, StepOperatorKind::PlusMinusOne, 12, 9, MetricKind::Interval, 77);
    const auto batch = run_batch(cfg, 1);
    cfg.seed = sub_seed(77, 0);
    EXPECT_EQ(batch.front(), run(cfg));
}

TEST(Mutation, RlsChangesAtMostOneComponent) {
    Heuristic h(AlgorithmKind::RLS, StepOperatorKind::Harmonic,
                ProblemInstance::all_zero(SpaceParams(10, 8), MetricKind::Interval));
    Rng rng(1);
    std::vector<Change> changes;
    for (int i = 0; i < 5000; ++i) {
        ValueVector x = sample_uniform_point(h.instance().params(), rng);
        const ValueVector before = x;
        ASSERT_EQ(h.mutate(x, changes, rng), 1u);
        ASSERT_LE(hamming_distance(x, before), 1);
        ASSERT_EQ(static_cast<std::int64_t>(changes.size()), hamming_distance(x, before));
    }
}

TEST(Mutation, EaSelectionIsBinomial) {
    constexpr int n = 20;
    Heuristic h(AlgorithmKind::OnePlusOneEA, StepOperatorKind::Uniform,
                ProblemInstance::all_zero(SpaceParams(n, 5), MetricKind::Interval));
    Rng rng(2);
    std::vector<Change> changes;
    std::vector<std::uint64_t> counts(n + 1, 0);
    ValueVector x(std::vector<Value>(n, 2));
    for (int i = 0; i < 100000; ++i) {
        const ValueVector before = x;
        const auto selected = h.mutate(x, changes, rng);
        // the uniform operator never returns the current value
        ASSERT_EQ(static_cast<std::int64_t>(selected), hamming_distance(x, before));
        ++counts[selected];
    }
    const auto res = testing::chi_square(counts, testing::binomial_pmf(n, 1.0 / n));
    EXPECT_TRUE(res.passes()) << res.statistic << " > " << res.critical;
}

TEST(Trace, FitnessNeverIncreases) {
    for (auto algo : kAlgorithms) {
        for (auto op : kOperators) {
            for (auto m : {MetricKind::Interval, MetricKind::Ring}) {
                auto cfg = make_config(algo, op, 8, 9, m, 21);
                cfg.trace_potentials = {PotentialKind::fitness(), PotentialKind::hamming()};
                for (const auto& rec : run_batch(cfg, 20, 1)) {
                    ASSERT_EQ(rec.trace.size(), *rec.hitting_time + 1);
                    ASSERT_EQ(rec.trace.front().iteration, 0u);
                    for (std::size_t t = 1; t < rec.trace.size(); ++t) {
                        ASSERT_EQ(rec.trace[t].iteration, t);
                        ASSERT_LE(rec.trace[t].values[0], rec.trace[t - 1].values[0]);
                    }
                    ASSERT_EQ(rec.trace.back().values[0], 0.0);
                    ASSERT_EQ(rec.trace.back().values[1], 0.0);
                }
            }
        }
    }
}

TEST(Trace, EaCanIncreaseHammingDistance) {
    constexpr int n = 5;
    constexpr int r = 5;
    std::vector<Value> start(n, 0);
    start[0] = r - 1;
    bool seen = false;
    for (std::uint64_t seed = 0; seed < 200 && !seen; ++seed) {
        auto cfg = make_config(AlgorithmKind::OnePlusOneEA, StepOperatorKind::Uniform, n, r, MetricKind::Interval, seed);
        cfg.initial_point = ValueVector(start);
        cfg.trace_potentials = {PotentialKind::fitness(), PotentialKind::hamming()};
        const auto rec = run(cfg);
        for (std::size_t t = 1; t < rec.trace.size(); ++t) {
            const auto& prev = rec.trace[t - 1].values;
            const auto& cur = rec.trace[t].values;
            ASSERT_LE(cur[0], prev[0]);
            if (cur[1] > prev[1]) seen = true;
        }
    }
    EXPECT_TRUE(seen);
}

TEST(Run, BinaryRingOperatorsIndistinguishable) {
    std::vector<std::vector<double>> samples;
    for (auto op : kOperators) {
        auto cfg = make_config(AlgorithmKind::OnePlusOneEA, op, 16, 2, MetricKind::Ring, 1234);
        cfg.seed = 1000 + static_cast<std::uint64_t>(op);
        samples.push_back(hitting_times(run_batch(cfg, 10000)));
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            const auto ks = testing::ks_two_sample(samples[i], samples[j]);
            EXPECT_TRUE(ks.passes()) << i << " vs " << j << ": D=" << ks.statistic;
        }
    }
}

TEST(AlgorithmKindNames, RoundTrip) {
    for (auto algo : kAlgorithms) EXPECT_EQ(parse_algorithm(to_string(algo)), algo);
    EXPECT_THROW((void)parse_algorithm("ga"), DomainError);
}

} // namespace
} // namespace rvea

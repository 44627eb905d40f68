#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rvea/discrete_table.hpp"
#include "rvea/random.hpp"
#include "rvea/search_space.hpp"

namespace rvea {

enum class StepOperatorKind { Uniform, PlusMinusOne, Harmonic };

[[nodiscard]] std::string_view to_string(StepOperatorKind kind) noexcept;
/// Accepts "uniform", "pm1" (or "plusminusone") and "harmonic".
[[nodiscard]] StepOperatorKind parse_step_operator(std::string_view text);

/// Largest supported r - 1 for a harmonic table (one double per step size).
inline constexpr std::int64_t kMaxHarmonicSupport = std::int64_t{1} << 26;

/// Step sizes j in [1, r-1] with P[j] = (1/j) / H_{r-1}.
class HarmonicTable {
public:
    /// Throws DomainError for r < 2, CapacityError if r - 1 exceeds kMaxHarmonicSupport.
    explicit HarmonicTable(std::int64_t r);

    [[nodiscard]] std::int64_t r() const noexcept { return r_; }
    /// H_{r-1}.
    [[nodiscard]] double normalizer() const noexcept { return normalizer_; }
    /// P[j] for j in [1, r-1].
    [[nodiscard]] double probability(std::int64_t j) const noexcept {
        return table_.probability(static_cast<std::size_t>(j - 1));
    }
    [[nodiscard]] std::int64_t sample(Rng& rng) const {
        return static_cast<std::int64_t>(table_.sample(rng)) + 1;
    }

private:
    HarmonicTable(std::int64_t r, const std::vector<double>& weights);

    std::int64_t r_;
    double normalizer_;
    CumulativeTable table_;
};

/// The harmonic law over [1, r-1] as a dense vector; entry j-1 holds P[j].
[[nodiscard]] std::vector<double> harmonic_pmf(std::int64_t r);

/// A step operator bound to a metric and an alphabet size. Immutable; the
/// harmonic table is built once at construction.
///
/// Under the ring metric every step wraps around. Under the interval metric
/// a +-1 or harmonic step that would leave [0, r-1] is infeasible and yields
/// std::nullopt; the direction and size are drawn first and never re-drawn.
class StepOperator {
public:
    StepOperator(StepOperatorKind kind, MetricKind metric, std::int64_t r);

    [[nodiscard]] StepOperatorKind kind() const noexcept { return kind_; }
    [[nodiscard]] MetricKind metric() const noexcept { return metric_; }
    [[nodiscard]] std::int64_t r() const noexcept { return r_; }

    /// Throws DomainError if `current` is outside [0, r-1].
    [[nodiscard]] std::optional<Value> apply(Value current, Rng& rng) const;

    /// `current` must lie in [0, r-1].
    [[nodiscard]] std::optional<Value> apply_unchecked(Value current, Rng& rng) const {
        switch (kind_) {
        case StepOperatorKind::Uniform: {
            const auto u = static_cast<Value>(uniform_below(rng, static_cast<std::uint64_t>(r_ - 1)));
            return u >= current ? u + 1 : u;
        }
        case StepOperatorKind::PlusMinusOne:
            return shift(current, 1, coin_flip(rng));
        case StepOperatorKind::Harmonic: {
            const std::int64_t size = harmonic_->sample(rng);
            return shift(current, size, coin_flip(rng));
        }
        }
        return std::nullopt;
    }

private:
    [[nodiscard]] std::optional<Value> shift(Value current, std::int64_t size, bool upward) const noexcept {
        const Value moved = upward ? current + size : current - size;
        if (metric_ == MetricKind::Ring) {
            if (moved >= r_) return moved - r_;
            if (moved < 0) return moved + r_;
            return moved;
        }
        if (moved < 0 || moved >= r_) return std::nullopt;
        return moved;
    }

    StepOperatorKind kind_;
    MetricKind metric_;
    std::int64_t r_;
    std::optional<HarmonicTable> harmonic_;
};

/// One elementary step. Builds a fresh operator per call, which is O(r) for
/// the harmonic kind; hold a StepOperator for repeated use.
[[nodiscard]] std::optional<Value> step(StepOperatorKind kind, MetricKind metric, Value current, std::int64_t r,
                                        Rng& rng);

} // namespace rvea

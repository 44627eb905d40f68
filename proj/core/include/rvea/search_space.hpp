#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "rvea/random.hpp"

namespace rvea {

/// Component value in [r] = {0, ..., r-1}.
using Value = std::int64_t;

/// Fitness accumulator; holds n * r up to 2^63.
using Fitness = std::uint64_t;

/// Dimensions of the search space [r]^n.
class SpaceParams {
public:
    /// Throws DomainError unless n >= 1 and r >= 2.
    SpaceParams(std::int64_t n, std::int64_t r);

    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    [[nodiscard]] std::int64_t r() const noexcept { return r_; }

    friend bool operator==(const SpaceParams&, const SpaceParams&) = default;

private:
    std::int64_t n_;
    std::int64_t r_;
};

/// A point of [r]^n.
struct ValueVector {
    std::vector<Value> values;

    ValueVector() = default;
    explicit ValueVector(std::vector<Value> v) : values(std::move(v)) {}
    ValueVector(std::initializer_list<Value> v) : values(v) {}

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    Value& operator[](std::size_t i) { return values[i]; }
    Value operator[](std::size_t i) const { return values[i]; }

    /// True iff the length is n and every entry lies in [0, r-1].
    [[nodiscard]] bool conforms(const SpaceParams& params) const noexcept;

    friend bool operator==(const ValueVector&, const ValueVector&) = default;
};

enum class MetricKind { Interval, Ring };

[[nodiscard]] std::string_view to_string(MetricKind kind) noexcept;
/// Accepts "interval" and "ring"; throws DomainError otherwise.
[[nodiscard]] MetricKind parse_metric(std::string_view text);

/// Distance of two values of [r] under the interval or ring metric.
/// Throws DomainError if a or b is outside [0, r-1].
[[nodiscard]] std::int64_t metric_distance(MetricKind kind, Value a, Value b, std::int64_t r);

/// Unchecked variant for inner loops; a, b must lie in [0, r-1].
[[nodiscard]] inline std::int64_t metric_distance_unchecked(MetricKind kind, Value a, Value b,
                                                            std::int64_t r) noexcept {
    const std::int64_t diff = a > b ? a - b : b - a;
    if (kind == MetricKind::Ring) {
        const std::int64_t wrapped = r - diff;
        return wrapped < diff ? wrapped : diff;
    }
    return diff;
}

/// Largest distance a single component can have from `target` under `kind`.
[[nodiscard]] std::int64_t max_component_distance(MetricKind kind, Value target, std::int64_t r) noexcept;

/// An r-valued OneMax function: f(x) = sum_i d(x_i, z_i), minimized at the target z.
class ProblemInstance {
public:
    /// Throws DomainError if `target` does not conform to `params`.
    ProblemInstance(SpaceParams params, MetricKind metric, ValueVector target);

    /// The target z = (0, ..., 0).
    static ProblemInstance all_zero(SpaceParams params, MetricKind metric);

    [[nodiscard]] const SpaceParams& params() const noexcept { return params_; }
    [[nodiscard]] MetricKind metric() const noexcept { return metric_; }
    [[nodiscard]] const ValueVector& target() const noexcept { return target_; }
    [[nodiscard]] std::int64_t n() const noexcept { return params_.n(); }
    [[nodiscard]] std::int64_t r() const noexcept { return params_.r(); }

    /// d(x_i, z_i) without bounds checks.
    [[nodiscard]] std::int64_t component_distance(std::size_t i, Value x_i) const noexcept {
        return metric_distance_unchecked(metric_, x_i, target_.values[i], params_.r());
    }

    /// Upper bound of f: n * floor(r/2) for Ring, n * (r-1) for Interval.
    [[nodiscard]] Fitness max_fitness() const noexcept;

private:
    SpaceParams params_;
    MetricKind metric_;
    ValueVector target_;
};

/// Throws DomainError if x does not conform to the instance.
[[nodiscard]] Fitness fitness(const ProblemInstance& instance, const ValueVector& x);

/// Number of positions where x and y differ. Throws DomainError on length mismatch.
[[nodiscard]] std::int64_t hamming_distance(const ValueVector& x, const ValueVector& y);

/// Each component independently uniform over [0, r-1].
[[nodiscard]] ValueVector sample_uniform_point(const SpaceParams& params, Rng& rng);

} // namespace rvea

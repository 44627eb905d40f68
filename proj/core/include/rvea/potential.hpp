#pragma once

#include <string>
#include <string_view>

#include "rvea/search_space.hpp"

namespace rvea {

/// Potential functions g : [r]^n -> R measuring distance from the target.
///
/// - HammingToTarget: H(x, z), the number of wrong components.
/// - Fitness: f(x) itself.
/// - ExponentialWeight(w): sum_i (w^{d(x_i, z_i)} - 1), which weighs one far-off
///   component more than many near ones. Requires 1 < w <= 2.
class PotentialKind {
public:
    enum class Tag { HammingToTarget, Fitness, ExponentialWeight };

    /// Default base of the exponential potential; satisfies w - 1 - e(w-1)^2 > 0.
    static constexpr double kDefaultWeight = 1.25;

    static PotentialKind hamming() noexcept { return PotentialKind(Tag::HammingToTarget, 0.0); }
    static PotentialKind fitness() noexcept { return PotentialKind(Tag::Fitness, 0.0); }
    /// Throws DomainError unless 1 < w <= 2.
    static PotentialKind exponential(double w = kDefaultWeight);

    [[nodiscard]] Tag tag() const noexcept { return tag_; }
    /// Base w; only meaningful for ExponentialWeight.
    [[nodiscard]] double weight() const noexcept { return weight_; }

    /// "hamming", "fitness" or "exp(w=1.25)".
    [[nodiscard]] std::string name() const;

    friend bool operator==(const PotentialKind&, const PotentialKind&) = default;

private:
    PotentialKind(Tag tag, double weight) noexcept : tag_(tag), weight_(weight) {}

    Tag tag_;
    double weight_;
};

/// Parses "hamming", "fitness" or "exp"; `weight` is used for "exp".
[[nodiscard]] PotentialKind parse_potential(std::string_view text, double weight = PotentialKind::kDefaultWeight);

/// g(x). Zero iff x equals the target. Throws DomainError on shape mismatch.
[[nodiscard]] double potential(const PotentialKind& kind, const ProblemInstance& instance, const ValueVector& x);

} // namespace rvea

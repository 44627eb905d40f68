#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "rvea/random.hpp"

namespace rvea {

/// Inverse-CDF sampler over {0, ..., k-1} built from non-negative weights.
/// O(k) construction, O(log k) per draw.
class CumulativeTable {
public:
    /// Throws DomainError for an empty, negative, non-finite or all-zero weight vector.
    explicit CumulativeTable(std::span<const double> weights);

    [[nodiscard]] std::size_t size() const noexcept { return cumulative_.size(); }

    /// P[index = i].
    [[nodiscard]] double probability(std::size_t i) const noexcept {
        return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
    }

    /// Normalized cumulative probabilities; the last entry is exactly 1.
    [[nodiscard]] std::span<const double> cumulative() const noexcept { return cumulative_; }

    [[nodiscard]] std::size_t sample(Rng& rng) const {
        const double u = uniform_unit(rng);
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        // u < 1 = back(), so `it` is never end().
        return static_cast<std::size_t>(it - cumulative_.begin());
    }

private:
    std::vector<double> cumulative_;
};

} // namespace rvea

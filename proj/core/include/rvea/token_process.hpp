#pragma once

/// @file token_process.hpp
/// A token on {0, ..., r} starts at a uniformly random position. Each round
/// draws a step size d from a law D over {1, ..., r}; the token moves from x
/// to x - d if x >= d and stays put otherwise. The hitting time is the number
/// of rounds until the token sits on 0.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvea/random.hpp"

namespace rvea {

/// Step-size law over {1, ..., r}.
class StepSizeLaw {
public:
    enum class Kind { Unit, Uniform, Harmonic, Explicit };

    /// d = 1 always.
    static StepSizeLaw unit() { return StepSizeLaw(Kind::Unit, {}); }
    /// d uniform on {1, ..., r}.
    static StepSizeLaw uniform() { return StepSizeLaw(Kind::Uniform, {}); }
    /// P[d] proportional to 1/d on {1, ..., r}.
    static StepSizeLaw harmonic() { return StepSizeLaw(Kind::Harmonic, {}); }
    /// probabilities[d-1] = P[d]. Throws DomainError for negative entries or a
    /// sum further than 1e-9 from 1.
    static StepSizeLaw explicit_law(std::vector<double> probabilities);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::string_view name() const noexcept;

    /// Dense law for state space {0, ..., r}; entry d-1 holds P[d]. Throws
    /// DomainError if an explicit law's length differs from r.
    [[nodiscard]] std::vector<double> probabilities(std::int64_t r) const;

private:
    StepSizeLaw(Kind kind, std::vector<double> p) : kind_(kind), explicit_(std::move(p)) {}

    Kind kind_;
    std::vector<double> explicit_;
};

/// Parses "unit", "uniform" or "harmonic".
[[nodiscard]] StepSizeLaw parse_step_size_law(std::string_view text);

struct TokenConfig {
    std::int64_t r = 1;
    StepSizeLaw distribution = StepSizeLaw::unit();
    std::uint64_t seed = 0;
    std::uint64_t iteration_cap = 1'000'000'000ULL;
    /// Fixed start position in {0, ..., r}; uniform when unset.
    std::optional<std::int64_t> start;
};

struct TokenRecord {
    std::int64_t start = 0;
    /// Rounds until the token reaches 0; nullopt if capped.
    std::optional<std::uint64_t> hitting_time;

    [[nodiscard]] bool capped() const noexcept { return !hitting_time.has_value(); }
    friend bool operator==(const TokenRecord&, const TokenRecord&) = default;
};

/// One seeded run. Throws DomainError for r < 1 or an out-of-range start.
[[nodiscard]] TokenRecord token_run(const TokenConfig& config);

/// `replicates` runs with seeds sub_seed(config.seed, k); independent of `threads`.
[[nodiscard]] std::vector<TokenRecord> token_batch(const TokenConfig& config, std::size_t replicates,
                                                   unsigned threads = 0);

/// Largest r accepted by the exact solver.
inline constexpr std::int64_t kMaxExactTokenR = 4096;

/// E[T | start = x] for x = 0, ..., r by forward substitution:
/// E[0] = 0, E[x] = (1 + sum_{d<=x} P[d] E[x-d]) / P[d <= x].
/// Throws CapacityError for r > kMaxExactTokenR and DivergenceError if some
/// state x >= 1 admits no step d <= x.
[[nodiscard]] std::vector<double> token_expected_hitting_times(std::int64_t r, const StepSizeLaw& law);

/// E[T] under a uniform start on {0, ..., r}.
[[nodiscard]] double token_expected_hitting_time_exact(std::int64_t r, const StepSizeLaw& law);

} // namespace rvea

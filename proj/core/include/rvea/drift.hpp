#pragma once

/// @file drift.hpp
/// Empirical one-step drift of potential functions, and hitting-time bounds
/// from the multiplicative and variable drift theorems.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rvea/algorithms.hpp"
#include "rvea/potential.hpp"

namespace rvea {

/// Mean one-step decrease g(x_t) - g(x_{t+1}) observed at one potential level.
struct DriftEstimate {
    /// Potential value g(x_t) of the parent states in this bucket.
    double level = 0.0;
    double mean_drop = 0.0;
    /// Half-width of the 95% normal-approximation confidence interval.
    double confidence_halfwidth = 0.0;
    std::uint64_t samples = 0;
};

/// How estimate_drift obtains parent states.
///
/// Planted: for every requested level a parent is constructed directly and a
/// single round is applied to it, `samples` times per level. For the Hamming
/// potential the level is the number of wrong components; for the fitness
/// potential it is f(x); for the exponential potential it is the total
/// distance sum_i d(x_i, z_i), and one distance vector is drawn per level and
/// reused for every sample.
///
/// Trajectory: transitions of ordinary runs, bucketed by the exact potential
/// value of the parent, until `samples` transitions have been collected in
/// total. Levels never visited produce no bucket.
class DriftConditioning {
public:
    enum class Mode { Planted, Trajectory };

    static DriftConditioning planted(std::vector<std::int64_t> levels) {
        return DriftConditioning(Mode::Planted, std::move(levels));
    }
    static DriftConditioning trajectory() { return DriftConditioning(Mode::Trajectory, {}); }

    [[nodiscard]] Mode mode() const noexcept { return mode_; }
    [[nodiscard]] std::span<const std::int64_t> levels() const noexcept { return levels_; }

private:
    DriftConditioning(Mode mode, std::vector<std::int64_t> levels) : mode_(mode), levels_(std::move(levels)) {}

    Mode mode_;
    std::vector<std::int64_t> levels_;
};

/// A parent state at the requested level of `kind` (see DriftConditioning).
/// Throws DomainError if the level is negative or unreachable.
[[nodiscard]] ValueVector plant_state(const PotentialKind& kind, const ProblemInstance& instance, std::int64_t level,
                                      Rng& rng);

/// Drift estimates sorted by level. Requires samples >= 100. Deterministic in
/// config.seed; independent of `threads`.
[[nodiscard]] std::vector<DriftEstimate> estimate_drift(const RunConfig& config, const PotentialKind& kind,
                                                        const DriftConditioning& conditioning, std::uint64_t samples,
                                                        unsigned threads = 0);

/// Drift from one fixed parent state.
[[nodiscard]] DriftEstimate estimate_drift_at(const RunConfig& config, const PotentialKind& kind,
                                              const ValueVector& parent, std::uint64_t samples);

/// Mean and 95% confidence half-width of a sample; half-width 0 for one sample.
[[nodiscard]] DriftEstimate summarize_drops(double level, std::span<const double> drops);

/// Parameters of the multiplicative drift bounds.
struct DriftBoundInputs {
    double s0 = 1.0;
    double s_min = 1.0;
    double s_aim = 1.0;
    double delta = 1.0;
    /// Large-jump tolerance; 0 is accepted as the limit of no large jumps.
    double beta = 0.0;

    /// Throws DomainError unless s_min > 0, s0 >= s_min, s_aim >= 1,
    /// delta in (0, 1] and beta in [0, 1].
    void validate() const;
};

/// E[T] <= (ln(s0 / s_min) + 1) / delta.
[[nodiscard]] double multiplicative_drift_upper_bound(const DriftBoundInputs& in);

struct MultiplicativeLowerBound {
    /// (ln s0 - ln s_aim) / delta * (1 - beta) / (1 + beta)
    double sharp;
    /// (ln s0 - ln s_aim) / delta * (1 - 2 beta); never larger than `sharp`.
    double simplified;
};

/// Lower bound on the time to reach s_aim. Throws DomainError if s_aim > s0.
[[nodiscard]] MultiplicativeLowerBound multiplicative_drift_lower_bound(const DriftBoundInputs& in);

/// Lower bound with a level-dependent drift parameter delta(s):
/// (ln s_cut - ln s_aim) / delta_max * (1 - 2 beta), where delta_max is the
/// largest delta(s) over the given levels s with s_aim < s <= s_cut.
/// Requires s_aim < s_cut <= s0 and at least one level in (s_aim, s_cut].
[[nodiscard]] double multiplicative_drift_lower_bound_levelwise(std::span<const double> levels,
                                                                const std::function<double(double)>& delta_of,
                                                                double s0, double s_aim, double s_cut, double beta);

/// Adaptive Simpson quadrature of f over [a, b] to relative tolerance `rel_tol`.
[[nodiscard]] double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-6);

/// E[T] <= x_min / h(x_min) + integral_{x_min}^{s0} 1/h(s) ds for a positive,
/// increasing drift lower bound h. Throws DomainError if x_min > s0, x_min <= 0,
/// or h is non-positive at any evaluated point.
[[nodiscard]] double variable_drift_upper_bound(double s0, double x_min, const std::function<double(double)>& h,
                                                double rel_tol = 1e-6);

/// H_k = sum_{i=1}^k 1/i. Exact partial sum for k <= 10^6, asymptotic
/// expansion beyond. Throws DomainError for k < 1.
[[nodiscard]] double harmonic_number(std::int64_t k);

} // namespace rvea

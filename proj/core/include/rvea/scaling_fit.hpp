#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rvea/experiments.hpp"

namespace rvea {

/// One observation of a run-time law: mean value at dimension n and alphabet r.
struct ScalingPoint {
    double n;
    double r;
    double value;
};

/// A model linear in its coefficients: value ~ sum_k c_k * term_k(n, r).
struct ScalingModel {
    std::string name;
    std::vector<std::string> terms;
    std::vector<std::function<double(double n, double r)>> basis;
    /// True if one term is the constant 1 (R^2 is then centered).
    bool has_intercept = false;
};

/// Named models:
///   ea-uniform      c * (r-1) n ln n
///   ea-uniform-full a * (r-1) n ln n + b * (r-1) n
///   rls-uniform     a * (r-1) n ln n + b * (r-1) n
///   pm1             a * n r + b * n ln n
///   harmonic        a * n ln r (ln n + ln r)
///   log-quadratic   a * (ln r)^2 + b * ln r + c
///   linear-r        a * r + b
/// Throws DomainError for an unknown name.
[[nodiscard]] ScalingModel scaling_model(std::string_view name);
[[nodiscard]] std::vector<std::string> scaling_model_names();

struct ScalingFit {
    std::string model;
    std::vector<std::string> terms;
    std::vector<double> coefficients;
    /// Centered for models with an intercept, uncentered otherwise; clamped to [0, 1].
    double r_squared = 0.0;
    /// observed - fitted, per point.
    std::vector<double> residuals;
};

/// Least-squares fit. Requires at least 4 points and fewer terms than points.
/// Throws DegeneracyError naming the collinear terms if the design matrix is
/// rank deficient.
[[nodiscard]] ScalingFit fit_scaling(std::span<const ScalingPoint> points, const ScalingModel& model);

/// Fit on cell means. Cells where every run was capped have no mean and are
/// rejected with DomainError.
[[nodiscard]] ScalingFit fit_scaling(std::span<const AggregateResult> results, const ScalingModel& model);

} // namespace rvea

#include "rvea/scaling_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "rvea/errors.hpp"

namespace rvea {

namespace {

using Basis = std::function<double(double, double)>;

ScalingModel make(std::string name, std::vector<std::pair<std::string, Basis>> terms, bool intercept) {
    ScalingModel m;
    m.name = std::move(name);
    m.has_intercept = intercept;
    for (auto& [label, fn] : terms) {
        m.terms.push_back(std::move(label));
        m.basis.push_back(std::move(fn));
    }
    return m;
}

const std::vector<std::string>& names() {
    static const std::vector<std::string> all{"ea-uniform", "ea-uniform-full", "rls-uniform", "pm1",
                                              "harmonic",   "log-quadratic",   "linear-r"};
    return all;
}

} // namespace

std::vector<std::string> scaling_model_names() { return names(); }

ScalingModel scaling_model(std::string_view name) {
    using std::log;
    const Basis nlogn_r = [](double n, double r) { return (r - 1.0) * n * log(n); };
    const Basis n_r = [](double n, double r) { return (r - 1.0) * n; };
    if (name == "ea-uniform") return make("ea-uniform", {{"(r-1)*n*ln(n)", nlogn_r}}, false);
    if (name == "ea-uniform-full" || name == "rls-uniform") {
        return make(std::string(name), {{"(r-1)*n*ln(n)", nlogn_r}, {"(r-1)*n", n_r}}, false);
    }
    if (name == "pm1") {
        return make("pm1",
                    {{"n*r", [](double n, double r) { return n * r; }},
                     {"n*ln(n)", [](double n, double) { return n * log(n); }}},
                    false);
    }
    if (name == "harmonic") {
        return make("harmonic",
                    {{"n*ln(r)*(ln(n)+ln(r))", [](double n, double r) { return n * log(r) * (log(n) + log(r)); }}},
                    false);
    }
    if (name == "log-quadratic") {
        return make("log-quadratic",
                    {{"ln(r)^2", [](double, double r) { return log(r) * log(r); }},
                     {"ln(r)", [](double, double r) { return log(r); }},
                     {"1", [](double, double) { return 1.0; }}},
                    true);
    }
    if (name == "linear-r") {
        return make("linear-r", {{"r", [](double, double r) { return r; }}, {"1", [](double, double) { return 1.0; }}},
                    true);
    }
    std::string known;
    for (const auto& n : names()) known += (known.empty() ? "" : "|") + n;
    throw DomainError("unknown scaling model '" + std::string(name) + "' (expected " + known + ")");
}

ScalingFit fit_scaling(std::span<const ScalingPoint> points, const ScalingModel& model) {
    const auto m = static_cast<Eigen::Index>(points.size());
    const auto p = static_cast<Eigen::Index>(model.basis.size());
    if (p == 0) throw DomainError("scaling model has no terms");
    if (m < 4) throw DomainError("scaling fit needs at least 4 points, got " + std::to_string(m));
    if (p >= m) throw DomainError("scaling model needs fewer terms than points");

    Eigen::MatrixXd design(m, p);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& pt = points[static_cast<std::size_t>(i)];
        y(i) = pt.value;
        for (Eigen::Index k = 0; k < p; ++k) design(i, k) = model.basis[static_cast<std::size_t>(k)](pt.n, pt.r);
    }
    if (!design.allFinite() || !y.allFinite()) throw DomainError("scaling fit: non-finite design or observation");

    // Column-normalized design; a column that is (numerically) in the span of
    // the previous ones makes the fit degenerate.
    Eigen::MatrixXd scaled = design;
    for (Eigen::Index k = 0; k < p; ++k) {
        const double norm = scaled.col(k).norm();
        if (norm == 0.0) throw DegeneracyError("term '" + model.terms[static_cast<std::size_t>(k)] + "' is identically zero");
        scaled.col(k) /= norm;
    }
    constexpr double kCollinear = 1e-9;
    for (Eigen::Index k = 1; k < p; ++k) {
        const Eigen::MatrixXd previous = scaled.leftCols(k);
        const Eigen::VectorXd coef = previous.colPivHouseholderQr().solve(scaled.col(k));
        const double residual = (scaled.col(k) - previous * coef).norm();
        if (residual < kCollinear) {
            std::string others;
            for (Eigen::Index j = 0; j < k; ++j) {
                if (std::abs(coef(j)) > kCollinear) {
                    others += (others.empty() ? "'" : ", '") + model.terms[static_cast<std::size_t>(j)] + "'";
                }
            }
            throw DegeneracyError("rank-deficient design: term '" + model.terms[static_cast<std::size_t>(k)] +
                                  "' is collinear with " + others + " on these points");
        }
    }

    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd residual = y - design * coef;

    ScalingFit fit;
    fit.model = model.name;
    fit.terms = model.terms;
    fit.coefficients.assign(coef.data(), coef.data() + p);
    fit.residuals.assign(residual.data(), residual.data() + m);
    const double ss_res = residual.squaredNorm();
    const double ss_tot = model.has_intercept ? (y.array() - y.mean()).matrix().squaredNorm() : y.squaredNorm();
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    fit.r_squared = std::clamp(r2, 0.0, 1.0);
    return fit;
}

ScalingFit fit_scaling(std::span<const AggregateResult> results, const ScalingModel& model) {
    std::vector<ScalingPoint> points;
    points.reserve(results.size());
    for (const auto& a : results) {
        if (!std::isfinite(a.mean)) {
            throw DomainError("cell n=" + std::to_string(a.n) + ", r=" + std::to_string(a.r) + " has no uncapped runs");
        }
        points.push_back({static_cast<double>(a.n), static_cast<double>(a.r), a.mean});
    }
    return fit_scaling(points, model);
}

} // namespace rvea

#include "rvea/step_operators.hpp"

#include <cmath>
#include <string>

#include "rvea/errors.hpp"

namespace rvea {

CumulativeTable::CumulativeTable(std::span<const double> weights) {
    if (weights.empty()) throw DomainError("CumulativeTable: empty weight vector");
    cumulative_.resize(weights.size());
    double running = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (!std::isfinite(w) || w < 0.0) throw DomainError("CumulativeTable: weights must be finite and >= 0");
        running += w;
        cumulative_[i] = running;
    }
    if (!(running > 0.0)) throw DomainError("CumulativeTable: total weight must be positive");
    for (auto& c : cumulative_) c /= running;
    // Pin the tail to 1; trailing zero-weight entries keep probability zero.
    std::size_t last = cumulative_.size();
    while (last > 0 && weights[last - 1] == 0.0) --last;
    for (std::size_t i = last - 1; i < cumulative_.size(); ++i) cumulative_[i] = 1.0;
}

std::string_view to_string(StepOperatorKind kind) noexcept {
    switch (kind) {
    case StepOperatorKind::Uniform: return "uniform";
    case StepOperatorKind::PlusMinusOne: return "pm1";
    case StepOperatorKind::Harmonic: return "harmonic";
    }
    return "?";
}

StepOperatorKind parse_step_operator(std::string_view text) {
    if (text == "uniform") return StepOperatorKind::Uniform;
    if (text == "pm1" || text == "plusminusone" || text == "unit") return StepOperatorKind::PlusMinusOne;
    if (text == "harmonic") return StepOperatorKind::Harmonic;
    throw DomainError("unknown step operator '" + std::string(text) + "' (expected uniform|pm1|harmonic)");
}

namespace {

std::vector<double> reciprocal_weights(std::int64_t r) {
    if (r < 2) throw DomainError("harmonic step sizes need r >= 2, got " + std::to_string(r));
    if (r - 1 > kMaxHarmonicSupport) {
        throw CapacityError("harmonic table for r = " + std::to_string(r) + " exceeds the supported size");
    }
    std::vector<double> w(static_cast<std::size_t>(r - 1));
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = 1.0 / static_cast<double>(j + 1);
    return w;
}

double reverse_sum(const std::vector<double>& w) {
    double s = 0.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) s += *it;
    return s;
}

} // namespace

HarmonicTable::HarmonicTable(std::int64_t r)
    : HarmonicTable(r, reciprocal_weights(r)) {}

HarmonicTable::HarmonicTable(std::int64_t r, const std::vector<double>& weights)
    : r_(r), normalizer_(reverse_sum(weights)), table_(weights) {}

std::vector<double> harmonic_pmf(std::int64_t r) {
    auto w = reciprocal_weights(r);
    const double total = reverse_sum(w);
    for (auto& p : w) p /= total;
    return w;
}

StepOperator::StepOperator(StepOperatorKind kind, MetricKind metric, std::int64_t r)
    : kind_(kind), metric_(metric), r_(r) {
    if (r < 2) throw DomainError("step operator needs r >= 2, got " + std::to_string(r));
    if (kind == StepOperatorKind::Harmonic) harmonic_.emplace(r);
}

std::optional<Value> StepOperator::apply(Value current, Rng& rng) const {
    if (current < 0 || current >= r_) {
        throw DomainError("step: value " + std::to_string(current) + " not in [0, " + std::to_string(r_ - 1) + "]");
    }
    return apply_unchecked(current, rng);
}

std::optional<Value> step(StepOperatorKind kind, MetricKind metric, Value current, std::int64_t r, Rng& rng) {
    return StepOperator(kind, metric, r).apply(current, rng);
}

} // namespace rvea

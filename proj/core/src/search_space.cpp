#include "rvea/search_space.hpp"

#include <algorithm>
#include <string>

#include "rvea/errors.hpp"

namespace rvea {

SpaceParams::SpaceParams(std::int64_t n, std::int64_t r) : n_(n), r_(r) {
    if (n < 1) throw DomainError("n must be >= 1, got " + std::to_string(n));
    if (r < 2) throw DomainError("r must be >= 2, got " + std::to_string(r));
}

bool ValueVector::conforms(const SpaceParams& params) const noexcept {
    if (static_cast<std::int64_t>(values.size()) != params.n()) return false;
    return std::all_of(values.begin(), values.end(),
                       [r = params.r()](Value v) { return v >= 0 && v < r; });
}

std::string_view to_string(MetricKind kind) noexcept {
    return kind == MetricKind::Interval ? "interval" : "ring";
}

MetricKind parse_metric(std::string_view text) {
    if (text == "interval") return MetricKind::Interval;
    if (text == "ring") return MetricKind::Ring;
    throw DomainError("unknown metric '" + std::string(text) + "' (expected interval|ring)");
}

std::int64_t metric_distance(MetricKind kind, Value a, Value b, std::int64_t r) {
    if (r < 2) throw DomainError("r must be >= 2");
    if (a < 0 || a >= r || b < 0 || b >= r) {
        throw DomainError("metric_distance: values " + std::to_string(a) + ", " + std::to_string(b) +
                          " not in [0, " + std::to_string(r - 1) + "]");
    }
    return metric_distance_unchecked(kind, a, b, r);
}

std::int64_t max_component_distance(MetricKind kind, Value target, std::int64_t r) noexcept {
    if (kind == MetricKind::Ring) return r / 2;
    return std::max(target, r - 1 - target);
}

ProblemInstance::ProblemInstance(SpaceParams params, MetricKind metric, ValueVector target)
    : params_(params), metric_(metric), target_(std::move(target)) {
    if (!target_.conforms(params_)) throw DomainError("target does not conform to the search space");
}

ProblemInstance ProblemInstance::all_zero(SpaceParams params, MetricKind metric) {
    return {params, metric, ValueVector(std::vector<Value>(static_cast<std::size_t>(params.n()), 0))};
}

Fitness ProblemInstance::max_fitness() const noexcept {
    const auto per = metric_ == MetricKind::Ring ? params_.r() / 2 : params_.r() - 1;
    return static_cast<Fitness>(params_.n()) * static_cast<Fitness>(per);
}

Fitness fitness(const ProblemInstance& instance, const ValueVector& x) {
    if (!x.conforms(instance.params())) throw DomainError("fitness: point does not conform to the instance");
    Fitness total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) total += static_cast<Fitness>(instance.component_distance(i, x[i]));
    return total;
}

std::int64_t hamming_distance(const ValueVector& x, const ValueVector& y) {
    if (x.size() != y.size()) throw DomainError("hamming_distance: length mismatch");
    std::int64_t count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) count += x[i] != y[i] ? 1 : 0;
    return count;
}

ValueVector sample_uniform_point(const SpaceParams& params, Rng& rng) {
    std::vector<Value> values(static_cast<std::size_t>(params.n()));
    for (auto& v : values) v = static_cast<Value>(uniform_below(rng, static_cast<std::uint64_t>(params.r())));
    return ValueVector(std::move(values));
}

} // namespace rvea

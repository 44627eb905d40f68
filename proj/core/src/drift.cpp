#include "rvea/drift.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "rvea/errors.hpp"
#include "rvea/parallel.hpp"

namespace rvea {

namespace {

constexpr double kZ95 = 1.959963984540054;

/// A value at metric distance d from `target`, uniform over the (at most two) candidates.
Value value_at_distance(MetricKind metric, Value target, std::int64_t d, std::int64_t r, Rng& rng) {
    if (d == 0) return target;
    Value up = target + d;
    Value down = target - d;
    if (metric == MetricKind::Ring) {
        up %= r;
        down = ((down % r) + r) % r;
        if (up == down || coin_flip(rng)) return up;
        return down;
    }
    const bool up_ok = up < r;
    const bool down_ok = down >= 0;
    if (up_ok && down_ok) return coin_flip(rng) ? up : down;
    return up_ok ? up : down;
}

ValueVector plant_hamming(const ProblemInstance& instance, std::int64_t level, Rng& rng) {
    const auto n = static_cast<std::size_t>(instance.n());
    if (level < 0 || level > instance.n()) {
        throw DomainError("Hamming level " + std::to_string(level) + " outside [0, n]");
    }
    ValueVector x = instance.target();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t k = 0; k < static_cast<std::size_t>(level); ++k) {
        const auto pick = k + static_cast<std::size_t>(uniform_below(rng, n - k));
        std::swap(order[k], order[pick]);
        const std::size_t i = order[k];
        const auto u = static_cast<Value>(uniform_below(rng, static_cast<std::uint64_t>(instance.r() - 1)));
        x[i] = u >= x[i] ? u + 1 : u;
    }
    return x;
}

ValueVector plant_distance_sum(const ProblemInstance& instance, std::int64_t level, Rng& rng) {
    const auto n = static_cast<std::size_t>(instance.n());
    std::vector<std::int64_t> room(n);
    std::int64_t capacity = 0;
    for (std::size_t i = 0; i < n; ++i) {
        room[i] = max_component_distance(instance.metric(), instance.target()[i], instance.r());
        capacity += room[i];
    }
    if (level < 0 || level > capacity) {
        throw DomainError("distance level " + std::to_string(level) + " outside [0, " + std::to_string(capacity) + "]");
    }
    // Random composition: each unit goes to a uniformly chosen component with room left.
    std::vector<std::int64_t> d(n, 0);
    std::vector<std::size_t> open(n);
    std::iota(open.begin(), open.end(), std::size_t{0});
    for (std::int64_t unit = 0; unit < level; ++unit) {
        const auto slot = static_cast<std::size_t>(uniform_below(rng, open.size()));
        const std::size_t i = open[slot];
        if (++d[i] == room[i]) {
            open[slot] = open.back();
            open.pop_back();
        }
    }
    ValueVector x = instance.target();
    for (std::size_t i = 0; i < n; ++i) x[i] = value_at_distance(instance.metric(), x[i], d[i], instance.r(), rng);
    return x;
}

DriftEstimate drift_from(const RunConfig& config, const PotentialKind& kind, Heuristic& heuristic,
                         const std::function<ValueVector(Rng&)>& parent, std::uint64_t samples, Rng& rng) {
    std::vector<double> drops;
    drops.reserve(samples);
    double level = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        SearchState state = heuristic.make_state(parent(rng));
        const double before = potential(kind, config.instance, state.x);
        heuristic.advance(state, rng);
        drops.push_back(before - potential(kind, config.instance, state.x));
        level = before;
    }
    return summarize_drops(level, drops);
}

} // namespace

ValueVector plant_state(const PotentialKind& kind, const ProblemInstance& instance, std::int64_t level, Rng& rng) {
    if (kind.tag() == PotentialKind::Tag::HammingToTarget) return plant_hamming(instance, level, rng);
    return plant_distance_sum(instance, level, rng);
}

DriftEstimate summarize_drops(double level, std::span<const double> drops) {
    DriftEstimate out;
    out.level = level;
    out.samples = drops.size();
    if (drops.empty()) return out;
    const double m = static_cast<double>(drops.size());
    const double mean = std::accumulate(drops.begin(), drops.end(), 0.0) / m;
    out.mean_drop = mean;
    if (drops.size() > 1) {
        double ss = 0.0;
        for (double v : drops) ss += (v - mean) * (v - mean);
        out.confidence_halfwidth = kZ95 * std::sqrt(ss / (m - 1.0) / m);
    }
    return out;
}

DriftEstimate estimate_drift_at(const RunConfig& config, const PotentialKind& kind, const ValueVector& parent,
                                std::uint64_t samples) {
    if (samples < 1) throw DomainError("estimate_drift_at: samples must be >= 1");
    config.validate();
    Heuristic heuristic(config.algorithm, config.op, config.instance);
    Rng rng(config.seed);
    return drift_from(config, kind, heuristic, [&](Rng&) { return parent; }, samples, rng);
}

std::vector<DriftEstimate> estimate_drift(const RunConfig& config, const PotentialKind& kind,
                                          const DriftConditioning& conditioning, std::uint64_t samples,
                                          unsigned threads) {
    if (samples < 100) throw DomainError("estimate_drift: samples must be >= 100");
    config.validate();

    if (conditioning.mode() == DriftConditioning::Mode::Planted) {
        const auto levels = conditioning.levels();
        std::vector<DriftEstimate> out(levels.size());
        parallel_for(levels.size(), threads, [&](std::size_t li) {
            Heuristic heuristic(config.algorithm, config.op, config.instance);
            Rng rng(sub_seed(config.seed, li));
            const std::int64_t level = levels[li];
            if (kind.tag() == PotentialKind::Tag::ExponentialWeight) {
                const ValueVector fixed = plant_state(kind, config.instance, level, rng);
                out[li] = drift_from(config, kind, heuristic, [&](Rng&) { return fixed; }, samples, rng);
            } else {
                out[li] = drift_from(
                    config, kind, heuristic, [&](Rng& g) { return plant_state(kind, config.instance, level, g); },
                    samples, rng);
            }
        });
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.level < b.level; });
        return out;
    }

    std::map<double, std::vector<double>> buckets;
    Heuristic heuristic(config.algorithm, config.op, config.instance);
    std::uint64_t collected = 0;
    // Starts at the optimum contribute nothing; give up after a long streak of them.
    constexpr std::uint64_t kMaxIdleReplicates = 10'000;
    std::uint64_t idle = 0;
    for (std::uint64_t replicate = 0; collected < samples && idle < kMaxIdleReplicates; ++replicate) {
        Rng rng(sub_seed(config.seed, replicate));
        SearchState state = heuristic.make_state(config.initial_point ? *config.initial_point
                                                                      : sample_uniform_point(config.instance.params(), rng));
        idle = state.f == 0 ? idle + 1 : 0;
        double g = potential(kind, config.instance, state.x);
        for (std::uint64_t t = 0; state.f > 0 && t < config.iteration_cap && collected < samples; ++t) {
            heuristic.advance(state, rng);
            const double next = potential(kind, config.instance, state.x);
            buckets[g].push_back(g - next);
            g = next;
            ++collected;
        }
    }
    std::vector<DriftEstimate> out;
    out.reserve(buckets.size());
    for (const auto& [level, drops] : buckets) out.push_back(summarize_drops(level, drops));
    return out;
}

void DriftBoundInputs::validate() const {
    if (!(s_min > 0.0)) throw DomainError("s_min must be > 0");
    if (!(s0 >= s_min)) throw DomainError("s0 must be >= s_min");
    if (!(s_aim >= 1.0)) throw DomainError("s_aim must be >= 1");
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
}

double multiplicative_drift_upper_bound(const DriftBoundInputs& in) {
    in.validate();
    return (std::log(in.s0 / in.s_min) + 1.0) / in.delta;
}

MultiplicativeLowerBound multiplicative_drift_lower_bound(const DriftBoundInputs& in) {
    in.validate();
    if (in.s_aim > in.s0) throw DomainError("s_aim must not exceed s0");
    const double base = (std::log(in.s0) - std::log(in.s_aim)) / in.delta;
    return {base * (1.0 - in.beta) / (1.0 + in.beta), base * (1.0 - 2.0 * in.beta)};
}

double multiplicative_drift_lower_bound_levelwise(std::span<const double> levels,
                                                  const std::function<double(double)>& delta_of, double s0,
                                                  double s_aim, double s_cut, double beta) {
    if (!(s_aim >= 1.0)) throw DomainError("s_aim must be >= 1");
    if (!(s_aim < s_cut && s_cut <= s0)) throw DomainError("cut point must satisfy s_aim < s_cut <= s0");
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
    double delta_max = 0.0;
    bool any = false;
    for (double s : levels) {
        if (s <= s_aim || s > s_cut) continue;
        const double d = delta_of(s);
        if (!(d > 0.0 && d <= 1.0)) throw DomainError("delta(s) must lie in (0, 1]");
        delta_max = std::max(delta_max, d);
        any = true;
    }
    if (!any) throw DomainError("no level in (s_aim, s_cut]");
    return (std::log(s_cut) - std::log(s_aim)) / delta_max * (1.0 - 2.0 * beta);
}

namespace {

struct SimpsonPanel {
    double a, b, fa, fm, fb, whole;
};

double simpson_recurse(const std::function<double(double)>& f, const SimpsonPanel& p, double eps, int depth) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
    const double right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
    const double delta = left + right - p.whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return simpson_recurse(f, {p.a, m, p.fa, flm, p.fm, left}, eps / 2.0, depth - 1) +
           simpson_recurse(f, {m, p.b, p.fm, frm, p.fb, right}, eps / 2.0, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // Uniform initial split.
    constexpr int kPanels = 16;
    const double width = (b - a) / kPanels;
    auto pass = [&](double scale) {
        double total = 0.0;
        double left = a;
        double f_left = fa;
        for (int k = 0; k < kPanels; ++k) {
            const double right = k + 1 == kPanels ? b : a + width * (k + 1);
            const double f_right = k + 1 == kPanels ? fb : f(right);
            const double mid = 0.5 * (left + right);
            const double f_mid = f(mid);
            const double panel = (right - left) / 6.0 * (f_left + 4.0 * f_mid + f_right);
            total += simpson_recurse(f, {left, right, f_left, f_mid, f_right, panel}, 0.1 * rel_tol * scale / kPanels,
                                     48);
            left = right;
            f_left = f_right;
        }
        return total;
    };
    // Tolerance is relative to the integral; re-run while the scale exceeds
    // twice the result.
    double scale = std::abs(whole) > 0.0 ? std::abs(whole) : 1.0;
    double total = pass(scale);
    for (int round = 0; round < 8 && total != 0.0 && std::abs(total) * 2.0 < scale; ++round) {
        scale = std::abs(total);
        total = pass(scale);
    }
    return total;
}

double variable_drift_upper_bound(double s0, double x_min, const std::function<double(double)>& h, double rel_tol) {
    if (!(x_min > 0.0)) throw DomainError("x_min must be > 0");
    if (!(x_min <= s0)) throw DomainError("x_min must not exceed s0");
    auto checked = [&](double s) {
        const double v = h(s);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError("drift function h must be positive; h(" + std::to_string(s) + ") = " + std::to_string(v));
        }
        return v;
    };
    const double head = x_min / checked(x_min);
    return head + integrate([&](double s) { return 1.0 / checked(s); }, x_min, s0, rel_tol);
}

double harmonic_number(std::int64_t k) {
    if (k < 1) throw DomainError("harmonic_number: k must be >= 1");
    constexpr std::int64_t kExactLimit = 1'000'000;
    if (k <= kExactLimit) {
        double sum = 0.0;
        for (std::int64_t i = k; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
        return sum;
    }
    const double x = static_cast<double>(k);
    const double inv2 = 1.0 / (x * x);
    return std::log(x) + std::numbers::egamma + 0.5 / x - inv2 / 12.0 + inv2 * inv2 / 120.0;
}

} // namespace rvea

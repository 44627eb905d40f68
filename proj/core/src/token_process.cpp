#include "rvea/token_process.hpp"

#include <cmath>
#include <numeric>

#include "rvea/discrete_table.hpp"
#include "rvea/errors.hpp"
#include "rvea/parallel.hpp"

namespace rvea {

StepSizeLaw StepSizeLaw::explicit_law(std::vector<double> probabilities) {
    if (probabilities.empty()) throw DomainError("explicit step-size law is empty");
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("step-size probabilities must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("step-size probabilities must sum to 1");
    return StepSizeLaw(Kind::Explicit, std::move(probabilities));
}

std::string_view StepSizeLaw::name() const noexcept {
    switch (kind_) {
    case Kind::Unit: return "unit";
    case Kind::Uniform: return "uniform";
    case Kind::Harmonic: return "harmonic";
    case Kind::Explicit: return "explicit";
    }
    return "?";
}

std::vector<double> StepSizeLaw::probabilities(std::int64_t r) const {
    if (r < 1) throw DomainError("token state space needs r >= 1");
    const auto size = static_cast<std::size_t>(r);
    std::vector<double> p(size, 0.0);
    switch (kind_) {
    case Kind::Unit:
        p[0] = 1.0;
        break;
    case Kind::Uniform:
        std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(r));
        break;
    case Kind::Harmonic: {
        double total = 0.0;
        for (std::size_t d = size; d >= 1; --d) total += 1.0 / static_cast<double>(d);
        for (std::size_t d = 1; d <= size; ++d) p[d - 1] = 1.0 / static_cast<double>(d) / total;
        break;
    }
    case Kind::Explicit:
        if (explicit_.size() != size) {
            throw DomainError("explicit step-size law has " + std::to_string(explicit_.size()) +
                              " entries, expected r = " + std::to_string(r));
        }
        p = explicit_;
        break;
    }
    return p;
}

StepSizeLaw parse_step_size_law(std::string_view text) {
    if (text == "unit") return StepSizeLaw::unit();
    if (text == "uniform") return StepSizeLaw::uniform();
    if (text == "harmonic") return StepSizeLaw::harmonic();
    throw DomainError("unknown step-size law '" + std::string(text) + "' (expected unit|uniform|harmonic)");
}

namespace {

TokenRecord simulate(const TokenConfig& config, const CumulativeTable* table, Rng& rng) {
    const std::int64_t r = config.r;
    TokenRecord record;
    record.start = config.start ? *config.start
                                : static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(r + 1)));
    std::int64_t x = record.start;
    if (x == 0) {
        record.hitting_time = 0;
        return record;
    }
    for (std::uint64_t t = 1; t <= config.iteration_cap; ++t) {
        std::int64_t d = 1;
        switch (config.distribution.kind()) {
        case StepSizeLaw::Kind::Unit: break;
        case StepSizeLaw::Kind::Uniform:
            d = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(r))) + 1;
            break;
        default: d = static_cast<std::int64_t>(table->sample(rng)) + 1; break;
        }
        if (x >= d) x -= d;
        if (x == 0) {
            record.hitting_time = t;
            break;
        }
    }
    return record;
}

void validate(const TokenConfig& config) {
    if (config.r < 1) throw DomainError("token process needs r >= 1");
    if (config.iteration_cap == 0) throw DomainError("iteration_cap must be positive");
    if (config.start && (*config.start < 0 || *config.start > config.r)) {
        throw DomainError("token start must lie in [0, r]");
    }
}

std::optional<CumulativeTable> table_for(const TokenConfig& config) {
    const auto kind = config.distribution.kind();
    if (kind == StepSizeLaw::Kind::Unit || kind == StepSizeLaw::Kind::Uniform) return std::nullopt;
    const auto p = config.distribution.probabilities(config.r);
    return CumulativeTable(p);
}

} // namespace

TokenRecord token_run(const TokenConfig& config) {
    validate(config);
    const auto table = table_for(config);
    Rng rng(config.seed);
    return simulate(config, table ? &*table : nullptr, rng);
}

std::vector<TokenRecord> token_batch(const TokenConfig& config, std::size_t replicates, unsigned threads) {
    validate(config);
    const auto table = table_for(config);
    std::vector<TokenRecord> records(replicates);
    parallel_for(replicates, threads, [&](std::size_t k) {
        Rng rng(sub_seed(config.seed, k));
        records[k] = simulate(config, table ? &*table : nullptr, rng);
    });
    return records;
}

std::vector<double> token_expected_hitting_times(std::int64_t r, const StepSizeLaw& law) {
    if (r < 1) throw DomainError("token state space needs r >= 1");
    if (r > kMaxExactTokenR) {
        throw CapacityError("exact token solver supports r <= " + std::to_string(kMaxExactTokenR));
    }
    const auto p = law.probabilities(r);
    const auto size = static_cast<std::size_t>(r);
    std::vector<double> expected(size + 1, 0.0);
    double reachable = 0.0;  // P[d <= x]
    for (std::size_t x = 1; x <= size; ++x) {
        reachable += p[x - 1];
        if (!(reachable > 0.0)) {
            throw DivergenceError("state " + std::to_string(x) + " can never move: expected hitting time is infinite");
        }
        double acc = 1.0;
        for (std::size_t d = 1; d <= x; ++d) acc += p[d - 1] * expected[x - d];
        expected[x] = acc / reachable;
    }
    return expected;
}

double token_expected_hitting_time_exact(std::int64_t r, const StepSizeLaw& law) {
    const auto expected = token_expected_hitting_times(r, law);
    return std::accumulate(expected.begin(), expected.end(), 0.0) / static_cast<double>(expected.size());
}

} // namespace rvea

#include "rvea/potential.hpp"

#include <cmath>

#include "rvea/errors.hpp"
#include "rvea/format.hpp"

namespace rvea {

PotentialKind PotentialKind::exponential(double w) {
    if (!(w > 1.0 && w <= 2.0)) throw DomainError("exponential potential needs 1 < w <= 2");
    return PotentialKind(Tag::ExponentialWeight, w);
}

std::string PotentialKind::name() const {
    switch (tag_) {
    case Tag::HammingToTarget: return "hamming";
    case Tag::Fitness: return "fitness";
    case Tag::ExponentialWeight: {
        return "exp(w=" + format_general(weight_, 6) + ")";
    }
    }
    return "?";
}

PotentialKind parse_potential(std::string_view text, double weight) {
    if (text == "hamming") return PotentialKind::hamming();
    if (text == "fitness") return PotentialKind::fitness();
    if (text == "exp" || text == "exponential") return PotentialKind::exponential(weight);
    throw DomainError("unknown potential '" + std::string(text) + "' (expected hamming|fitness|exp)");
}

double potential(const PotentialKind& kind, const ProblemInstance& instance, const ValueVector& x) {
    if (!x.conforms(instance.params())) throw DomainError("potential: point does not conform to the instance");
    switch (kind.tag()) {
    case PotentialKind::Tag::HammingToTarget:
        return static_cast<double>(hamming_distance(x, instance.target()));
    case PotentialKind::Tag::Fitness:
        return static_cast<double>(fitness(instance, x));
    case PotentialKind::Tag::ExponentialWeight: {
        double g = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto d = instance.component_distance(i, x[i]);
            if (d > 0) g += std::pow(kind.weight(), static_cast<double>(d)) - 1.0;
        }
        return g;
    }
    }
    return 0.0;
}

} // namespace rvea

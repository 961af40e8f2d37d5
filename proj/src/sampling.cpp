#include <hahnfield/sampling.hpp>

#include <cstdlib>
#include <string>

namespace hahnfield {

Sampler::Sampler(ChainPtr chain, const ZWindow &w, std::uint64_t seed)
    : chain_(std::move(chain)), points_(chain_->points(w)), rng_(seed)
{
}

long Sampler::integer(long lo, long hi)
{
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng_);
}

Rational Sampler::positive_rational()
{
    Rational q(integer(1, 6), integer(1, 4));
    q.canonicalize();
    return q;
}

Rational Sampler::rational()
{
    Rational q = positive_rational();
    return coin() ? q : Rational(-q);
}

const ChainPoint &Sampler::point()
{
    return points_[static_cast<std::size_t>(integer(0, static_cast<long>(points_.size()) - 1))];
}

GroupElement Sampler::element(std::size_t max_terms)
{
    for (;;) {
        std::size_t k = static_cast<std::size_t>(integer(1, static_cast<long>(max_terms)));
        std::vector<GroupElement::Term> terms;
        for (std::size_t i = 0; i < k; ++i) {
            terms.emplace_back(point(), rational());
        }
        GroupElement g = GroupElement::from_terms(chain_, std::move(terms));
        if (!g.is_zero()) {
            return g;
        }
    }
}

GroupElement Sampler::positive_element(std::size_t max_terms)
{
    return abs(element(max_terms));
}

std::uint64_t seed_from_env(std::uint64_t fallback)
{
    const char *s = std::getenv("HAHNFIELD_SEED");
    if (s == nullptr || *s == '\0') {
        return fallback;
    }
    try {
        return std::stoull(s);
    } catch (...) {
        return fallback;
    }
}

} // namespace hahnfield

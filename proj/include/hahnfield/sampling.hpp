#pragma once

#include <hahnfield/group.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace hahnfield {

// Seeded generator of small random rationals, points and group elements
// supported on the windowed points of a chain.
class Sampler
{
public:
    Sampler(ChainPtr chain, const ZWindow &w, std::uint64_t seed);

    const ChainPtr &chain() const { return chain_; }
    std::mt19937_64 &engine() { return rng_; }

    long integer(long lo, long hi);
    bool coin() { return integer(0, 1) == 1; }
    Rational rational();
    Rational positive_rational();
    const ChainPoint &point();
    const std::vector<ChainPoint> &points() const { return points_; }

    // Nonzero element with 1..max_terms support points.
    GroupElement element(std::size_t max_terms = 3);
    GroupElement positive_element(std::size_t max_terms = 3);

private:
    ChainPtr chain_;
    std::vector<ChainPoint> points_;
    std::mt19937_64 rng_;
};

std::uint64_t seed_from_env(std::uint64_t fallback);

} // namespace hahnfield

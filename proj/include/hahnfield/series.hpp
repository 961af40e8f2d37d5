#pragma once

#include <hahnfield/group.hpp>
#include <hahnfield/sampling.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hahnfield {

// Finite-support element of k((G)) with k = Q. Terms ascend by exponent.
class Series
{
public:
    using Term = std::pair<GroupElement, Rational>;

    explicit Series(ChainPtr chain);

    static Series monomial(const GroupElement &g, const Rational &coef = 1);
    static Series constant(ChainPtr chain, const Rational &c);
    static Series from_terms(ChainPtr chain, std::vector<Term> terms);

    const ChainPtr &chain() const { return chain_; }
    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Least exponent; nullopt stands for Infinity.
    std::optional<GroupElement> valuation() const;
    const Term &leading_term() const;
    Rational coefficient(const GroupElement &g) const;
    int sign() const;

    Series operator-() const;
    Series scaled(const Rational &k) const;
    Series shifted(const GroupElement &g) const;

    // Terms with exponent < bound.
    Series below(const GroupElement &bound) const;

    std::string to_string() const;

    friend Series operator+(const Series &a, const Series &b);
    friend Series operator-(const Series &a, const Series &b);
    friend Series operator*(const Series &a, const Series &b);
    friend bool operator==(const Series &a, const Series &b);

private:
    ChainPtr chain_;
    std::vector<Term> terms_;
};

inline bool operator!=(const Series &a, const Series &b) { return !(a == b); }

int cmp_series(const Series &a, const Series &b);

bool in_valuation_ring(const Series &a);
bool in_maximal_ideal(const Series &a);

struct TruncationUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A window onto an infinite-support element: every omitted exponent is >= bound.
struct TruncatedSeries {
    Series terms;
    GroupElement bound;
};

TruncatedSeries invert_truncated(const Series &a, const GroupElement &bound);

// Random series with 1..max_terms terms, exponents drawn from the sampler.
Series random_series(Sampler &s, std::size_t max_terms = 4);

} // namespace hahnfield

#pragma once

#include <hahnfield/chain.hpp>

#include <string>
#include <utility>
#include <vector>

namespace hahnfield {

// Finitely supported element of the Hahn product of copies of Q over a chain.
// Terms are kept in ascending chain order with nonzero coefficients.
class GroupElement
{
public:
    using Term = std::pair<ChainPoint, Rational>;

    explicit GroupElement(ChainPtr chain);

    static GroupElement unit(ChainPtr chain, const ChainPoint &p, const Rational &coef = 1);
    static GroupElement from_terms(ChainPtr chain, std::vector<Term> terms);

    const ChainPtr &chain() const { return chain_; }
    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ExtendedPoint valuation() const;
    Rational coefficient(const ChainPoint &p) const;
    const Rational &leading_coefficient() const;
    int sign() const;

    GroupElement operator-() const;
    GroupElement scaled(const Rational &k) const;

    std::string to_string() const;

    friend GroupElement operator+(const GroupElement &a, const GroupElement &b);
    friend GroupElement operator-(const GroupElement &a, const GroupElement &b);
    friend bool operator==(const GroupElement &a, const GroupElement &b);

private:
    ChainPtr chain_;
    std::vector<Term> terms_;
};

inline bool operator!=(const GroupElement &a, const GroupElement &b) { return !(a == b); }

inline ExtendedPoint v_nat(const GroupElement &g) { return g.valuation(); }

int cmp_group(const GroupElement &a, const GroupElement &b);

inline bool operator<(const GroupElement &a, const GroupElement &b) { return cmp_group(a, b) < 0; }
inline bool operator<=(const GroupElement &a, const GroupElement &b) { return cmp_group(a, b) <= 0; }
inline bool operator>(const GroupElement &a, const GroupElement &b) { return cmp_group(a, b) > 0; }
inline bool operator>=(const GroupElement &a, const GroupElement &b) { return cmp_group(a, b) >= 0; }

bool arch_equiv(const GroupElement &a, const GroupElement &b);
GroupElement abs(const GroupElement &g);

struct GroupLess {
    bool operator()(const GroupElement &a, const GroupElement &b) const { return cmp_group(a, b) < 0; }
};

class ConvexSubgroup
{
public:
    explicit ConvexSubgroup(FinalSegment seg) : seg_(std::move(seg)) {}

    const FinalSegment &segment() const { return seg_; }
    bool contains(const GroupElement &g) const;

private:
    FinalSegment seg_;
};

} // namespace hahnfield

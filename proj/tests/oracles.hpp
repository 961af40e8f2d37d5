#pragma once

#include <hahnfield/couple.hpp>
#include <hahnfield/series.hpp>

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

// Brute-force reference computations used only by the tests.
namespace oracle {

using namespace hahnfield;

inline ChainPtr q_chain(std::size_t k)
{
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= k; ++i) {
        labels.push_back("q" + std::to_string(i));
    }
    return Chain::product(labels);
}

// Sort key of a point: slices of later labels lie below earlier ones.
inline std::tuple<long, long> key(const Chain &chain, const ChainPoint &p)
{
    if (p.kind == ChainPoint::Kind::Finite) {
        return {0, static_cast<long>(p.index)};
    }
    return {static_cast<long>(chain.size() - p.index), p.n.get_si()};
}

inline int compare_points(const Chain &chain, const ChainPoint &a, const ChainPoint &b)
{
    auto ka = key(chain, a);
    auto kb = key(chain, b);
    if (std::get<0>(ka) != std::get<0>(kb)) {
        return std::get<0>(ka) > std::get<0>(kb) ? 1 : -1;
    }
    return std::get<1>(ka) < std::get<1>(kb) ? -1 : std::get<1>(ka) > std::get<1>(kb) ? 1 : 0;
}

// Every point of the chain with n in [lo, hi], listed in an arbitrary order.
inline std::vector<ChainPoint> grid(const Chain &chain, long lo, long hi)
{
    std::vector<ChainPoint> out;
    if (chain.kind() == Chain::Kind::Finite) {
        for (std::size_t i = 0; i < chain.size(); ++i) {
            out.push_back(ChainPoint::finite(i));
        }
        return out;
    }
    for (std::size_t q = 0; q < chain.size(); ++q) {
        for (long n = lo; n <= hi; ++n) {
            out.push_back(ChainPoint::product(q, n));
        }
    }
    return out;
}

// Sign of g - h from dense coefficient vectors over the sorted grid.
inline int compare_groups(const GroupElement &g, const GroupElement &h, long lo, long hi)
{
    const Chain &chain = *g.chain();
    auto pts = grid(chain, lo, hi);
    std::sort(pts.begin(), pts.end(),
              [&](const ChainPoint &a, const ChainPoint &b) { return compare_points(chain, a, b) < 0; });
    for (const auto &p : pts) {
        Rational d = g.coefficient(p) - h.coefficient(p);
        if (d != 0) {
            return sgn(d);
        }
    }
    return 0;
}

// Final segments whose tail cuts lie in [lo, hi], found as upward-closed
// subsets of the padded grid where no slice holds only its top padding point.
inline std::size_t count_final_segments(const Chain &chain, long lo, long hi)
{
    auto pts = grid(chain, lo - 1, hi + 1);
    std::sort(pts.begin(), pts.end(),
              [&](const ChainPoint &a, const ChainPoint &b) { return compare_points(chain, a, b) < 0; });
    std::size_t count = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << pts.size()); ++mask) {
        auto in = [&](std::size_t i) { return ((mask >> i) & 1u) != 0; };
        bool ok = true;
        for (std::size_t i = 0; i < pts.size() && ok; ++i) {
            for (std::size_t j = 0; j < pts.size() && ok; ++j) {
                if (in(i) && !in(j) && compare_points(chain, pts[i], pts[j]) < 0) {
                    ok = false;
                }
            }
        }
        if (ok && chain.kind() == Chain::Kind::Product) {
            for (std::size_t q = 0; q < chain.size() && ok; ++q) {
                std::size_t members = 0;
                bool top_in = false;
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    if (pts[i].index == q && in(i)) {
                        ++members;
                        top_in = top_in || pts[i].n == hi + 1;
                    }
                }
                ok = !(members == 1 && top_in);
            }
        }
        count += ok ? 1 : 0;
    }
    return count;
}

// Cut class from the defining property: v(psi(g)) > v(g) exactly for the
// classes below it. nullopt if the property fails to split the grid.
inline std::optional<ExtendedPoint> cut_class_by_definition(const AsymptoticCouple &c, long lo, long hi)
{
    const Chain &chain = *c.chain();
    auto pts = grid(chain, lo, hi);
    std::sort(pts.begin(), pts.end(),
              [&](const ChainPoint &a, const ChainPoint &b) { return compare_points(chain, a, b) < 0; });
    std::optional<ChainPoint> first_fail;
    for (const auto &p : pts) {
        ExtendedPoint vp = c.psi_hat(p).valuation();
        bool above = vp.is_infinity() || compare_points(chain, vp.point(), p) > 0;
        if (!above && !first_fail) {
            first_fail = p;
        }
        if (above && first_fail) {
            return std::nullopt;
        }
    }
    return first_fail ? ExtendedPoint(*first_fail) : ExtendedPoint::infinity();
}

// Some omega_psi iterate of a is <= some iterate of b, with at most `bound`
// steps on each side.
inline bool qo_bounded(const AsymptoticCouple &c, const ChainPoint &a, const ChainPoint &b, int bound = 8)
{
    std::vector<ExtendedPoint> ia{a}, ib{b};
    for (int k = 0; k < bound; ++k) {
        if (!ia.back().is_infinity()) {
            ia.push_back(c.omega_psi(ia.back().point()));
        }
        if (!ib.back().is_infinity()) {
            ib.push_back(c.omega_psi(ib.back().point()));
        }
    }
    for (const auto &x : ia) {
        for (const auto &y : ib) {
            if (x <= y) {
                return true;
            }
        }
    }
    return false;
}

// Same relation on group elements by iterating psi itself.
inline bool qo_psi_bounded(const AsymptoticCouple &c, const GroupElement &g, const GroupElement &h, int bound = 8)
{
    std::vector<GroupElement> ig{g}, ih{h};
    for (int k = 0; k < bound; ++k) {
        if (!ig.back().is_zero()) {
            ig.push_back(c.psi(ig.back()));
        }
        if (!ih.back().is_zero()) {
            ih.push_back(c.psi(ih.back()));
        }
    }
    for (const auto &x : ig) {
        for (const auto &y : ih) {
            if (cmp_group(x, y) <= 0) {
                return true;
            }
        }
    }
    return false;
}

// Schoolbook product with linear-scan accumulation.
inline std::vector<std::pair<GroupElement, Rational>> naive_product(const Series &a, const Series &b)
{
    std::vector<std::pair<GroupElement, Rational>> acc;
    for (const auto &x : a.terms()) {
        for (const auto &y : b.terms()) {
            GroupElement e = x.first + y.first;
            auto it = std::find_if(acc.begin(), acc.end(), [&](const auto &t) { return t.first == e; });
            if (it == acc.end()) {
                acc.emplace_back(e, x.second * y.second);
            } else {
                it->second += x.second * y.second;
            }
        }
    }
    acc.erase(std::remove_if(acc.begin(), acc.end(), [](const auto &t) { return t.second == 0; }), acc.end());
    return acc;
}

inline bool same_terms(const Series &s, const std::vector<std::pair<GroupElement, Rational>> &terms)
{
    if (s.terms().size() != terms.size()) {
        return false;
    }
    for (const auto &t : terms) {
        if (s.coefficient(t.first) != t.second) {
            return false;
        }
    }
    return true;
}

} // namespace oracle

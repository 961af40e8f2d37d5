#include <hahnfield/group.hpp>

#include <algorithm>
#include <stdexcept>

namespace hahnfield {

GroupElement::GroupElement(ChainPtr chain) : chain_(std::move(chain))
{
    if (!chain_) {
        throw std::invalid_argument("null chain");
    }
}

GroupElement GroupElement::unit(ChainPtr chain, const ChainPoint &p, const Rational &coef)
{
    chain->require(p);
    GroupElement g(std::move(chain));
    if (coef != 0) {
        g.terms_.emplace_back(p, coef);
    }
    return g;
}

GroupElement GroupElement::from_terms(ChainPtr chain, std::vector<Term> terms)
{
    for (const auto &t : terms) {
        chain->require(t.first);
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.first < b.first; });
    GroupElement g(std::move(chain));
    for (auto &t : terms) {
        if (!g.terms_.empty() && g.terms_.back().first == t.first) {
            g.terms_.back().second += t.second;
            if (g.terms_.back().second == 0) {
                g.terms_.pop_back();
            }
        } else if (t.second != 0) {
            g.terms_.push_back(std::move(t));
        }
    }
    return g;
}

ExtendedPoint GroupElement::valuation() const
{
    if (terms_.empty()) {
        return ExtendedPoint::infinity();
    }
    return terms_.front().first;
}

Rational GroupElement::coefficient(const ChainPoint &p) const
{
    for (const auto &t : terms_) {
        if (t.first == p) {
            return t.second;
        }
    }
    return 0;
}

const Rational &GroupElement::leading_coefficient() const
{
    if (terms_.empty()) {
        throw std::domain_error("zero has no leading coefficient");
    }
    return terms_.front().second;
}

int GroupElement::sign() const
{
    return terms_.empty() ? 0 : sgn(terms_.front().second);
}

GroupElement GroupElement::operator-() const
{
    GroupElement g(*this);
    for (auto &t : g.terms_) {
        t.second = -t.second;
    }
    return g;
}

GroupElement GroupElement::scaled(const Rational &k) const
{
    GroupElement g(chain_);
    if (k == 0) {
        return g;
    }
    g.terms_ = terms_;
    for (auto &t : g.terms_) {
        t.second *= k;
    }
    return g;
}

GroupElement operator+(const GroupElement &a, const GroupElement &b)
{
    require_same_chain(a.chain_, b.chain_);
    GroupElement r(a.chain_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        int c = (i == a.terms_.end()) ? 1 : (j == b.terms_.end()) ? -1 : compare(i->first, j->first);
        if (c < 0) {
            r.terms_.push_back(*i++);
        } else if (c > 0) {
            r.terms_.push_back(*j++);
        } else {
            Rational s = i->second + j->second;
            if (s != 0) {
                r.terms_.emplace_back(i->first, std::move(s));
            }
            ++i;
            ++j;
        }
    }
    return r;
}

GroupElement operator-(const GroupElement &a, const GroupElement &b) { return a + (-b); }

bool operator==(const GroupElement &a, const GroupElement &b)
{
    if (!a.chain_->same_as(*b.chain_) || a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) {
            return false;
        }
    }
    return true;
}

std::string GroupElement::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) {
            out += " + ";
        }
        out += hahnfield::to_string(terms_[i].second) + "@" + chain_->format(terms_[i].first);
    }
    return out;
}

int cmp_group(const GroupElement &a, const GroupElement &b)
{
    require_same_chain(a.chain(), b.chain());
    auto i = a.terms().begin();
    auto j = b.terms().begin();
    while (i != a.terms().end() || j != b.terms().end()) {
        int c = (i == a.terms().end()) ? 1 : (j == b.terms().end()) ? -1 : compare(i->first, j->first);
        if (c < 0) {
            return sgn(i->second);
        }
        if (c > 0) {
            return -sgn(j->second);
        }
        int d = cmp(i->second, j->second);
        if (d != 0) {
            return d < 0 ? -1 : 1;
        }
        ++i;
        ++j;
    }
    return 0;
}

bool arch_equiv(const GroupElement &a, const GroupElement &b)
{
    require_same_chain(a.chain(), b.chain());
    return a.valuation() == b.valuation();
}

GroupElement abs(const GroupElement &g) { return g.sign() < 0 ? -g : g; }

bool ConvexSubgroup::contains(const GroupElement &g) const
{
    require_same_chain(seg_.chain(), g.chain());
    for (const auto &t : g.terms()) {
        if (!seg_.contains(t.first)) {
            return false;
        }
    }
    return true;
}

} // namespace hahnfield

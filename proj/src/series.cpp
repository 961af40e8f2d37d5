#include <hahnfield/series.hpp>

#include <algorithm>
#include <map>

namespace hahnfield {

Series::Series(ChainPtr chain) : chain_(std::move(chain)) {}

Series Series::monomial(const GroupElement &g, const Rational &coef)
{
    Series s(g.chain());
    if (coef != 0) {
        s.terms_.emplace_back(g, coef);
    }
    return s;
}

Series Series::constant(ChainPtr chain, const Rational &c)
{
    GroupElement zero(chain);
    return monomial(zero, c);
}

Series Series::from_terms(ChainPtr chain, std::vector<Term> terms)
{
    std::map<GroupElement, Rational, GroupLess> acc;
    for (auto &t : terms) {
        require_same_chain(chain, t.first.chain());
        auto [it, fresh] = acc.try_emplace(t.first, 0);
        it->second += t.second;
    }
    Series s(std::move(chain));
    for (auto &kv : acc) {
        if (kv.second != 0) {
            s.terms_.emplace_back(kv.first, kv.second);
        }
    }
    return s;
}

std::optional<GroupElement> Series::valuation() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.front().first;
}

const Series::Term &Series::leading_term() const
{
    if (terms_.empty()) {
        throw std::domain_error("zero has no leading term");
    }
    return terms_.front();
}

Rational Series::coefficient(const GroupElement &g) const
{
    for (const auto &t : terms_) {
        if (t.first == g) {
            return t.second;
        }
    }
    return 0;
}

int Series::sign() const { return terms_.empty() ? 0 : sgn(terms_.front().second); }

Series Series::operator-() const { return scaled(-1); }

Series Series::scaled(const Rational &k) const
{
    Series s(chain_);
    if (k == 0) {
        return s;
    }
    s.terms_ = terms_;
    for (auto &t : s.terms_) {
        t.second *= k;
    }
    return s;
}

Series Series::shifted(const GroupElement &g) const
{
    require_same_chain(chain_, g.chain());
    Series s(chain_);
    s.terms_.reserve(terms_.size());
    for (const auto &t : terms_) {
        s.terms_.emplace_back(t.first + g, t.second);
    }
    return s;
}

Series Series::below(const GroupElement &bound) const
{
    Series s(chain_);
    for (const auto &t : terms_) {
        if (!(t.first < bound)) {
            break;
        }
        s.terms_.push_back(t);
    }
    return s;
}

std::string Series::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) {
            out += " + ";
        }
        out += hahnfield::to_string(terms_[i].second) + "*t{" + terms_[i].first.to_string() + "}";
    }
    return out;
}

Series operator+(const Series &a, const Series &b)
{
    require_same_chain(a.chain_, b.chain_);
    Series r(a.chain_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        int c = (i == a.terms_.end()) ? 1 : (j == b.terms_.end()) ? -1 : cmp_group(i->first, j->first);
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

Series operator-(const Series &a, const Series &b) { return a + (-b); }

Series operator*(const Series &a, const Series &b)
{
    require_same_chain(a.chain_, b.chain_);
    std::map<GroupElement, Rational, GroupLess> acc;
    for (const auto &x : a.terms_) {
        for (const auto &y : b.terms_) {
            auto [it, fresh] = acc.try_emplace(x.first + y.first, 0);
            it->second += x.second * y.second;
        }
    }
    Series r(a.chain_);
    for (auto &kv : acc) {
        if (kv.second != 0) {
            r.terms_.emplace_back(kv.first, kv.second);
        }
    }
    return r;
}

bool operator==(const Series &a, const Series &b)
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

int cmp_series(const Series &a, const Series &b) { return (a - b).sign(); }

bool in_valuation_ring(const Series &a) { return a.is_zero() || a.valuation()->sign() >= 0; }

bool in_maximal_ideal(const Series &a) { return a.is_zero() || a.valuation()->sign() > 0; }

namespace {

// Smallest k >= 1 with k*e >= x, for e > 0.
std::optional<long> multiple_reaching(const GroupElement &e, const GroupElement &x)
{
    if (x.sign() <= 0) {
        return 1;
    }
    ExtendedPoint ve = e.valuation();
    ExtendedPoint vx = x.valuation();
    if (vx < ve) {
        return std::nullopt;
    }
    if (vx > ve) {
        return 1;
    }
    Rational ratio = x.leading_coefficient() / e.leading_coefficient();
    mpz_class k;
    mpz_cdiv_q(k.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    if (k < 1) {
        k = 1;
    }
    while (e.scaled(Rational(k)) < x) {
        k += 1;
    }
    if (!k.fits_slong_p()) {
        return std::nullopt;
    }
    return k.get_si();
}

} // namespace

TruncatedSeries invert_truncated(const Series &a, const GroupElement &bound)
{
    if (a.is_zero()) {
        throw std::domain_error("zero has no inverse");
    }
    require_same_chain(a.chain(), bound.chain());
    const auto &[g, c] = a.leading_term();
    if (!(bound > -g)) {
        throw std::invalid_argument("bound must exceed -v(a)");
    }
    const ChainPtr &chain = a.chain();
    Series one = Series::constant(chain, 1);
    Series eps = a.shifted(-g).scaled(1 / c) - one;
    const GroupElement x = bound + g;
    Series sum = one;
    if (!eps.is_zero()) {
        const GroupElement e = *eps.valuation();
        auto k = multiple_reaching(e, x);
        if (!k) {
            throw TruncationUnreachable("multiples of v(eps) = " + e.to_string() + " never reach " + x.to_string());
        }
        Series neg = -eps;
        Series power = one;
        for (long i = 1; i < *k; ++i) {
            power = (power * neg).below(x);
            if (power.is_zero()) {
                break;
            }
            sum = sum + power;
        }
    }
    Series result = sum.shifted(-g).scaled(1 / c).below(bound);
    Series check = (a * result - one).below(x);
    if (!check.is_zero()) {
        throw std::logic_error("truncated inverse failed its own check");
    }
    return {result, bound};
}

Series random_series(Sampler &s, std::size_t max_terms)
{
    std::size_t k = static_cast<std::size_t>(s.integer(1, static_cast<long>(max_terms)));
    std::vector<Series::Term> terms;
    for (std::size_t i = 0; i < k; ++i) {
        GroupElement g = s.integer(0, 4) == 0 ? GroupElement(s.chain()) : s.element();
        terms.emplace_back(std::move(g), s.rational());
    }
    Series r = Series::from_terms(s.chain(), std::move(terms));
    return r.is_zero() ? Series::constant(s.chain(), 1) : r;
}

} // namespace hahnfield

#include <hahnfield/couple.hpp>
#include <hahnfield/sampling.hpp>

#include <algorithm>

namespace hahnfield {

AsymptoticCouple AsymptoticCouple::from_shift(ChainPtr chain, GroupElement offset)
{
    require_same_chain(chain, offset.chain());
    return AsymptoticCouple(std::move(chain), std::move(offset));
}

AsymptoticCouple AsymptoticCouple::from_table(ChainPtr chain, std::vector<GroupElement> values)
{
    if (chain->kind() != Chain::Kind::Finite) {
        throw std::invalid_argument("class tables are supported on finite chains only");
    }
    if (values.size() != chain->size()) {
        throw std::invalid_argument("one table value per class expected");
    }
    for (const auto &v : values) {
        require_same_chain(chain, v.chain());
    }
    AsymptoticCouple c(chain, GroupElement(chain));
    c.table_ = std::move(values);
    return c;
}

GroupElement AsymptoticCouple::sigma0(const ChainPoint &p) const
{
    ExtendedPoint w = chain_->omega(p);
    if (w.is_infinity()) {
        return GroupElement(chain_);
    }
    return GroupElement::unit(chain_, w.point(), -1);
}

GroupElement AsymptoticCouple::psi_hat(const ChainPoint &p) const
{
    if (table_) {
        chain_->require(p);
        return (*table_)[p.index];
    }
    return sigma0(p) + offset_;
}

ExtendedPoint AsymptoticCouple::omega_psi(const ChainPoint &p) const { return psi_hat(p).valuation(); }

GroupElement AsymptoticCouple::psi(const GroupElement &g) const
{
    require_same_chain(chain_, g.chain());
    if (g.is_zero()) {
        throw DomainError("psi is undefined at 0");
    }
    return psi_hat(g.valuation().point());
}

GroupElement AsymptoticCouple::dg(const GroupElement &g) const { return psi(g) + g; }

AsymptoticCouple AsymptoticCouple::translated(const GroupElement &x) const
{
    require_same_chain(chain_, x.chain());
    AsymptoticCouple c(*this);
    if (c.table_) {
        for (auto &v : *c.table_) {
            v = v + x;
        }
    } else {
        c.offset_ = c.offset_ + x;
    }
    return c;
}

AsymptoticCouple couple_from_shift(ChainPtr chain, const GroupElement &offset)
{
    return AsymptoticCouple::from_shift(std::move(chain), offset);
}

AsymptoticCouple couple_from_shift(ChainPtr chain)
{
    GroupElement zero(chain);
    return AsymptoticCouple::from_shift(std::move(chain), std::move(zero));
}

GroupElement psi_apply(const AsymptoticCouple &c, const GroupElement &g) { return c.psi(g); }

GroupElement dg_apply(const AsymptoticCouple &c, const GroupElement &g) { return c.dg(g); }

namespace {

Json pair_json(const GroupElement &g, const GroupElement &h)
{
    return Json{{"g", g.to_string()}, {"h", h.to_string()}};
}

const GroupElement &min_of(const GroupElement &a, const GroupElement &b) { return a <= b ? a : b; }

} // namespace

std::vector<CheckReport> check_axioms(const AsymptoticCouple &c, const AxiomBudget &budget)
{
    const ChainPtr &chain = c.chain();
    std::vector<GroupElement> reps;
    for (const auto &p : chain->points(budget.window, 1)) {
        reps.push_back(GroupElement::unit(chain, p, 1));
        reps.push_back(GroupElement::unit(chain, p, -1));
    }
    Sampler s(chain, budget.window, budget.seed);
    std::vector<std::pair<GroupElement, GroupElement>> random_pairs;
    std::vector<GroupElement> singles = reps;
    for (std::size_t i = 0; i < budget.random_samples; ++i) {
        GroupElement g = s.element();
        GroupElement h = s.coin() ? s.element() : g.scaled(s.rational()) + s.element();
        singles.push_back(g);
        random_pairs.emplace_back(std::move(g), std::move(h));
    }
    const std::size_t r = reps.size();
    const std::size_t npairs = r * r + random_pairs.size();
    auto pair_at = [&](std::size_t i) -> std::pair<const GroupElement &, const GroupElement &> {
        if (i < r * r) {
            return {reps[i / r], reps[i % r]};
        }
        const auto &pr = random_pairs[i - r * r];
        return {pr.first, pr.second};
    };

    std::vector<CheckReport> out;
    auto run_pairs = [&](const char *name, auto fails) {
        CheckReport rep{name, npairs, true, std::nullopt, budget.seed};
        auto bad = first_failure_index(
            npairs,
            [&](std::size_t i) {
                auto [g, h] = pair_at(i);
                return fails(g, h);
            },
            budget.exec);
        if (bad) {
            auto [g, h] = pair_at(*bad);
            rep.pass = false;
            rep.counterexample = pair_json(g, h);
        }
        out.push_back(std::move(rep));
    };

    run_pairs("AC1", [&](const GroupElement &g, const GroupElement &h) {
        GroupElement s2 = g + h;
        if (s2.is_zero()) {
            return false;
        }
        GroupElement pg = c.psi(g);
        GroupElement ph = c.psi(h);
        return c.psi(s2) < min_of(pg, ph);
    });

    {
        static const int multipliers[] = {2, -1, -3, 7};
        CheckReport rep{"AC2", singles.size() * 4, true, std::nullopt, budget.seed};
        auto bad = first_failure_index(
            singles.size() * 4,
            [&](std::size_t i) {
                const GroupElement &g = singles[i / 4];
                return c.psi(g.scaled(multipliers[i % 4])) != c.psi(g);
            },
            budget.exec);
        if (bad) {
            rep.pass = false;
            rep.counterexample = Json{{"g", singles[*bad / 4].to_string()}, {"n", multipliers[*bad % 4]}};
        }
        out.push_back(std::move(rep));
    }

    run_pairs("AC3", [&](const GroupElement &g, const GroupElement &h) { return !(c.psi(g) < c.psi(h) + abs(h)); });

    run_pairs("ACH", [&](const GroupElement &g, const GroupElement &h) {
        const GroupElement &lo = g <= h ? g : h;
        const GroupElement &hi = g <= h ? h : g;
        if (hi.sign() >= 0) {
            return false;
        }
        return c.psi(lo) > c.psi(hi);
    });
    return out;
}

CutPointReport find_cut_point(const AsymptoticCouple &c)
{
    if (!c.is_shift()) {
        return find_cut_point_scan(c);
    }
    if (c.offset().is_zero()) {
        return {ExtendedPoint::infinity(), GroupElement(c.chain())};
    }
    return {c.offset().valuation(), c.offset()};
}

CutPointReport find_cut_point_scan(const AsymptoticCouple &c, const ZWindow &w)
{
    for (const auto &p : c.chain()->points(w, 1)) {
        if (c.omega_psi(p) == ExtendedPoint(p)) {
            return {p, c.psi_hat(p)};
        }
    }
    return {ExtendedPoint::infinity(), GroupElement(c.chain())};
}

std::optional<GroupElement> asymptotic_integral(const AsymptoticCouple &c, const GroupElement &h)
{
    require_same_chain(c.chain(), h.chain());
    const ChainPtr &chain = c.chain();
    if (c.is_shift() && c.offset().is_zero() && chain->kind() == Chain::Kind::Product && !h.is_zero()) {
        GroupElement g = h - c.psi_hat(h.valuation().point());
        if (!g.is_zero() && c.dg(g) == h) {
            return g;
        }
    }
    std::vector<ChainPoint> candidates;
    if (c.is_shift()) {
        for (const auto &t : h.terms()) {
            candidates.push_back(t.first);
        }
        for (const auto &t : c.offset().terms()) {
            candidates.push_back(t.first);
        }
    } else {
        candidates = chain->points(ZWindow{});
    }
    for (const auto &p : candidates) {
        GroupElement g = h - c.psi_hat(p);
        if (g.is_zero() || g.valuation() != ExtendedPoint(p)) {
            continue;
        }
        if (c.dg(g) == h) {
            return g;
        }
    }
    return std::nullopt;
}

const char *to_string(TrichotomyKind k)
{
    switch (k) {
    case TrichotomyKind::Gap:
        return "Gap";
    case TrichotomyKind::MaxPsi:
        return "MaxPsi";
    case TrichotomyKind::AsymptoticIntegration:
        return "AsymptoticIntegration";
    }
    return "?";
}

TrichotomyClass classify_trichotomy(const AsymptoticCouple &c, const AxiomBudget &budget)
{
    if (!c.is_shift()) {
        throw std::invalid_argument("trichotomy needs a shift-built couple");
    }
    const ChainPtr &chain = c.chain();
    const std::vector<ChainPoint> pts = chain->points(budget.window, 1);
    Sampler s(chain, budget.window, budget.seed);
    std::vector<GroupElement> positives;
    for (const auto &p : pts) {
        positives.push_back(GroupElement::unit(chain, p, 1));
    }
    for (std::size_t i = 0; i < budget.random_samples; ++i) {
        positives.push_back(s.positive_element());
    }

    TrichotomyClass out;
    const GroupElement &x = c.offset();
    if (asymptotic_integral(c, x)) {
        out.kind = TrichotomyKind::AsymptoticIntegration;
        CheckReport rt{"integral-roundtrip", positives.size(), true, std::nullopt, budget.seed};
        for (const auto &g : positives) {
            for (const GroupElement &t : {g, GroupElement(-g)}) {
                auto back = asymptotic_integral(c, c.dg(t));
                if (!back || *back != t) {
                    rt.pass = false;
                    rt.counterexample = Json{{"g", t.to_string()}};
                    break;
                }
            }
            if (!rt.pass) {
                break;
            }
        }
        out.certificates.push_back(std::move(rt));
        return out;
    }

    out.witness = x;
    CheckReport ni{"witness-not-integrable", positives.size() * 2, true, std::nullopt, budget.seed};
    for (const auto &g : positives) {
        for (const GroupElement &t : {g, GroupElement(-g)}) {
            if (c.dg(t) == x) {
                ni.pass = false;
                ni.counterexample = Json{{"g", t.to_string()}};
            }
        }
    }
    out.certificates.push_back(std::move(ni));

    bool attained = false;
    CheckReport below{"psi-below-witness", pts.size(), true, std::nullopt, budget.seed};
    for (const auto &p : pts) {
        GroupElement v = c.psi_hat(p);
        if (v == x) {
            attained = true;
        } else if (!(v < x) && below.pass) {
            below.pass = false;
            below.counterexample = Json{{"class", chain->format(p)}, {"psi", v.to_string()}};
        }
    }
    out.certificates.push_back(std::move(below));

    if (attained) {
        out.kind = TrichotomyKind::MaxPsi;
        out.certificates.push_back(CheckReport{"witness-in-psi", pts.size(), true, std::nullopt, budget.seed});
        return out;
    }
    out.kind = TrichotomyKind::Gap;
    CheckReport above{"witness-below-dg-of-positives", positives.size(), true, std::nullopt, budget.seed};
    for (const auto &g : positives) {
        if (!(x < c.dg(g))) {
            above.pass = false;
            above.counterexample = Json{{"g", g.to_string()}};
            break;
        }
    }
    out.certificates.push_back(std::move(above));
    return out;
}

GroupElement contraction_chi(const AsymptoticCouple &c, const GroupElement &g)
{
    if (g.is_zero()) {
        return g;
    }
    if (g.sign() > 0) {
        return -contraction_chi(c, -g);
    }
    auto r = asymptotic_integral(c, c.psi(g));
    if (!r) {
        throw NotIntegrableError("psi(g) has no asymptotic integral for g = " + g.to_string());
    }
    return *r;
}

std::optional<GroupElement> chi_hat(const AsymptoticCouple &c, const ChainPoint &p)
{
    return asymptotic_integral(c, c.psi_hat(p));
}

NegativeTranslate translate_to_negative(const AsymptoticCouple &c, const ZWindow &w)
{
    const ChainPtr &chain = c.chain();
    const std::vector<ChainPoint> pts = chain->points(w, 1);
    bool any_nonneg = false;
    bool any_pos = false;
    std::optional<ChainPoint> zero_class;
    for (const auto &p : pts) {
        int sg = c.psi_hat(p).sign();
        any_nonneg = any_nonneg || sg >= 0;
        any_pos = any_pos || sg > 0;
        if (sg == 0 && !zero_class) {
            zero_class = p;
        }
    }
    GroupElement x(chain);
    if (any_nonneg && !any_pos) {
        x = GroupElement::unit(chain, *zero_class, -1);
    } else if (any_pos) {
        CutPointReport cut = find_cut_point(c);
        if (cut.cut_class.is_infinity()) {
            throw std::logic_error("positive psi values without a fixpoint");
        }
        GroupElement fix = c.psi_hat(cut.cut_class.point());
        if (fix.sign() <= 0) {
            throw std::logic_error("fixpoint is not positive");
        }
        x = fix.scaled(-2);
    }
    NegativeTranslate out{c.translated(x), x, x.valuation(), CheckReport{"translate-to-negative", pts.size(), true, std::nullopt, 0}};
    const ExtendedPoint &alpha = out.alpha;
    std::optional<ExtendedPoint> omega_at_top;
    for (const auto &p : pts) {
        GroupElement v = out.couple.psi_hat(p);
        ExtendedPoint w_old = c.omega_psi(p);
        ExtendedPoint w_new = v.valuation();
        ExtendedPoint expect = alpha < w_old ? alpha : w_old;
        std::string failed;
        if (v.sign() >= 0) {
            failed = "psi not negative";
        } else if (w_new != expect) {
            failed = "induced map is not min(alpha, omega)";
        } else if (!alpha.is_infinity() && ExtendedPoint(p) >= alpha) {
            if (w_old < alpha) {
                failed = "omega drops below alpha";
            } else if (omega_at_top && *omega_at_top != w_old) {
                failed = "omega not constant above alpha";
            }
            omega_at_top = w_old;
        }
        if (!failed.empty()) {
            out.check.pass = false;
            out.check.counterexample = Json{{"class", chain->format(p)}, {"reason", failed}};
            break;
        }
    }
    return out;
}

namespace {

long magnitude(const ChainPoint &p) { return p.kind == ChainPoint::Kind::Product ? std::labs(p.n.get_si()) : 0; }

} // namespace

bool qo_class_leq(const AsymptoticCouple &c, const ChainPoint &a, const ChainPoint &b)
{
    const ChainPtr &chain = c.chain();
    chain->require(a);
    chain->require(b);
    if (c.is_shift() && c.offset().is_zero()) {
        return qo_omega_leq(*chain, a, b);
    }
    long bound = 8 + static_cast<long>(chain->size()) + magnitude(a) + magnitude(b);
    for (const auto &t : c.offset().terms()) {
        bound += 2 * magnitude(t.first);
    }
    ExtendedPoint lowest = a;
    ExtendedPoint cur = a;
    for (long i = 0; i < bound && !cur.is_infinity(); ++i) {
        ExtendedPoint next = c.omega_psi(cur.point());
        if (next.is_infinity() || next == cur) {
            break;
        }
        if (next < lowest) {
            lowest = next;
        }
        cur = next;
    }
    cur = b;
    for (long i = 0; i <= bound; ++i) {
        if (lowest <= cur) {
            return true;
        }
        if (cur.is_infinity()) {
            break;
        }
        ExtendedPoint next = c.omega_psi(cur.point());
        if (next == cur) {
            break;
        }
        cur = next;
    }
    return false;
}

bool qo_psi_leq(const AsymptoticCouple &c, const GroupElement &g, const GroupElement &h)
{
    if (g.sign() >= 0 || h.sign() >= 0) {
        throw std::invalid_argument("quasi-order on psi is taken on negative elements");
    }
    return qo_class_leq(c, g.valuation().point(), h.valuation().point());
}

} // namespace hahnfield

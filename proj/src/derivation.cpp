#include <hahnfield/derivation.hpp>

#include <algorithm>

namespace hahnfield {

DerivationConfig::DerivationConfig(AsymptoticCouple couple, Rational default_lambda)
    : couple_(std::move(couple)), default_lambda_(std::move(default_lambda))
{
    if (default_lambda_ >= 0) {
        throw std::invalid_argument("lambda must be negative");
    }
}

void DerivationConfig::set_lambda(const ChainPoint &p, const Rational &lambda)
{
    chain()->require(p);
    if (lambda >= 0) {
        throw std::invalid_argument("lambda must be negative");
    }
    for (auto &o : overrides_) {
        if (o.first == p) {
            o.second = lambda;
            return;
        }
    }
    overrides_.emplace_back(p, lambda);
}

Rational DerivationConfig::lambda(const ChainPoint &p) const
{
    for (const auto &o : overrides_) {
        if (o.first == p) {
            return o.second;
        }
    }
    return default_lambda_;
}

Series derive_monomial(const DerivationConfig &cfg, const GroupElement &g)
{
    require_same_chain(cfg.chain(), g.chain());
    std::vector<Series::Term> terms;
    for (const auto &[p, coef] : g.terms()) {
        terms.emplace_back(g + cfg.couple().psi_hat(p), cfg.lambda(p) * coef);
    }
    return Series::from_terms(cfg.chain(), std::move(terms));
}

Series derive(const DerivationConfig &cfg, const Series &a)
{
    require_same_chain(cfg.chain(), a.chain());
    std::vector<Series::Term> terms;
    for (const auto &[g, coef] : a.terms()) {
        for (const auto &[p, gp] : g.terms()) {
            terms.emplace_back(g + cfg.couple().psi_hat(p), coef * cfg.lambda(p) * gp);
        }
    }
    return Series::from_terms(cfg.chain(), std::move(terms));
}

TruncatedSeries log_derivative(const DerivationConfig &cfg, const Series &a, const GroupElement &bound)
{
    if (a.is_zero() || a.valuation()->is_zero()) {
        throw DomainError("logarithmic derivative needs v(a) != 0");
    }
    Series da = derive(cfg, a);
    const GroupElement inv_bound = bound - *da.valuation();
    if (!(inv_bound > -*a.valuation())) {
        throw std::invalid_argument("bound must exceed psi(v(a))");
    }
    TruncatedSeries inv = invert_truncated(a, inv_bound);
    return {(da * inv.terms).below(bound), bound};
}

namespace {

Series map_exponents(const Series &a, const std::function<GroupElement(const GroupElement &)> &f)
{
    std::vector<Series::Term> terms;
    for (const auto &[g, c] : a.terms()) {
        terms.emplace_back(f(g), c);
    }
    Series r = Series::from_terms(a.chain(), std::move(terms));
    return r;
}

Series sample_ring(Sampler &s)
{
    return map_exponents(random_series(s), [](const GroupElement &g) { return abs(g); });
}

Series sample_ideal(Sampler &s)
{
    for (;;) {
        Series r = map_exponents(random_series(s), [&](const GroupElement &g) {
            return g.is_zero() ? GroupElement::unit(s.chain(), s.point(), s.positive_rational()) : abs(g);
        });
        if (!r.is_zero()) {
            return r;
        }
    }
}

// a > O_v: negative leading exponent with positive coefficient.
Series sample_infinite(Sampler &s)
{
    GroupElement lead = -s.positive_element();
    std::vector<Series::Term> terms{{lead, s.positive_rational()}};
    const Series rest = random_series(s);
    for (const auto &t : rest.terms()) {
        if (t.first > lead) {
            terms.push_back(t);
        }
    }
    return Series::from_terms(s.chain(), std::move(terms));
}

bool is_constant(const Series &a)
{
    return std::all_of(a.terms().begin(), a.terms().end(), [](const auto &t) { return t.first.is_zero(); });
}

Series constant_part(const Series &a) { return Series::constant(a.chain(), a.coefficient(GroupElement(a.chain()))); }

template <class Sample, class Fails, class Describe>
CheckReport sweep(const char *name, const SampleBudget &b, std::vector<Sample> items, Fails fails, Describe describe)
{
    CheckReport rep{name, items.size(), true, std::nullopt, b.seed};
    auto bad = first_failure_index(items.size(), [&](std::size_t i) { return fails(items[i]); }, b.exec);
    if (bad) {
        rep.pass = false;
        rep.counterexample = describe(items[*bad]);
    }
    return rep;
}

} // namespace

std::vector<CheckReport> check_dv_axioms(const DerivationConfig &cfg, const SampleBudget &budget)
{
    Sampler s(cfg.chain(), budget.window, budget.seed);
    std::vector<std::pair<Series, Series>> pairs;
    std::vector<Series> general;
    std::vector<Series> ring;
    for (std::size_t i = 0; i < budget.samples; ++i) {
        pairs.emplace_back(sample_ring(s), sample_ideal(s));
        general.push_back(random_series(s));
        ring.push_back(sample_ring(s));
    }
    const AsymptoticCouple &c = cfg.couple();
    std::vector<CheckReport> out;
    out.push_back(sweep(
        "DV2", budget, pairs,
        [&](const std::pair<Series, Series> &ab) {
            const auto &[a, b] = ab;
            Series da = derive(cfg, a);
            Series db = derive(cfg, b);
            GroupElement vb = *b.valuation();
            GroupElement psi_vb = c.psi(vb);
            if (*db.valuation() - vb != psi_vb) {
                return true;
            }
            return !da.is_zero() && !(*da.valuation() > psi_vb);
        },
        [&](const std::pair<Series, Series> &ab) {
            Series da = derive(cfg, ab.first);
            return Json{{"a", ab.first.to_string()},
                        {"b", ab.second.to_string()},
                        {"vDa", da.is_zero() ? std::string("inf") : da.valuation()->to_string()},
                        {"psi_vb", c.psi(*ab.second.valuation()).to_string()}};
        }));
    out.push_back(sweep(
        "DV2-constant-split", budget, ring,
        [&](const Series &a) { return derive(cfg, a) != derive(cfg, a - constant_part(a)); },
        [](const Series &a) { return Json{{"a", a.to_string()}}; }));
    out.push_back(sweep(
        "DV1", budget, general,
        [&](const Series &a) { return derive(cfg, a).is_zero() != is_constant(a); },
        [](const Series &a) { return Json{{"a", a.to_string()}}; }));
    out.push_back(sweep(
        "DV1-decomposition", budget, ring,
        [&](const Series &a) {
            Series k = constant_part(a);
            return !derive(cfg, k).is_zero() || !in_maximal_ideal(a - k);
        },
        [](const Series &a) { return Json{{"a", a.to_string()}}; }));
    return out;
}

std::vector<CheckReport> check_h_axioms(const DerivationConfig &cfg, const SampleBudget &budget)
{
    Sampler s(cfg.chain(), budget.window, budget.seed);
    std::vector<Series> big;
    std::vector<std::pair<Series, Series>> pairs;
    for (std::size_t i = 0; i < budget.samples; ++i) {
        big.push_back(sample_infinite(s));
        Series x = random_series(s);
        if (x.sign() < 0) {
            x = -x;
        }
        Series y = sample_ring(s);
        if (y.sign() < 0) {
            y = -y;
        }
        pairs.emplace_back(std::move(x), std::move(y));
    }
    std::vector<CheckReport> out;
    auto show = [](const Series &a) { return Json{{"a", a.to_string()}}; };
    out.push_back(sweep(
        "PH3", budget, big, [&](const Series &a) { return derive(cfg, a).sign() <= 0; }, show));
    out.push_back(sweep(
        "PH3-negative", budget, big, [&](const Series &a) { return derive(cfg, -a).sign() >= 0; },
        [](const Series &a) { return Json{{"a", (-a).to_string()}}; }));
    out.push_back(sweep(
        "PH2", budget, pairs,
        [&](const std::pair<Series, Series> &xy) {
            const auto &[x, y] = xy;
            bool applies = x.sign() >= 0 && cmp_series(x, y) <= 0 && in_valuation_ring(y);
            return applies && !in_valuation_ring(x);
        },
        [](const std::pair<Series, Series> &xy) {
            return Json{{"x", xy.first.to_string()}, {"y", xy.second.to_string()}};
        }));
    {
        const auto pts = cfg.chain()->points(budget.window, 1);
        CheckReport rep{"Hardy-type", pts.size() * pts.size(), true, std::nullopt, budget.seed};
        for (std::size_t i = 0; i < pts.size() && rep.pass; ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (cfg.couple().psi_hat(pts[i]) == cfg.couple().psi_hat(pts[j])) {
                    rep.pass = false;
                    rep.counterexample = Json{{"x", cfg.chain()->format(pts[i])}, {"y", cfg.chain()->format(pts[j])}};
                    break;
                }
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

InducedCouple induced_couple(const DerivationConfig &cfg, const ZWindow &w)
{
    InducedCouple out;
    const ChainPtr &chain = cfg.chain();
    const auto pts = chain->points(w, 1);
    out.check = CheckReport{"induced-couple", pts.size(), true, std::nullopt, 0};
    for (const auto &p : pts) {
        GroupElement e = GroupElement::unit(chain, p, 1);
        Series phi = derive_monomial(cfg, e).shifted(-e);
        GroupElement expected = cfg.couple().psi_hat(p);
        ExtendedPoint cls = phi.is_zero() ? ExtendedPoint::infinity() : phi.valuation()->valuation();
        out.class_map.emplace_back(p, cls);
        bool ok = phi.terms().size() == 1 && phi.terms().front().first == expected &&
                  cls == expected.valuation();
        if (!ok && out.check.pass) {
            out.check.pass = false;
            out.check.counterexample = Json{{"class", chain->format(p)}, {"phi", phi.to_string()},
                                            {"psi_hat", expected.to_string()}};
        }
    }
    return out;
}

const char *to_string(ResidueClass c)
{
    switch (c) {
    case ResidueClass::InDifferentialRank:
        return "InDifferentialRank";
    case ResidueClass::InUnfoldedRankOnly:
        return "InUnfoldedRankOnly";
    case ResidueClass::ResidueDerivationOnly:
        return "ResidueDerivationOnly";
    case ResidueClass::NoInducedDerivation:
        return "NoInducedDerivation";
    case ResidueClass::TrivialResidueDerivation:
        return "TrivialResidueDerivation";
    }
    return "?";
}

bool ResidueContext::w_nonnegative(const Series &a) const
{
    if (a.is_zero()) {
        return true;
    }
    const GroupElement v = *a.valuation();
    return ConvexSubgroup(segment).contains(v) || v.sign() > 0;
}

bool ResidueContext::w_positive(const Series &a) const
{
    if (a.is_zero()) {
        return true;
    }
    const GroupElement v = *a.valuation();
    return !ConvexSubgroup(segment).contains(v) && v.sign() > 0;
}

bool ResidueContext::w_unit(const Series &a) const
{
    return !a.is_zero() && ConvexSubgroup(segment).contains(*a.valuation());
}

Series residue_derive(const DerivationConfig &cfg, const ResidueContext &ctx, const Series &a)
{
    ConvexSubgroup h(ctx.segment);
    for (const auto &t : a.terms()) {
        if (!h.contains(t.first)) {
            throw std::invalid_argument("series is not supported in the residue subgroup");
        }
    }
    Series d = derive(cfg, a);
    for (const auto &t : d.terms()) {
        if (!h.contains(t.first)) {
            throw std::logic_error("derivation leaves the residue subgroup at " + t.first.to_string());
        }
    }
    return d;
}

namespace {

struct ResidueSamples {
    std::vector<Series> ring;     // O_w
    std::vector<Series> ideal;    // M_w, nonzero
    std::vector<Series> units;    // U_w
    std::vector<Series> inside;   // supported in H
};

ResidueSamples residue_samples(const ResidueContext &ctx, const SampleBudget &b)
{
    const ChainPtr &chain = ctx.segment.chain();
    Sampler s(chain, b.window, b.seed);
    ConvexSubgroup h(ctx.segment);
    std::vector<ChainPoint> in_pts, out_pts;
    for (const auto &p : chain->points(b.window)) {
        (ctx.segment.contains(p) ? in_pts : out_pts).push_back(p);
    }
    auto pick = [&](const std::vector<ChainPoint> &v) -> const ChainPoint & {
        return v[static_cast<std::size_t>(s.integer(0, static_cast<long>(v.size()) - 1))];
    };
    auto inside_element = [&]() {
        std::vector<GroupElement::Term> terms;
        long k = s.integer(1, 3);
        for (long i = 0; i < k; ++i) {
            terms.emplace_back(pick(in_pts), s.rational());
        }
        return GroupElement::from_terms(chain, std::move(terms));
    };
    auto outside_positive = [&]() {
        for (;;) {
            GroupElement g = GroupElement::unit(chain, pick(out_pts), s.positive_rational());
            if (s.coin()) {
                g = g + GroupElement::unit(chain, s.point(), s.rational());
            }
            if (!g.is_zero()) {
                return abs(g);
            }
        }
    };
    ResidueSamples out;
    for (std::size_t i = 0; i < b.samples; ++i) {
        std::vector<Series::Term> ring_terms, ideal_terms, unit_terms, inside_terms;
        long k = s.integer(1, 4);
        for (long j = 0; j < k; ++j) {
            GroupElement g = s.element();
            if (!h.contains(g)) {
                g = abs(g);
            }
            ring_terms.emplace_back(std::move(g), s.rational());
            inside_terms.emplace_back(inside_element(), s.rational());
            if (!out_pts.empty()) {
                ideal_terms.emplace_back(outside_positive(), s.rational());
            }
        }
        out.ring.push_back(Series::from_terms(chain, std::move(ring_terms)));
        out.inside.push_back(Series::from_terms(chain, inside_terms));
        Series unit = Series::from_terms(chain, std::move(inside_terms));
        if (unit.is_zero()) {
            unit = Series::constant(chain, 1);
        }
        if (!out_pts.empty()) {
            Series m = Series::from_terms(chain, std::move(ideal_terms));
            if (!m.is_zero()) {
                out.ideal.push_back(m);
                unit = unit + m;
            }
        }
        out.units.push_back(unit);
    }
    return out;
}

// w(D(a)) > w(D(b)/b) for a in O_w, b in M_w.
bool dv2_w_holds(const DerivationConfig &cfg, const ResidueContext &ctx, const Series &a, const Series &b)
{
    Series da = derive(cfg, a);
    if (da.is_zero()) {
        return true;
    }
    Series db = derive(cfg, b);
    GroupElement d = *da.valuation() - (*db.valuation() - *b.valuation());
    return d.sign() > 0 && !ConvexSubgroup(ctx.segment).contains(d);
}

} // namespace

ResidueReport coarsen_residue(const DerivationConfig &cfg, const FinalSegment &segment, const SampleBudget &budget)
{
    if (segment.is_empty()) {
        throw std::invalid_argument("coarsening needs a nonempty segment");
    }
    require_same_chain(cfg.chain(), segment.chain());
    const AsymptoticCouple &c = cfg.couple();
    const ChainPtr &chain = cfg.chain();
    ResidueReport rep{ResidueContext{segment, segment.is_full()}, ResidueClass::InDifferentialRank, false, {}};
    const ResidueContext &ctx = rep.context;

    const bool compatible = is_compatible_fast(c, segment);
    if (compatible != is_compatible_oracle(c, segment, budget.window)) {
        throw RankError("compatibility checkers disagree on " + segment.to_string());
    }
    const CutPointReport cut = find_cut_point(c);
    const bool cut_inside = segment.contains(cut.cut_class);
    bool in_unfolded = false;
    if (!compatible) {
        auto s = unfolded_rank(c, budget.window, budget.exec).segments;
        in_unfolded = std::find(s.begin(), s.end(), segment) != s.end();
    }
    if (compatible) {
        rep.classification = ResidueClass::InDifferentialRank;
    } else if (in_unfolded) {
        rep.classification = ResidueClass::InUnfoldedRankOnly;
    } else if (cut_inside) {
        rep.classification = ResidueClass::ResidueDerivationOnly;
    } else if (cut.witness.sign() < 0) {
        rep.classification = ResidueClass::NoInducedDerivation;
    } else {
        rep.classification = ResidueClass::TrivialResidueDerivation;
    }

    // Probe window covers the segment boundary.
    SampleBudget probe = budget;
    for (const auto &p : segment.boundary()) {
        if (p.kind == ChainPoint::Kind::Product && p.n.fits_slong_p()) {
            probe.window.lo = std::min(probe.window.lo, p.n.get_si() - 2);
            probe.window.hi = std::max(probe.window.hi, p.n.get_si() + 2);
        }
    }
    const ResidueSamples smp = residue_samples(ctx, probe);
    std::vector<Series> in_monomials, out_monomials;
    for (const auto &p : chain->points(probe.window)) {
        GroupElement e = GroupElement::unit(chain, p, 1);
        if (segment.contains(p)) {
            in_monomials.push_back(Series::monomial(e));
            in_monomials.push_back(Series::monomial(-e));
        } else {
            out_monomials.push_back(Series::monomial(e));
        }
    }
    auto show = [](const Series &a) { return Json{{"a", a.to_string()}}; };

    auto ring_check = [&] {
        return sweep(
            "D(O_w) in O_w", budget, smp.ring, [&](const Series &a) { return !ctx.w_nonnegative(derive(cfg, a)); },
            show);
    };
    auto ideal_check = [&] {
        return sweep(
            "D(M_w) in M_w", budget, smp.ideal, [&](const Series &a) { return !ctx.w_positive(derive(cfg, a)); },
            show);
    };
    auto containment_check = [&] {
        return sweep(
            "residue support containment", budget, smp.inside,
            [&](const Series &a) {
                try {
                    residue_derive(cfg, ctx, a);
                    return false;
                } catch (const std::logic_error &) {
                    return true;
                }
            },
            show);
    };
    auto nontrivial_check = [&] {
        CheckReport r{"residue derivation nontrivial", in_monomials.size(), false, std::nullopt, budget.seed};
        for (const auto &a : in_monomials) {
            if (ctx.w_unit(derive(cfg, a))) {
                r.pass = true;
                r.counterexample = Json{{"witness", a.to_string()}, {"D", derive(cfg, a).to_string()}};
                break;
            }
        }
        return r;
    };
    std::vector<std::pair<Series, Series>> dv2_pairs;
    for (const auto &a : in_monomials) {
        for (const auto &b : out_monomials) {
            dv2_pairs.emplace_back(a, b);
        }
    }
    for (std::size_t i = 0; i < smp.ring.size() && i < smp.ideal.size(); ++i) {
        dv2_pairs.emplace_back(smp.ring[i], smp.ideal[i]);
    }
    auto dv2_w = [&] {
        return sweep(
            "DV2-for-w", budget, dv2_pairs,
            [&](const std::pair<Series, Series> &ab) { return !dv2_w_holds(cfg, ctx, ab.first, ab.second); },
            [](const std::pair<Series, Series> &ab) {
                return Json{{"a", ab.first.to_string()}, {"b", ab.second.to_string()}};
            });
    };
    auto escape_check = [&] {
        CheckReport r{"escape witness", in_monomials.size(), false, std::nullopt, budget.seed};
        for (const auto &a : in_monomials) {
            Series d = derive(cfg, a);
            if (!ctx.w_nonnegative(d)) {
                r.pass = true;
                r.counterexample = Json{{"witness", a.to_string()}, {"D", d.to_string()}};
                break;
            }
        }
        return r;
    };
    auto units_to_ideal = [&] {
        return sweep(
            "D(U_w) in M_w", budget, smp.units, [&](const Series &a) { return !ctx.w_positive(derive(cfg, a)); },
            show);
    };

    switch (rep.classification) {
    case ResidueClass::InDifferentialRank:
        rep.checks = {ring_check(), ideal_check(), containment_check(), nontrivial_check(), dv2_w()};
        break;
    case ResidueClass::InUnfoldedRankOnly:
        rep.checks = {dv2_w(), cut.witness.sign() < 0 ? escape_check() : units_to_ideal()};
        break;
    case ResidueClass::ResidueDerivationOnly: {
        CheckReport fails = dv2_w();
        fails.axiom = "DV2-for-w violated";
        fails.pass = !fails.pass;
        rep.checks = {ring_check(), ideal_check(), containment_check(), nontrivial_check(), std::move(fails)};
        break;
    }
    case ResidueClass::NoInducedDerivation:
        rep.checks = {escape_check()};
        break;
    case ResidueClass::TrivialResidueDerivation:
        rep.checks = {units_to_ideal()};
        break;
    }
    rep.certified = all_pass(rep.checks);
    return rep;
}

} // namespace hahnfield

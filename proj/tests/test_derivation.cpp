#include "oracles.hpp"

#include <hahnfield/derivation.hpp>
#include <hahnfield/io.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace hahnfield;

namespace {

GroupElement e(const ChainPtr &c, std::size_t q, long n, const Rational &k = 1)
{
    return GroupElement::unit(c, ChainPoint::product(q, n), k);
}

Series t(const GroupElement &g, const Rational &k = 1) { return Series::monomial(g, k); }

DerivationConfig gap_config(const ChainPtr &c, std::size_t q)
{
    return DerivationConfig(couple_from_shift(c, e(c, q, 0, -1)));
}

std::vector<DerivationConfig> configs()
{
    std::vector<DerivationConfig> out;
    for (std::size_t k = 1; k <= 3; ++k) {
        auto c = oracle::q_chain(k);
        out.emplace_back(couple_from_shift(c));
        out.push_back(gap_config(c, k / 2));
    }
    auto f = Chain::finite({"a", "b", "c"});
    out.emplace_back(couple_from_shift(f));
    DerivationConfig varied(couple_from_shift(oracle::q_chain(2)), Rational(-3, 2));
    varied.set_lambda(ChainPoint::product(0, 0), Rational(-1, 5));
    varied.set_lambda(ChainPoint::product(1, 1), -7);
    out.push_back(varied);
    return out;
}

} // namespace

TEST_CASE("derivative of monomials", "[derivation]")
{
    auto c = oracle::q_chain(1);
    DerivationConfig cfg(couple_from_shift(c));
    CHECK(derive(cfg, Series::constant(c, 5)).is_zero());
    auto g = e(c, 0, 0);
    CHECK(derive(cfg, t(g)) == -t(e(c, 0, 0) - e(c, 0, 1)));
    auto twice = derive(cfg, t(g.scaled(2)));
    CHECK(twice == t(g.scaled(2) + cfg.couple().psi_hat(ChainPoint::product(0, 0)), -2));
    CHECK(twice == t(g) * derive(cfg, t(g)) + derive(cfg, t(g)) * t(g));
}

TEST_CASE("lambda must be negative", "[derivation]")
{
    auto c = oracle::q_chain(1);
    CHECK_THROWS_AS(DerivationConfig(couple_from_shift(c), 1), std::invalid_argument);
    DerivationConfig cfg(couple_from_shift(c));
    CHECK_THROWS_AS(cfg.set_lambda(ChainPoint::product(0, 0), 0), std::invalid_argument);
}

TEST_CASE("Leibniz rule", "[derivation][property]")
{
    for (const auto &cfg : configs()) {
        Sampler s(cfg.chain(), {-3, 3}, 41);
        for (int i = 0; i < 100; ++i) {
            auto a = random_series(s);
            auto b = random_series(s);
            CHECK(derive(cfg, a * b) == a * derive(cfg, b) + b * derive(cfg, a));
            CHECK(derive(cfg, a + b) == derive(cfg, a) + derive(cfg, b));
        }
    }
}

TEST_CASE("leading term of the derivative", "[derivation][property]")
{
    for (const auto &cfg : configs()) {
        Sampler s(cfg.chain(), {-3, 3}, 42);
        for (int i = 0; i < 100; ++i) {
            auto a = random_series(s);
            auto g = *a.valuation();
            if (g.is_zero()) {
                continue;
            }
            auto d = derive(cfg, a);
            auto lead_class = g.valuation().point();
            CHECK(*d.valuation() == g + cfg.couple().psi(g));
            CHECK(d.leading_term().second ==
                  a.leading_term().second * cfg.lambda(lead_class) * g.coefficient(lead_class));
        }
    }
}

TEST_CASE("constants are exactly the degree-zero series", "[derivation][property]")
{
    for (const auto &cfg : configs()) {
        Sampler s(cfg.chain(), {-3, 3}, 43);
        for (int i = 0; i < 200; ++i) {
            auto a = random_series(s);
            bool constant = a.terms().size() == 1 && a.terms()[0].first.is_zero();
            CHECK(derive(cfg, a).is_zero() == constant);
        }
    }
}

TEST_CASE("logarithmic derivative", "[derivation][log]")
{
    auto c = oracle::q_chain(2);
    DerivationConfig cfg(couple_from_shift(c));
    auto g = e(c, 1, 0, 3) - e(c, 0, 2);
    auto bound = e(c, 1, 5);
    auto phi = log_derivative(cfg, t(g), bound);
    CHECK(phi.terms == t(cfg.couple().psi_hat(ChainPoint::product(1, 0)), -3) +
                           t(cfg.couple().psi_hat(ChainPoint::product(0, 2))));
    CHECK_THROWS_AS(log_derivative(cfg, Series::constant(c, 2), bound), DomainError);

    Sampler s(c, {-3, 3}, 44);
    int done = 0;
    for (int i = 0; i < 400 && done < 100; ++i) {
        auto a = random_series(s, 3);
        auto b = random_series(s, 3);
        if (a.valuation()->is_zero() || b.valuation()->is_zero() || (*a.valuation() + *b.valuation()).is_zero()) {
            continue;
        }
        auto psi_a = cfg.couple().psi(*a.valuation());
        auto bnd = psi_a + s.positive_element(1);
        try {
            auto pa = log_derivative(cfg, a, bnd);
            auto pb = log_derivative(cfg, b, bnd);
            auto pab = log_derivative(cfg, a * b, bnd);
            CHECK(*pa.terms.valuation() == psi_a);
            CHECK(pab.terms == (pa.terms + pb.terms).below(bnd));
            ++done;
        } catch (const TruncationUnreachable &) {
        } catch (const std::invalid_argument &) {
        }
    }
    CHECK(done >= 50);
}

TEST_CASE("differential-valued and H-field axioms", "[derivation][axioms]")
{
    for (const auto &cfg : configs()) {
        SampleBudget b{{-4, 4}, 300, 45};
        for (const auto &r : check_dv_axioms(cfg, b)) {
            INFO(r.axiom);
            CHECK(r.pass);
        }
        for (const auto &r : check_h_axioms(cfg, b)) {
            INFO(r.axiom);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("DV2 fixture", "[derivation][axioms]")
{
    auto c = oracle::q_chain(1);
    DerivationConfig cfg(couple_from_shift(c));
    auto a = t(e(c, 0, 1));
    auto b = t(e(c, 0, 0));
    auto vda = *derive(cfg, a).valuation();
    auto logb = *derive(cfg, b).valuation() - *b.valuation();
    CHECK(logb == cfg.couple().psi(e(c, 0, 0)));
    CHECK(vda > logb);
    // v(a) = 0 splits as a constant plus an infinitesimal with the same derivative.
    auto u = Series::constant(c, 4) + a;
    CHECK(derive(cfg, u) == derive(cfg, a));
}

TEST_CASE("positivity above the constants", "[derivation][h]")
{
    auto c = oracle::q_chain(2);
    DerivationConfig cfg(couple_from_shift(c));
    for (const auto &p : c->points({-3, 3})) {
        auto big = t(GroupElement::unit(c, p, -1));
        auto d = derive(cfg, big);
        CHECK(d.leading_term().second == -cfg.lambda(p));
        CHECK(d.sign() > 0);
        CHECK(derive(cfg, -big).sign() < 0);
    }
}

TEST_CASE("induced couple", "[derivation][induced]")
{
    for (const auto &cfg : configs()) {
        auto ic = induced_couple(cfg, {-4, 4});
        CHECK(ic.check.pass);
        for (const auto &[p, cls] : ic.class_map) {
            CHECK(cls == cfg.couple().omega_psi(p));
        }
    }
    auto c = oracle::q_chain(2);
    DerivationConfig zero(couple_from_shift(c));
    for (const auto &[p, cls] : induced_couple(zero, {-2, 2}).class_map) {
        CHECK(cls == c->omega(p));
    }
    DerivationConfig rescaled(couple_from_shift(c), Rational(-9, 4));
    auto a = induced_couple(zero, {-2, 2}).class_map;
    auto b = induced_couple(rescaled, {-2, 2}).class_map;
    CHECK(a == b);
}

TEST_CASE("coarsening classification on the 3-chain gap field", "[derivation][residue]")
{
    auto c = oracle::q_chain(3);
    auto cfg = gap_config(c, 1);
    SampleBudget b{{-8, 8}, 300, 46};
    auto classify = [&](const char *text) { return coarsen_residue(cfg, parse_segment(c, text), b); };

    auto in_rank = classify("{q1:all,q2:all}");
    CHECK(in_rank.classification == ResidueClass::InDifferentialRank);
    CHECK(in_rank.certified);

    auto residue_only = classify("{q1:all,q2:tail(-2)}");
    CHECK(residue_only.classification == ResidueClass::ResidueDerivationOnly);
    CHECK(residue_only.certified);

    auto none = classify("{q1:all,q2:tail(3)}");
    CHECK(none.classification == ResidueClass::NoInducedDerivation);
    CHECK(none.certified);

    auto unfolded_only = classify("{q1:all}");
    CHECK(unfolded_only.classification == ResidueClass::InUnfoldedRankOnly);
    CHECK(unfolded_only.certified);

    auto full = classify("{q1:all,q2:all,q3:all}");
    CHECK(full.context.trivial_coarsening);
    CHECK(full.certified);

    CHECK_THROWS_AS(coarsen_residue(cfg, FinalSegment::empty(c), b), std::invalid_argument);
}

TEST_CASE("positive cut outside the segment gives a trivial residue derivation", "[derivation][residue]")
{
    auto c = oracle::q_chain(2);
    DerivationConfig cfg(couple_from_shift(c, e(c, 1, 0, 1)));
    auto r = coarsen_residue(cfg, parse_segment(c, "{q1:all,q2:tail(4)}"), SampleBudget{{-8, 8}, 200, 47});
    CHECK(r.classification == ResidueClass::TrivialResidueDerivation);
    CHECK(r.certified);
}

TEST_CASE("residue derivation stays in the subgroup", "[derivation][residue]")
{
    auto c = oracle::q_chain(3);
    auto cfg = gap_config(c, 1);
    ResidueContext ctx{FinalSegment::down_to_slice(c, 1)};
    auto inside = t(e(c, 0, 2) - e(c, 1, -1));
    CHECK_NOTHROW(residue_derive(cfg, ctx, inside));
    CHECK_THROWS_AS(residue_derive(cfg, ctx, t(e(c, 2, 0))), std::invalid_argument);
}

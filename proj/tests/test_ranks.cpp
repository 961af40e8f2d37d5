#include "oracles.hpp"

#include <hahnfield/ranks.hpp>
#include <hahnfield/sampling.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace hahnfield;

namespace {

GroupElement e(const ChainPtr &c, std::size_t q, long n, const Rational &k = 1)
{
    return GroupElement::unit(c, ChainPoint::product(q, n), k);
}

AsymptoticCouple gap(const ChainPtr &c, std::size_t q, long n = 0) { return couple_from_shift(c, e(c, q, n, -1)); }

std::vector<AsymptoticCouple> test_couples()
{
    std::vector<AsymptoticCouple> out;
    for (std::size_t k = 1; k <= 3; ++k) {
        auto c = oracle::q_chain(k);
        out.push_back(couple_from_shift(c));
        for (std::size_t q = 0; q < k; ++q) {
            out.push_back(gap(c, q));
            out.push_back(gap(c, q, 3));
        }
        out.push_back(couple_from_shift(c, e(c, k - 1, -2, 1)));
    }
    for (auto f : {Chain::finite({"a"}), Chain::finite({"a", "b", "c"})}) {
        out.push_back(couple_from_shift(f));
        out.push_back(couple_from_shift(f, GroupElement::unit(f, ChainPoint::finite(f->size() - 1), -1)));
    }
    return out;
}

std::vector<FinalSegment> slices_from(const ChainPtr &c, std::size_t from)
{
    std::vector<FinalSegment> out;
    for (std::size_t i = from; i < c->size(); ++i) {
        out.push_back(FinalSegment::down_to_slice(c, i));
    }
    return out;
}

} // namespace

TEST_CASE("psi-rank of the single slice", "[ranks]")
{
    auto c = oracle::q_chain(1);
    auto r = psi_rank(couple_from_shift(c));
    REQUIRE(r.segments.size() == 1);
    CHECK(r.segments[0].is_full());
    CHECK(r.principal.size() == 1);
}

TEST_CASE("psi-rank of the 3-chain", "[ranks]")
{
    auto c = oracle::q_chain(3);
    auto zero = psi_rank(couple_from_shift(c));
    CHECK(zero.principal_segments() == slices_from(c, 0));
    CHECK(zero.segments == slices_from(c, 0));
    auto g = psi_rank(gap(c, 1));
    CHECK(g.principal_segments() == slices_from(c, 1));
}

TEST_CASE("compatibility fixtures", "[ranks][compat]")
{
    auto c = oracle::q_chain(2);
    auto zero = couple_from_shift(c);
    auto full = FinalSegment::full(c);
    CHECK(is_compatible_oracle(zero, full));
    CHECK(is_compatible_fast(zero, full));
    auto top = FinalSegment::slices(c, {Slice::all(), Slice::none()});
    CHECK(is_compatible_oracle(zero, top));
    CHECK(is_compatible_fast(zero, top));
    auto g = gap(c, 1);
    CHECK_FALSE(is_compatible_oracle(g, top));
    CHECK_FALSE(is_compatible_fast(g, top));
    auto tail = FinalSegment::slices(c, {Slice::all(), Slice::tail(-2)});
    CHECK(tail.contains(find_cut_point(g).cut_class));
    CHECK_FALSE(is_compatible_oracle(g, tail));
    CHECK_FALSE(is_compatible_fast(g, tail));
    CHECK_THROWS_AS(is_compatible_fast(zero, FinalSegment::empty(c)), std::invalid_argument);
}

TEST_CASE("fast and windowed compatibility agree", "[ranks][compat][oracle]")
{
    for (const auto &c : test_couples()) {
        INFO(c.offset().to_string());
        CHECK(compatibility_disagreements(c, {-8, 8}).empty());
    }
}

TEST_CASE("principal segments", "[ranks]")
{
    auto c = oracle::q_chain(3);
    auto g = gap(c, 1);
    CHECK(principal_segment(g, ChainPoint::product(1, 0)) == FinalSegment::down_to_slice(c, 1));
    CHECK(principal_segment(g, ChainPoint::product(2, 5)).is_full());
    auto pts = c->points({-3, 3});
    for (const auto &a : pts) {
        for (const auto &b : pts) {
            if (a <= b) {
                CHECK(principal_segment(g, b).subset_of(principal_segment(g, a)));
            }
        }
    }
}

TEST_CASE("unfolded rank", "[ranks][unfolded]")
{
    auto c = oracle::q_chain(3);
    auto zero = unfolded_rank(couple_from_shift(c));
    CHECK(zero.segments == zero.diff_rank);
    CHECK(zero.principal_segments == zero.principal_diff_rank);
    auto g = unfolded_rank(gap(c, 1));
    CHECK(g.principal_segments == slices_from(c, 0));
    CHECK(g.principal_diff_rank == slices_from(c, 1));
    for (const auto &cpl : test_couples()) {
        auto u = unfolded_rank(cpl);
        CHECK(is_final_part(u.diff_rank, u.segments));
        CHECK(is_final_part(u.principal_diff_rank, u.principal_segments));
    }
}

TEST_CASE("rank below the cut is generated by the cut class", "[ranks][unfolded][property]")
{
    for (const auto &c : test_couples()) {
        auto cut = find_cut_point(c).cut_class;
        if (cut.is_infinity()) {
            continue;
        }
        auto u = unfolded_rank(c);
        auto gen = principal_segment(c, cut.point());
        std::vector<FinalSegment> expected;
        for (const auto &s : u.segments) {
            if (gen.subset_of(s)) {
                expected.push_back(s);
            }
        }
        CHECK(u.diff_rank == expected);
    }
}

TEST_CASE("rank of a translate keeps the segments containing the element", "[ranks][unfolded][property]")
{
    for (const auto &c : test_couples()) {
        auto u = unfolded_rank(c);
        Sampler s(c.chain(), {-3, 3}, 4);
        for (int i = 0; i < 3; ++i) {
            auto g = s.element();
            auto sg = psi_rank(c.translated(-c.psi(g))).segments;
            std::vector<FinalSegment> expected;
            for (const auto &h : u.segments) {
                if (ConvexSubgroup(h).contains(g)) {
                    expected.push_back(h);
                }
            }
            INFO(c.offset().to_string() << " g=" << g.to_string());
            CHECK(sg == expected);
        }
    }
}

TEST_CASE("chi-rank equals the unfolded rank", "[ranks][chi]")
{
    for (std::size_t k = 1; k <= 3; ++k) {
        auto c = couple_from_shift(oracle::q_chain(k));
        auto chi = chi_rank(c);
        CHECK(chi.segments == unfolded_rank(c).segments);
        CHECK(chi.segments.back().is_full());
        if (k == 1) {
            CHECK(chi.segments.size() == 1);
        }
    }
    CHECK_THROWS_AS(chi_rank(couple_from_shift(Chain::finite({"a", "b"}))), NotIntegrableError);
}

TEST_CASE("quasi-order rank equals the psi-rank", "[ranks][qo]")
{
    for (const auto &c : test_couples()) {
        INFO(c.offset().to_string());
        auto qo = rank_of_quasiorder(c);
        auto pr = psi_rank(c);
        CHECK(qo.segments == pr.segments);
        CHECK(qo.principal_segments() == pr.principal_segments());
    }
    auto single = rank_of_quasiorder(oracle::q_chain(1));
    CHECK(single.principal.size() == 1);
}

TEST_CASE("serial and parallel kernels agree", "[ranks][parallel]")
{
    for (const auto &c : test_couples()) {
        auto a = psi_rank(c, {-8, 8}, Exec::Serial);
        auto b = psi_rank(c, {-8, 8}, Exec::Parallel);
        CHECK(a.segments == b.segments);
        auto ua = unfolded_rank(c, {-4, 4}, Exec::Serial);
        auto ub = unfolded_rank(c, {-4, 4}, Exec::Parallel);
        CHECK(ua.segments == ub.segments);
        CHECK(ua.principal_segments == ub.principal_segments);
        auto ra = check_axioms(c, AxiomBudget{{-4, 4}, 50, 9, Exec::Serial});
        auto rb = check_axioms(c, AxiomBudget{{-4, 4}, 50, 9, Exec::Parallel});
        REQUIRE(ra.size() == rb.size());
        for (std::size_t i = 0; i < ra.size(); ++i) {
            CHECK(to_json(ra[i]) == to_json(rb[i]));
        }
    }
}

TEST_CASE("cut class outside the window is reported", "[ranks]")
{
    auto c = oracle::q_chain(2);
    CHECK_THROWS_AS(psi_rank(gap(c, 1, 20), {-8, 8}), RankError);
    CHECK_NOTHROW(psi_rank(gap(c, 1, 20), {15, 25}));
}

#include <hahnfield/ranks.hpp>

#include <algorithm>

namespace hahnfield {

std::vector<FinalSegment> RankReport::principal_segments() const
{
    std::vector<FinalSegment> out;
    for (const auto &pr : principal) {
        out.push_back(pr.first);
    }
    return out;
}

namespace {

void require_nonempty(const FinalSegment &seg)
{
    if (seg.is_empty()) {
        throw std::invalid_argument("compatibility is defined for nonempty segments");
    }
}

std::vector<FinalSegment> nonempty_candidates(const ChainPtr &chain, const ZWindow &w)
{
    std::vector<FinalSegment> out;
    for (auto &s : enumerate_final_segments(chain, w)) {
        if (!s.is_empty()) {
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<FinalSegment> select(const std::vector<FinalSegment> &cands, const std::vector<char> &keep)
{
    std::vector<FinalSegment> out;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (keep[i]) {
            out.push_back(cands[i]);
        }
    }
    return out;
}

long abs_n(const ChainPoint &p) { return p.kind == ChainPoint::Kind::Product ? std::labs(p.n.get_si()) : 0; }

// Smallest listed segment containing each windowed class; one generator per
// distinct result, preferring the class nearest n = 0.
std::vector<std::pair<FinalSegment, ChainPoint>> principal_of(const std::vector<FinalSegment> &segs,
                                                              const ChainPtr &chain, const ZWindow &w)
{
    std::vector<std::optional<ChainPoint>> gen(segs.size());
    for (const auto &p : chain->points(w)) {
        for (std::size_t i = 0; i < segs.size(); ++i) {
            if (segs[i].contains(p)) {
                if (!gen[i] || abs_n(p) < abs_n(*gen[i])) {
                    gen[i] = p;
                }
                break;
            }
        }
    }
    std::vector<std::pair<FinalSegment, ChainPoint>> out;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (gen[i]) {
            out.emplace_back(segs[i], *gen[i]);
        }
    }
    return out;
}

void require_cut_in_window(const AsymptoticCouple &c, const ZWindow &w)
{
    if (c.chain()->kind() != Chain::Kind::Product) {
        return;
    }
    ExtendedPoint cut = find_cut_point(c).cut_class;
    if (cut.is_infinity()) {
        return;
    }
    const Integer &n = cut.point().n;
    if (n < w.lo - 1 || n > w.hi + 1) {
        throw RankError("Z-window too small: cut class " + c.chain()->format(cut) + " lies outside it");
    }
}

} // namespace

bool is_compatible_oracle(const AsymptoticCouple &c, const FinalSegment &seg, const ZWindow &w)
{
    require_nonempty(seg);
    require_same_chain(c.chain(), seg.chain());
    ConvexSubgroup h(seg);
    for (const auto &p : c.chain()->points(w, 1)) {
        if (seg.contains(p) != h.contains(c.psi_hat(p))) {
            return false;
        }
    }
    return true;
}

bool is_compatible_fast(const AsymptoticCouple &c, const FinalSegment &seg)
{
    require_nonempty(seg);
    require_same_chain(c.chain(), seg.chain());
    if (!c.is_shift()) {
        throw std::invalid_argument("closed-form compatibility needs a shift-built couple");
    }
    const ExtendedPoint cut = find_cut_point(c).cut_class;
    if (!seg.contains(cut)) {
        return false;
    }
    for (const auto &b : seg.boundary()) {
        if (ExtendedPoint(b) < cut) {
            return false;
        }
    }
    return true;
}

std::vector<FinalSegment> compatibility_disagreements(const AsymptoticCouple &c, const ZWindow &w, Exec exec)
{
    const auto cands = nonempty_candidates(c.chain(), w);
    auto differ = evaluate_all(
        cands.size(),
        [&](std::size_t i) { return is_compatible_fast(c, cands[i]) != is_compatible_oracle(c, cands[i], w); },
        exec);
    return select(cands, differ);
}

RankReport psi_rank(const AsymptoticCouple &c, const ZWindow &w, Exec exec)
{
    require_cut_in_window(c, w);
    const ChainPtr &chain = c.chain();
    const auto cands = nonempty_candidates(chain, w);
    auto fast = evaluate_all(cands.size(), [&](std::size_t i) { return is_compatible_fast(c, cands[i]); }, exec);
    auto oracle =
        evaluate_all(cands.size(), [&](std::size_t i) { return is_compatible_oracle(c, cands[i], w); }, exec);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (fast[i] != oracle[i]) {
            throw RankError("closed-form and windowed compatibility disagree on " + cands[i].to_string());
        }
        if (fast[i] && cands[i].has_tail()) {
            throw RankError("compatible segment is not slice-saturated: " + cands[i].to_string());
        }
    }
    RankReport r;
    r.segments = select(cands, fast);
    r.principal = principal_of(r.segments, chain, w);
    return r;
}

FinalSegment principal_segment(const AsymptoticCouple &c, const ChainPoint &p, const ZWindow &w)
{
    c.chain()->require(p);
    for (const auto &s : psi_rank(c, w).segments) {
        if (s.contains(p)) {
            return s;
        }
    }
    throw std::logic_error("no compatible segment contains the class");
}

UnfoldedRankReport unfolded_rank(const AsymptoticCouple &c, const ZWindow &w, Exec exec)
{
    const ChainPtr &chain = c.chain();
    RankReport base = psi_rank(c, w, exec);
    const std::vector<ChainPoint> pts = chain->points(w);
    auto parts = map_indices<std::vector<FinalSegment>>(
        pts.size(),
        [&](std::size_t i) { return psi_rank(c.translated(-c.psi_hat(pts[i])), w, Exec::Serial).segments; },
        exec);
    UnfoldedRankReport out;
    for (const auto &part : parts) {
        for (const auto &s : part) {
            if (std::find(out.segments.begin(), out.segments.end(), s) == out.segments.end()) {
                out.segments.push_back(s);
            }
        }
    }
    sort_by_inclusion(out.segments);
    for (const auto &pr : principal_of(out.segments, chain, w)) {
        out.principal_segments.push_back(pr.first);
    }
    out.diff_rank = base.segments;
    out.principal_diff_rank = base.principal_segments();
    return out;
}

RankReport chi_rank(const AsymptoticCouple &c, const ZWindow &w, Exec exec)
{
    const ChainPtr &chain = c.chain();
    const std::vector<ChainPoint> pts = chain->points(w, 1);
    std::vector<GroupElement> chi;
    for (const auto &p : pts) {
        auto v = chi_hat(c, p);
        if (!v) {
            throw NotIntegrableError("psi value at class " + chain->format(p) + " has no asymptotic integral");
        }
        chi.push_back(std::move(*v));
    }
    const auto cands = nonempty_candidates(chain, w);
    auto keep = evaluate_all(
        cands.size(),
        [&](std::size_t i) {
            ConvexSubgroup h(cands[i]);
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (cands[i].contains(pts[k]) != h.contains(chi[k])) {
                    return false;
                }
            }
            return true;
        },
        exec);
    RankReport r;
    r.segments = select(cands, keep);
    r.principal = principal_of(r.segments, chain, w);
    return r;
}

RankReport rank_of_quasiorder(const AsymptoticCouple &c, const ZWindow &w)
{
    const ChainPtr &chain = c.chain();
    const std::vector<ChainPoint> pts = chain->points(w, 1);
    const std::size_t n = pts.size();
    std::vector<char> leq(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            leq[i * n + j] = qo_class_leq(c, pts[i], pts[j]) ? 1 : 0;
        }
    }
    const auto cands = nonempty_candidates(chain, w);
    std::vector<std::vector<char>> member(cands.size(), std::vector<char>(n));
    for (std::size_t s = 0; s < cands.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            member[s][i] = cands[s].contains(pts[i]) ? 1 : 0;
        }
    }
    RankReport r;
    std::vector<std::size_t> kept;
    for (std::size_t s = 0; s < cands.size(); ++s) {
        bool closed = true;
        for (std::size_t i = 0; i < n && closed; ++i) {
            if (!member[s][i]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (leq[i * n + j] && !member[s][j]) {
                    closed = false;
                    break;
                }
            }
        }
        if (closed) {
            r.segments.push_back(cands[s]);
            kept.push_back(s);
        }
    }
    for (const auto &b : chain->points(w)) {
        std::size_t bi = static_cast<std::size_t>(std::find(pts.begin(), pts.end(), b) - pts.begin());
        std::optional<std::size_t> match;
        for (std::size_t s = 0; s < cands.size() && !match; ++s) {
            bool eq = true;
            for (std::size_t j = 0; j < n && eq; ++j) {
                eq = (leq[bi * n + j] != 0) == (member[s][j] != 0);
            }
            if (eq) {
                match = s;
            }
        }
        if (!match) {
            throw RankError("principal set of " + chain->format(b) + " is not a representable segment");
        }
        const FinalSegment &seg = cands[*match];
        auto it = std::find_if(r.principal.begin(), r.principal.end(), [&](const auto &pr) { return pr.first == seg; });
        if (it == r.principal.end()) {
            r.principal.emplace_back(seg, b);
        } else if (abs_n(b) < abs_n(it->second)) {
            it->second = b;
        }
    }
    std::stable_sort(r.principal.begin(), r.principal.end(),
                     [](const auto &a, const auto &b) { return a.first.subset_of(b.first) && a.first != b.first; });
    return r;
}

RankReport rank_of_quasiorder(const ChainPtr &chain, const ZWindow &w)
{
    return rank_of_quasiorder(couple_from_shift(chain), w);
}

bool is_final_part(const std::vector<FinalSegment> &sub, const std::vector<FinalSegment> &whole)
{
    if (sub.size() > whole.size()) {
        return false;
    }
    return std::equal(sub.begin(), sub.end(), whole.end() - static_cast<long>(sub.size()));
}

std::vector<std::pair<std::string, FinalSegment>> slice_witness(const ChainPtr &chain, std::size_t from)
{
    std::vector<std::pair<std::string, FinalSegment>> out;
    for (std::size_t i = from; i < chain->size(); ++i) {
        out.emplace_back(chain->labels()[i], FinalSegment::down_to_slice(chain, i));
    }
    return out;
}

} // namespace hahnfield

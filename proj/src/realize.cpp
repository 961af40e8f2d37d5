#include <hahnfield/realize.hpp>

#include <algorithm>

namespace hahnfield {

namespace {

CheckReport equality_report(const std::string &name, const std::vector<FinalSegment> &got,
                            const std::vector<FinalSegment> &want)
{
    CheckReport r{name, want.size(), got == want, std::nullopt, 0};
    if (!r.pass) {
        r.counterexample = Json{{"computed", segments_to_json(got)}, {"expected", segments_to_json(want)}};
    }
    return r;
}

std::vector<FinalSegment> segments_of(const std::vector<std::pair<std::string, FinalSegment>> &w)
{
    std::vector<FinalSegment> out;
    for (const auto &pr : w) {
        out.push_back(pr.second);
    }
    return out;
}

CheckReport both_checkers(const AsymptoticCouple &c, const std::vector<FinalSegment> &segs, const ZWindow &w)
{
    CheckReport r{"reported segments compatible", segs.size(), true, std::nullopt, 0};
    for (const auto &s : segs) {
        if (!is_compatible_fast(c, s) || !is_compatible_oracle(c, s, w)) {
            r.pass = false;
            r.counterexample = Json{{"segment", s.to_string()}};
            break;
        }
    }
    return r;
}

} // namespace

RealizationCertificate realize_unchecked(const RealizationSpec &spec, const RealizationBudget &budget)
{
    if (spec.q_labels.empty() || spec.q_labels.size() > 12) {
        throw std::invalid_argument("Q must have between 1 and 12 labels");
    }
    ChainPtr chain = Chain::product(spec.q_labels);
    std::size_t p_from = 0;
    GroupElement offset(chain);
    if (spec.p_generator) {
        auto idx = chain->label_index(*spec.p_generator);
        if (!idx) {
            throw std::invalid_argument("generator '" + *spec.p_generator + "' is not in Q");
        }
        p_from = *idx;
        offset = GroupElement::unit(chain, ChainPoint::product(p_from, 0), -1);
    }
    AsymptoticCouple couple = couple_from_shift(chain, offset);
    RealizationCertificate cert{DerivationConfig(couple, -1), {}, {}, slice_witness(chain, p_from),
                                slice_witness(chain, 0), {}, false};
    auto &reports = cert.reports;

    try {
        cert.rank = psi_rank(couple, budget.window, budget.exec);
        cert.unfolded = unfolded_rank(couple, budget.window, budget.exec);
    } catch (const RankError &e) {
        reports.push_back(CheckReport{"rank computation", 0, false, Json{{"error", e.what()}}, budget.seed});
        return cert;
    }

    for (auto &r : check_axioms(couple, AxiomBudget{budget.window, 200, budget.seed, budget.exec})) {
        reports.push_back(std::move(r));
    }
    SampleBudget sb{budget.window, budget.samples, budget.seed, budget.exec};
    for (auto &r : check_dv_axioms(cert.config, sb)) {
        reports.push_back(std::move(r));
    }
    for (auto &r : check_h_axioms(cert.config, sb)) {
        reports.push_back(std::move(r));
    }
    reports.push_back(induced_couple(cert.config, budget.window).check);
    reports.push_back(both_checkers(couple, cert.rank.segments, budget.window));

    const auto &u = cert.unfolded;
    reports.push_back(equality_report("principal rank is P", cert.rank.principal_segments(), segments_of(cert.p_witness)));
    reports.push_back(equality_report("principal unfolded rank is Q", u.principal_segments, segments_of(cert.q_witness)));
    reports.push_back(CheckReport{"R is a final part of S", u.segments.size(), is_final_part(u.diff_rank, u.segments),
                                  std::nullopt, 0});
    reports.push_back(CheckReport{"P is a final part of Q", u.principal_segments.size(),
                                  is_final_part(u.principal_diff_rank, u.principal_segments), std::nullopt, 0});
    {
        CheckReport r{"P within Q", u.principal_diff_rank.size(), true, std::nullopt, 0};
        for (const auto &s : u.principal_diff_rank) {
            if (std::find(u.principal_segments.begin(), u.principal_segments.end(), s) == u.principal_segments.end()) {
                r.pass = false;
                r.counterexample = Json{{"segment", s.to_string()}};
                break;
            }
        }
        reports.push_back(std::move(r));
    }
    const ExtendedPoint cut = find_cut_point(couple).cut_class;
    if (!cut.is_infinity()) {
        FinalSegment gen = principal_segment(couple, cut.point(), budget.window);
        std::vector<FinalSegment> expected;
        for (const auto &s : u.segments) {
            if (gen.subset_of(s)) {
                expected.push_back(s);
            }
        }
        reports.push_back(equality_report("R generated by the cut class", u.diff_rank, expected));
    }
    cert.pass = all_pass(reports);
    return cert;
}

RealizationCertificate realize(const RealizationSpec &spec, const RealizationBudget &budget)
{
    RealizationCertificate cert = realize_unchecked(spec, budget);
    if (!cert.pass) {
        const CheckReport *bad = first_failure(cert.reports);
        throw RealizationError("realization check failed: " + bad->axiom, *bad);
    }
    return cert;
}

Json certificate_to_json(const RealizationCertificate &cert)
{
    auto witness = [](const std::vector<std::pair<std::string, FinalSegment>> &w) {
        Json j = Json::object();
        for (const auto &[label, seg] : w) {
            j[label] = seg.to_string();
        }
        return j;
    };
    const AsymptoticCouple &c = cert.config.couple();
    Json derivation = config_to_json(cert.config);
    derivation["lambda"] = to_string(cert.config.lambda(ChainPoint::product(0, 0)));
    return Json{{"schema", kSchema},
                {"pass", cert.pass},
                {"couple", describe(c)},
                {"derivation", derivation},
                {"ranks", rank_to_json(cert.rank, cert.unfolded, Json{{"P", witness(cert.p_witness)},
                                                                      {"Q", witness(cert.q_witness)}})},
                {"reports", reports_to_json(cert.reports)}};
}

} // namespace hahnfield

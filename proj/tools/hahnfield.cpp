#include <hahnfield/derivation.hpp>
#include <hahnfield/io.hpp>
#include <hahnfield/ranks.hpp>
#include <hahnfield/realize.hpp>
#include <hahnfield/sampling.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>

using namespace hahnfield;

namespace {

struct Options {
    bool json = false;
    std::optional<std::uint64_t> seed;
    long lo = -8;
    long hi = 8;
    std::string couple_file;
    std::string chain_file;
    std::string q_list;
    std::string p_label;
    std::string series;
    std::string segment;
    std::string a;
    std::string b;
};

std::uint64_t seed_of(const Options &o) { return o.seed ? *o.seed : seed_from_env(42); }

ZWindow window_of(const Options &o)
{
    if (o.lo > o.hi) {
        throw std::invalid_argument("empty Z-window");
    }
    return ZWindow{o.lo, o.hi};
}

std::vector<std::string> split_labels(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

DerivationConfig load_config(const Options &o)
{
    if (o.couple_file.empty()) {
        return DerivationConfig(couple_from_shift(Chain::product({"q1"})));
    }
    return config_from_json(read_json_file(o.couple_file));
}

void emit(const Options &o, const Json &j, const std::string &text)
{
    if (o.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

int failure(const CheckReport &r)
{
    Json j{{"schema", kSchema}, {"pass", false}, {"failing", to_json(r)}};
    std::cout << j.dump(2) << "\n";
    return 1;
}

int report_all(const Options &o, const std::string &what, const std::vector<CheckReport> &reports)
{
    if (const CheckReport *bad = first_failure(reports)) {
        return failure(*bad);
    }
    std::ostringstream text;
    for (const auto &r : reports) {
        text << "pass  " << r.axiom << "  (" << r.samples << " samples)\n";
    }
    emit(o, Json{{"schema", kSchema}, {"command", what}, {"pass", true}, {"reports", reports_to_json(reports)}},
         text.str());
    return 0;
}

int run_realize(const Options &o)
{
    RealizationSpec spec{split_labels(o.q_list), std::nullopt};
    if (!o.p_label.empty()) {
        spec.p_generator = o.p_label;
    }
    RealizationCertificate cert = realize_unchecked(spec, RealizationBudget{window_of(o), 500, seed_of(o)});
    if (!cert.pass) {
        return failure(*first_failure(cert.reports));
    }
    std::ostringstream text;
    text << "principal differential rank: " << cert.rank.principal.size() << "\n";
    for (const auto &[label, seg] : cert.p_witness) {
        text << "  " << label << " -> " << seg.to_string() << "\n";
    }
    text << "principal unfolded rank: " << cert.unfolded.principal_segments.size() << "\n";
    for (const auto &[label, seg] : cert.q_witness) {
        text << "  " << label << " -> " << seg.to_string() << "\n";
    }
    text << "all " << cert.reports.size() << " checks pass\n";
    emit(o, certificate_to_json(cert), text.str());
    return 0;
}

int run_rank(const Options &o)
{
    DerivationConfig cfg = load_config(o);
    const ZWindow w = window_of(o);
    RankReport rank;
    UnfoldedRankReport unfolded;
    try {
        rank = psi_rank(cfg.couple(), w);
        unfolded = unfolded_rank(cfg.couple(), w);
    } catch (const RankError &e) {
        return failure(CheckReport{"rank computation", 0, false, Json{{"error", e.what()}}, 0});
    }
    Json witness = Json::object();
    std::ostringstream text;
    text << "psi-rank: " << rank.segments.size() << " segments\n";
    for (const auto &[seg, gen] : rank.principal) {
        witness[cfg.chain()->format(gen)] = seg.to_string();
        text << "  principal " << seg.to_string() << " generated by " << cfg.chain()->format(gen) << "\n";
    }
    text << "unfolded rank: " << unfolded.segments.size() << " segments, " << unfolded.principal_segments.size()
         << " principal\n";
    Json j{{"schema", kSchema}};
    j.update(rank_to_json(rank, unfolded, witness));
    emit(o, j, text.str());
    return 0;
}

int run_axioms(const Options &o)
{
    DerivationConfig cfg = load_config(o);
    const ZWindow w = window_of(o);
    const std::uint64_t seed = seed_of(o);
    std::vector<CheckReport> reports = check_axioms(cfg.couple(), AxiomBudget{w, 200, seed});
    SampleBudget sb{w, 500, seed};
    for (auto &r : check_dv_axioms(cfg, sb)) {
        reports.push_back(std::move(r));
    }
    for (auto &r : check_h_axioms(cfg, sb)) {
        reports.push_back(std::move(r));
    }
    return report_all(o, "axioms", reports);
}

int run_derive(const Options &o)
{
    DerivationConfig cfg = load_config(o);
    Series a = parse_series(cfg.chain(), o.series);
    Series d = derive(cfg, a);
    emit(o, Json{{"schema", kSchema}, {"series", a.to_string()}, {"derivative", d.to_string()}}, d.to_string() + "\n");
    return 0;
}

std::string label_of(const std::string &point)
{
    auto open = point.find('(');
    auto comma = point.find(',');
    if (open == std::string::npos || comma == std::string::npos || comma < open) {
        throw ParseError(point, 0, "expected a point (label,n)");
    }
    std::string label = point.substr(open + 1, comma - open - 1);
    label.erase(std::remove_if(label.begin(), label.end(), ::isspace), label.end());
    return label;
}

int run_qo(const Options &o)
{
    ChainPtr chain;
    if (o.chain_file.empty()) {
        std::set<std::string> labels{label_of(o.a), label_of(o.b)};
        chain = Chain::product({labels.begin(), labels.end()});
    } else {
        chain = chain_from_json(read_json_file(o.chain_file));
    }
    ChainPoint a = parse_point(chain, o.a);
    ChainPoint b = parse_point(chain, o.b);
    AsymptoticCouple c = couple_from_shift(chain);
    bool ab = qo_class_leq(c, a, b);
    bool ba = qo_class_leq(c, b, a);
    std::string rel = ab && ba ? "equivalent" : ab ? "less" : ba ? "greater" : "incomparable";
    emit(o,
         Json{{"schema", kSchema},
              {"a", chain->format(a)},
              {"b", chain->format(b)},
              {"aLeqB", ab},
              {"bLeqA", ba},
              {"relation", rel}},
         rel + "\n");
    return 0;
}

int run_residue(const Options &o)
{
    DerivationConfig cfg = load_config(o);
    FinalSegment seg = parse_segment(cfg.chain(), o.segment);
    ResidueReport rep = coarsen_residue(cfg, seg, SampleBudget{window_of(o), 500, seed_of(o)});
    if (!rep.certified) {
        return failure(*first_failure(rep.checks));
    }
    std::ostringstream text;
    text << to_string(rep.classification) << "\n";
    for (const auto &r : rep.checks) {
        text << "  pass  " << r.axiom << "\n";
    }
    emit(o,
         Json{{"schema", kSchema},
              {"segment", seg.to_string()},
              {"classification", to_string(rep.classification)},
              {"trivialCoarsening", rep.context.trivial_coarsening},
              {"certified", rep.certified},
              {"checks", reports_to_json(rep.checks)}},
         text.str());
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Hahn series H-fields with prescribed differential rank"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App *sub) {
        sub->add_flag("--json", o.json, "Machine-readable output");
        sub->add_option("--lo", o.lo, "Lower end of the Z-window");
        sub->add_option("--hi", o.hi, "Upper end of the Z-window");
    };

    auto *realize_cmd = app.add_subcommand("realize", "Build and certify an H-field with given ranks");
    realize_cmd->add_option("--q", o.q_list, "Comma-separated labels of Q in ascending order")->required();
    realize_cmd->add_option("--p", o.p_label, "Generator of the principal final segment P");
    realize_cmd->add_option("--seed", o.seed, "Sampling seed (default HAHNFIELD_SEED or 42)");
    common(realize_cmd);

    auto *rank_cmd = app.add_subcommand("rank", "Differential and unfolded ranks of a couple");
    rank_cmd->add_option("--couple", o.couple_file, "Couple JSON file")->required();
    common(rank_cmd);

    auto *axioms_cmd = app.add_subcommand("axioms", "Check couple and derivation axioms");
    axioms_cmd->add_option("--couple", o.couple_file, "Couple JSON file")->required();
    axioms_cmd->add_option("--seed", o.seed, "Sampling seed (default HAHNFIELD_SEED or 42)");
    common(axioms_cmd);

    auto *derive_cmd = app.add_subcommand("derive", "Apply the derivation to a series");
    derive_cmd->add_option("--couple", o.couple_file, "Couple JSON file");
    derive_cmd->add_option("--series", o.series, "Series, e.g. \"3*t{2@(q1,0)} + -1/2*t{0}\"")->required();
    common(derive_cmd);

    auto *qo_cmd = app.add_subcommand("qo", "Compare two classes under the induced quasi-order");
    qo_cmd->add_option("--chain", o.chain_file, "Chain JSON file");
    qo_cmd->add_option("--a", o.a, "First point")->required();
    qo_cmd->add_option("--b", o.b, "Second point")->required();
    common(qo_cmd);

    auto *residue_cmd = app.add_subcommand("residue", "Classify the coarsening at a final segment");
    residue_cmd->add_option("--couple", o.couple_file, "Couple JSON file")->required();
    residue_cmd->add_option("--segment", o.segment, "Final segment, e.g. \"{q1:all,q2:tail(3)}\"")->required();
    residue_cmd->add_option("--seed", o.seed, "Sampling seed (default HAHNFIELD_SEED or 42)");
    common(residue_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (realize_cmd->parsed()) {
            return run_realize(o);
        }
        if (rank_cmd->parsed()) {
            return run_rank(o);
        }
        if (axioms_cmd->parsed()) {
            return run_axioms(o);
        }
        if (derive_cmd->parsed()) {
            return run_derive(o);
        }
        if (qo_cmd->parsed()) {
            return run_qo(o);
        }
        return run_residue(o);
    } catch (const ParseError &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Json::exception &e) {
        std::cerr << "invalid input file: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

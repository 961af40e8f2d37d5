#include <hahnfield/io.hpp>

#include <cctype>
#include <fstream>

namespace hahnfield {

namespace {

std::string caret_message(std::string_view input, std::size_t pos, const std::string &message)
{
    std::string out = "parse error at column " + std::to_string(pos + 1) + ": " + message + "\n  ";
    out += input;
    out += "\n  " + std::string(pos, ' ') + "^";
    return out;
}

class Cursor
{
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(s_, pos_, msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string &msg) const { throw ParseError(s_, at, msg); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    std::size_t pos()
    {
        skip();
        return pos_;
    }

    bool at_end()
    {
        skip();
        return pos_ == s_.size();
    }

    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept(std::string_view word)
    {
        skip();
        if (s_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    void expect_end()
    {
        if (!at_end()) {
            fail("unexpected trailing input");
        }
    }

    std::string digits()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected digits");
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    Integer integer()
    {
        bool neg = accept('-');
        if (!neg) {
            accept('+');
        }
        Integer z(digits());
        return neg ? Integer(-z) : z;
    }

    Rational rational()
    {
        Integer num = integer();
        Integer den = 1;
        if (accept('/')) {
            std::size_t dat = pos();
            den = Integer(digits());
            if (den == 0) {
                fail_at(dat, "zero denominator");
            }
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::string label()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a label");
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    ChainPoint point(const Chain &chain)
    {
        if (chain.kind() == Chain::Kind::Finite) {
            if (!accept('g')) {
                fail("expected a point g<i>");
            }
            std::size_t iat = pos();
            Integer i(digits());
            if (!i.fits_ulong_p() || i >= chain.size()) {
                fail_at(iat, "class index out of range");
            }
            return ChainPoint::finite(i.get_ui());
        }
        expect('(');
        std::size_t lat = pos();
        std::string q = label();
        auto qi = chain.label_index(q);
        if (!qi) {
            fail_at(lat, "unknown label '" + q + "'");
        }
        expect(',');
        Integer n = integer();
        expect(')');
        return ChainPoint::product(*qi, n);
    }

    GroupElement group(const ChainPtr &chain)
    {
        std::vector<GroupElement::Term> terms;
        do {
            std::size_t at = pos();
            Rational c = rational();
            if (!accept('@')) {
                if (c == 0) {
                    continue;
                }
                fail_at(at, "expected coefficient@point");
            }
            terms.emplace_back(point(*chain), c);
        } while (accept('+'));
        return GroupElement::from_terms(chain, std::move(terms));
    }

    Series series(const ChainPtr &chain)
    {
        std::vector<Series::Term> terms;
        do {
            std::size_t at = pos();
            Rational c = rational();
            if (!accept('*')) {
                if (c == 0) {
                    continue;
                }
                fail_at(at, "expected rational*t{...}");
            }
            if (!accept('t')) {
                fail("expected 't'");
            }
            expect('{');
            GroupElement g = group(chain);
            expect('}');
            terms.emplace_back(std::move(g), c);
        } while (accept('+'));
        return Series::from_terms(chain, std::move(terms));
    }

    FinalSegment segment(const ChainPtr &chain)
    {
        expect('{');
        if (chain->kind() == Chain::Kind::Finite) {
            FinalSegment seg = FinalSegment::empty(chain);
            if (accept("all")) {
                seg = FinalSegment::full(chain);
            } else if (accept("none")) {
            } else if (accept("from")) {
                expect(':');
                seg = FinalSegment::suffix(chain, point(*chain).index);
            } else {
                fail("expected all, none or from:g<i>");
            }
            expect('}');
            return seg;
        }
        std::vector<Slice> slices(chain->size(), Slice::none());
        std::vector<char> seen(chain->size(), 0);
        if (!accept('}')) {
            do {
                std::size_t lat = pos();
                std::string q = label();
                auto qi = chain->label_index(q);
                if (!qi) {
                    fail_at(lat, "unknown label '" + q + "'");
                }
                if (seen[*qi]) {
                    fail_at(lat, "label '" + q + "' given twice");
                }
                seen[*qi] = 1;
                expect(':');
                if (accept("none")) {
                    slices[*qi] = Slice::none();
                } else if (accept("all")) {
                    slices[*qi] = Slice::all();
                } else if (accept("tail")) {
                    expect('(');
                    slices[*qi] = Slice::tail(integer());
                    expect(')');
                } else {
                    fail("expected none, all or tail(n)");
                }
            } while (accept(','));
            expect('}');
        }
        try {
            return FinalSegment::slices(chain, std::move(slices));
        } catch (const std::invalid_argument &e) {
            fail_at(0, e.what());
        }
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

template <class F>
auto parse_whole(std::string_view text, F f)
{
    Cursor c(text);
    auto v = f(c);
    c.expect_end();
    return v;
}

} // namespace

ParseError::ParseError(std::string_view input, std::size_t position, const std::string &message)
    : std::runtime_error(caret_message(input, position, message)), position_(position), reason_(message)
{
}

Rational parse_rational(std::string_view text)
{
    return parse_whole(text, [](Cursor &c) { return c.rational(); });
}

ChainPoint parse_point(const ChainPtr &chain, std::string_view text)
{
    return parse_whole(text, [&](Cursor &c) { return c.point(*chain); });
}

GroupElement parse_group(const ChainPtr &chain, std::string_view text)
{
    return parse_whole(text, [&](Cursor &c) { return c.group(chain); });
}

Series parse_series(const ChainPtr &chain, std::string_view text)
{
    return parse_whole(text, [&](Cursor &c) { return c.series(chain); });
}

FinalSegment parse_segment(const ChainPtr &chain, std::string_view text)
{
    return parse_whole(text, [&](Cursor &c) { return c.segment(chain); });
}

Json chain_to_json(const Chain &chain)
{
    return Json{{"kind", chain.kind() == Chain::Kind::Product ? "product" : "finite"}, {"labels", chain.labels()}};
}

ChainPtr chain_from_json(const Json &j)
{
    const std::string kind = j.at("kind").get<std::string>();
    auto labels = j.at("labels").get<std::vector<std::string>>();
    if (kind == "product") {
        return Chain::product(std::move(labels));
    }
    if (kind == "finite") {
        return Chain::finite(std::move(labels));
    }
    throw std::invalid_argument("unknown chain kind '" + kind + "'");
}

DerivationConfig config_from_json(const Json &j)
{
    ChainPtr chain = chain_from_json(j.at("chain"));
    std::optional<AsymptoticCouple> couple;
    if (j.contains("psiTable")) {
        std::vector<GroupElement> values;
        for (const auto &v : j.at("psiTable")) {
            values.push_back(parse_group(chain, v.get<std::string>()));
        }
        couple = AsymptoticCouple::from_table(chain, std::move(values));
    } else {
        std::string offset = j.value("offsetElement", std::string("0"));
        couple = couple_from_shift(chain, parse_group(chain, offset));
    }
    Rational lambda = -1;
    if (j.contains("lambda")) {
        lambda = parse_rational(j.at("lambda").get<std::string>());
    }
    return DerivationConfig(*couple, lambda);
}

Json config_to_json(const DerivationConfig &cfg)
{
    const AsymptoticCouple &c = cfg.couple();
    Json j{{"chain", chain_to_json(*c.chain())}};
    if (c.table()) {
        Json t = Json::array();
        for (const auto &v : *c.table()) {
            t.push_back(v.to_string());
        }
        j["psiTable"] = t;
    } else {
        j["offsetElement"] = c.offset().to_string();
    }
    return j;
}

Json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Json describe(const AsymptoticCouple &c)
{
    Json j{{"chain", chain_to_json(*c.chain())}};
    if (c.table()) {
        Json t = Json::array();
        for (const auto &v : *c.table()) {
            t.push_back(v.to_string());
        }
        j["psiTable"] = t;
    } else {
        j["offsetElement"] = c.offset().to_string();
        TrichotomyClass t = classify_trichotomy(c);
        Json tj{{"kind", to_string(t.kind)}};
        if (t.witness) {
            tj["witness"] = t.witness->to_string();
        }
        j["trichotomy"] = tj;
    }
    j["cutClass"] = c.chain()->format(find_cut_point(c).cut_class);
    return j;
}

Json segments_to_json(const std::vector<FinalSegment> &segs)
{
    Json a = Json::array();
    for (const auto &s : segs) {
        a.push_back(s.to_string());
    }
    return a;
}

Json rank_to_json(const RankReport &rank, const UnfoldedRankReport &unfolded, const Json &order_iso_witness)
{
    Json principal = Json::array();
    for (const auto &[seg, gen] : rank.principal) {
        principal.push_back(Json{{"segment", seg.to_string()}, {"generator", seg.chain()->format(gen)}});
    }
    return Json{{"segments", segments_to_json(rank.segments)},
                {"principal", principal},
                {"S", segments_to_json(unfolded.segments)},
                {"Q", segments_to_json(unfolded.principal_segments)},
                {"R", segments_to_json(unfolded.diff_rank)},
                {"P", segments_to_json(unfolded.principal_diff_rank)},
                {"orderIsoWitness", order_iso_witness}};
}

Json reports_to_json(const std::vector<CheckReport> &reports)
{
    Json a = Json::array();
    for (const auto &r : reports) {
        a.push_back(to_json(r));
    }
    return a;
}

} // namespace hahnfield

#pragma once

#include <hahnfield/derivation.hpp>
#include <hahnfield/ranks.hpp>
#include <hahnfield/report.hpp>
#include <hahnfield/series.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hahnfield {

// Error with a zero-based column into the original input. what() carries
// the input and a caret line.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::string_view input, std::size_t position, const std::string &message);
    std::size_t position() const { return position_; }
    const std::string &reason() const { return reason_; }

private:
    std::size_t position_;
    std::string reason_;
};

Rational parse_rational(std::string_view text);
ChainPoint parse_point(const ChainPtr &chain, std::string_view text);
GroupElement parse_group(const ChainPtr &chain, std::string_view text);
Series parse_series(const ChainPtr &chain, std::string_view text);
FinalSegment parse_segment(const ChainPtr &chain, std::string_view text);

Json chain_to_json(const Chain &chain);
ChainPtr chain_from_json(const Json &j);

// {"chain": {...}, "offsetElement": "<group>", "lambda": "<rational>"}, or
// "psiTable": ["<group>", ...] in place of the offset for a finite chain.
DerivationConfig config_from_json(const Json &j);
Json config_to_json(const DerivationConfig &cfg);

Json read_json_file(const std::string &path);

Json describe(const AsymptoticCouple &c);
Json segments_to_json(const std::vector<FinalSegment> &segs);
Json rank_to_json(const RankReport &rank, const UnfoldedRankReport &unfolded, const Json &order_iso_witness);
Json reports_to_json(const std::vector<CheckReport> &reports);

} // namespace hahnfield

#pragma once

#include <hahnfield/couple.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace hahnfield {

struct RankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Compatible nonempty final segments ascending by inclusion, and the
// principal ones with one generating class each.
struct RankReport {
    std::vector<FinalSegment> segments;
    std::vector<std::pair<FinalSegment, ChainPoint>> principal;

    std::vector<FinalSegment> principal_segments() const;
};

struct UnfoldedRankReport {
    std::vector<FinalSegment> segments;           // S
    std::vector<FinalSegment> principal_segments; // Q
    std::vector<FinalSegment> diff_rank;          // R
    std::vector<FinalSegment> principal_diff_rank; // P
};

bool is_compatible_oracle(const AsymptoticCouple &c, const FinalSegment &seg, const ZWindow &w = {});
bool is_compatible_fast(const AsymptoticCouple &c, const FinalSegment &seg);

RankReport psi_rank(const AsymptoticCouple &c, const ZWindow &w = {}, Exec exec = Exec::Parallel);
FinalSegment principal_segment(const AsymptoticCouple &c, const ChainPoint &p, const ZWindow &w = {});
UnfoldedRankReport unfolded_rank(const AsymptoticCouple &c, const ZWindow &w = {}, Exec exec = Exec::Parallel);
RankReport chi_rank(const AsymptoticCouple &c, const ZWindow &w = {}, Exec exec = Exec::Parallel);
RankReport rank_of_quasiorder(const AsymptoticCouple &c, const ZWindow &w = {});
RankReport rank_of_quasiorder(const ChainPtr &chain, const ZWindow &w = {});

// Candidate segments whose compatibility disagrees between the two checkers.
std::vector<FinalSegment> compatibility_disagreements(const AsymptoticCouple &c, const ZWindow &w = {},
                                                      Exec exec = Exec::Parallel);

// `sub` is an upward-closed part of `whole` (both ascending by inclusion).
bool is_final_part(const std::vector<FinalSegment> &sub, const std::vector<FinalSegment> &whole);

// Segment generated by each q of a product chain, in Q order.
std::vector<std::pair<std::string, FinalSegment>> slice_witness(const ChainPtr &chain, std::size_t from = 0);

} // namespace hahnfield

#pragma once

#include <hahnfield/number.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hahnfield {

// A point of a finite labeled chain, or a point (q, n) of Q x Z.
// For Product points `index` is the position of q in the declared Q.
struct ChainPoint {
    enum class Kind { Finite, Product };

    Kind kind = Kind::Finite;
    std::size_t index = 0;
    Integer n = 0;

    static ChainPoint finite(std::size_t i);
    static ChainPoint product(std::size_t q, Integer n);
};

// Order of points of the same chain. Product points compare by reversed
// Q position first, then by n.
int compare(const ChainPoint &a, const ChainPoint &b);

inline bool operator==(const ChainPoint &a, const ChainPoint &b) { return compare(a, b) == 0; }
inline bool operator!=(const ChainPoint &a, const ChainPoint &b) { return compare(a, b) != 0; }
inline bool operator<(const ChainPoint &a, const ChainPoint &b) { return compare(a, b) < 0; }
inline bool operator<=(const ChainPoint &a, const ChainPoint &b) { return compare(a, b) <= 0; }
inline bool operator>(const ChainPoint &a, const ChainPoint &b) { return compare(a, b) > 0; }
inline bool operator>=(const ChainPoint &a, const ChainPoint &b) { return compare(a, b) >= 0; }

// A chain point or the maximum Infinity.
class ExtendedPoint
{
public:
    ExtendedPoint() = default;
    ExtendedPoint(ChainPoint p) : point_(std::move(p)) {}

    static ExtendedPoint infinity() { return ExtendedPoint(); }

    bool is_infinity() const { return !point_.has_value(); }
    const ChainPoint &point() const;

private:
    std::optional<ChainPoint> point_;
};

int compare(const ExtendedPoint &a, const ExtendedPoint &b);

inline bool operator==(const ExtendedPoint &a, const ExtendedPoint &b) { return compare(a, b) == 0; }
inline bool operator!=(const ExtendedPoint &a, const ExtendedPoint &b) { return compare(a, b) != 0; }
inline bool operator<(const ExtendedPoint &a, const ExtendedPoint &b) { return compare(a, b) < 0; }
inline bool operator<=(const ExtendedPoint &a, const ExtendedPoint &b) { return compare(a, b) <= 0; }
inline bool operator>(const ExtendedPoint &a, const ExtendedPoint &b) { return compare(a, b) > 0; }
inline bool operator>=(const ExtendedPoint &a, const ExtendedPoint &b) { return compare(a, b) >= 0; }

// Inclusive range of Z used for tail cut positions and windowed sweeps.
struct ZWindow {
    long lo = -8;
    long hi = 8;

    bool empty() const { return lo > hi; }
};

class Chain;
using ChainPtr = std::shared_ptr<const Chain>;

class Chain
{
public:
    enum class Kind { Finite, Product };

    static ChainPtr finite(std::vector<std::string> labels);
    static ChainPtr product(std::vector<std::string> q_labels);

    Kind kind() const { return kind_; }
    const std::vector<std::string> &labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    std::optional<std::size_t> label_index(const std::string &label) const;

    bool contains(const ChainPoint &p) const;
    void require(const ChainPoint &p) const;

    int cmp(const ExtendedPoint &x, const ExtendedPoint &y) const;

    // The right-shift: successor on a finite chain (top goes to Infinity),
    // (a, n) -> (a, n + 1) on Q x Z.
    ExtendedPoint omega(const ChainPoint &p) const;

    std::string format(const ChainPoint &p) const;
    std::string format(const ExtendedPoint &p) const;

    // All points of a finite chain, or every (q, n) with n in
    // [w.lo - pad, w.hi + pad], in ascending order.
    std::vector<ChainPoint> points(const ZWindow &w, long pad = 0) const;

    bool same_as(const Chain &other) const;

private:
    Chain(Kind k, std::vector<std::string> labels);

    Kind kind_;
    std::vector<std::string> labels_;
};

void require_same_chain(const ChainPtr &a, const ChainPtr &b);

bool qo_omega_leq(const Chain &chain, const ChainPoint &a, const ChainPoint &b);

enum class SliceKind { None, Tail, All };

struct Slice {
    SliceKind kind = SliceKind::None;
    Integer start = 0;

    static Slice none() { return {SliceKind::None, 0}; }
    static Slice all() { return {SliceKind::All, 0}; }
    static Slice tail(Integer n0) { return {SliceKind::Tail, std::move(n0)}; }
};

bool operator==(const Slice &a, const Slice &b);

class FinalSegment
{
public:
    // Suffix of a finite chain starting at `start`; start == size() is Empty.
    static FinalSegment suffix(ChainPtr chain, std::size_t start);
    static FinalSegment slices(ChainPtr chain, std::vector<Slice> s);
    static FinalSegment full(ChainPtr chain);
    static FinalSegment empty(ChainPtr chain);

    // Union of whole slices from the top of Q x Z down to the slice of `q`.
    static FinalSegment down_to_slice(ChainPtr chain, std::size_t q);

    const ChainPtr &chain() const { return chain_; }
    std::size_t suffix_start() const { return start_; }
    const std::vector<Slice> &slice_map() const { return slices_; }

    bool contains(const ChainPoint &p) const;
    bool contains(const ExtendedPoint &p) const;
    bool is_empty() const;
    bool is_full() const;
    bool subset_of(const FinalSegment &other) const;
    bool has_tail() const;

    // Points outside the segment whose shift lies inside it.
    std::vector<ChainPoint> boundary() const;

    std::string to_string() const;

    friend bool operator==(const FinalSegment &a, const FinalSegment &b);

private:
    FinalSegment(ChainPtr c) : chain_(std::move(c)) {}

    ChainPtr chain_;
    std::size_t start_ = 0;
    std::vector<Slice> slices_;
};

inline bool operator!=(const FinalSegment &a, const FinalSegment &b) { return !(a == b); }

// Ascending by inclusion, Empty first.
std::vector<FinalSegment> enumerate_final_segments(const ChainPtr &chain, const ZWindow &w);

void sort_by_inclusion(std::vector<FinalSegment> &segs);

} // namespace hahnfield

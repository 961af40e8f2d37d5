#include <hahnfield/chain.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hahnfield {

ChainPoint ChainPoint::finite(std::size_t i)
{
    ChainPoint p;
    p.kind = Kind::Finite;
    p.index = i;
    return p;
}

ChainPoint ChainPoint::product(std::size_t q, Integer n)
{
    ChainPoint p;
    p.kind = Kind::Product;
    p.index = q;
    p.n = std::move(n);
    return p;
}

int compare(const ChainPoint &a, const ChainPoint &b)
{
    if (a.kind != b.kind) {
        throw std::invalid_argument("points of different chain kinds");
    }
    if (a.kind == ChainPoint::Kind::Finite) {
        return a.index < b.index ? -1 : (a.index > b.index ? 1 : 0);
    }
    if (a.index != b.index) {
        return a.index > b.index ? -1 : 1;
    }
    int c = cmp(a.n, b.n);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

const ChainPoint &ExtendedPoint::point() const
{
    if (!point_) {
        throw std::logic_error("Infinity has no chain point");
    }
    return *point_;
}

int compare(const ExtendedPoint &a, const ExtendedPoint &b)
{
    if (a.is_infinity() || b.is_infinity()) {
        return (a.is_infinity() ? 1 : 0) - (b.is_infinity() ? 1 : 0);
    }
    return compare(a.point(), b.point());
}

Chain::Chain(Kind k, std::vector<std::string> labels) : kind_(k), labels_(std::move(labels))
{
    if (labels_.empty()) {
        throw std::invalid_argument("chain needs at least one label");
    }
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) {
        throw std::invalid_argument("duplicate chain label");
    }
}

ChainPtr Chain::finite(std::vector<std::string> labels)
{
    return ChainPtr(new Chain(Kind::Finite, std::move(labels)));
}

ChainPtr Chain::product(std::vector<std::string> q_labels)
{
    return ChainPtr(new Chain(Kind::Product, std::move(q_labels)));
}

std::optional<std::size_t> Chain::label_index(const std::string &label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

bool Chain::contains(const ChainPoint &p) const
{
    bool kind_ok = (kind_ == Kind::Finite) == (p.kind == ChainPoint::Kind::Finite);
    return kind_ok && p.index < labels_.size();
}

void Chain::require(const ChainPoint &p) const
{
    if (!contains(p)) {
        throw std::invalid_argument("point is not a member of the chain");
    }
}

int Chain::cmp(const ExtendedPoint &x, const ExtendedPoint &y) const
{
    if (!x.is_infinity()) {
        require(x.point());
    }
    if (!y.is_infinity()) {
        require(y.point());
    }
    return compare(x, y);
}

ExtendedPoint Chain::omega(const ChainPoint &p) const
{
    require(p);
    if (kind_ == Kind::Finite) {
        if (p.index + 1 == labels_.size()) {
            return ExtendedPoint::infinity();
        }
        return ChainPoint::finite(p.index + 1);
    }
    return ChainPoint::product(p.index, p.n + 1);
}

std::string Chain::format(const ChainPoint &p) const
{
    require(p);
    if (kind_ == Kind::Finite) {
        return "g" + std::to_string(p.index);
    }
    return "(" + labels_[p.index] + "," + p.n.get_str() + ")";
}

std::string Chain::format(const ExtendedPoint &p) const
{
    return p.is_infinity() ? std::string("inf") : format(p.point());
}

std::vector<ChainPoint> Chain::points(const ZWindow &w, long pad) const
{
    std::vector<ChainPoint> out;
    if (kind_ == Kind::Finite) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            out.push_back(ChainPoint::finite(i));
        }
        return out;
    }
    for (std::size_t q = labels_.size(); q-- > 0;) {
        for (long n = w.lo - pad; n <= w.hi + pad; ++n) {
            out.push_back(ChainPoint::product(q, n));
        }
    }
    return out;
}

bool Chain::same_as(const Chain &other) const
{
    return this == &other || (kind_ == other.kind_ && labels_ == other.labels_);
}

void require_same_chain(const ChainPtr &a, const ChainPtr &b)
{
    if (a != b && !a->same_as(*b)) {
        throw std::invalid_argument("chain mismatch");
    }
}

bool qo_omega_leq(const Chain &chain, const ChainPoint &a, const ChainPoint &b)
{
    chain.require(a);
    chain.require(b);
    if (chain.kind() == Chain::Kind::Product) {
        return b.index <= a.index;
    }
    const std::size_t len = chain.size();
    for (std::size_t n = 0; n <= len && a.index + n < len; ++n) {
        for (std::size_t k = 0; k <= len && b.index + k < len; ++k) {
            if (a.index + n <= b.index + k) {
                return true;
            }
        }
    }
    return false;
}

bool operator==(const Slice &a, const Slice &b)
{
    return a.kind == b.kind && (a.kind != SliceKind::Tail || a.start == b.start);
}

FinalSegment FinalSegment::suffix(ChainPtr chain, std::size_t start)
{
    if (chain->kind() != Chain::Kind::Finite) {
        throw std::invalid_argument("suffix segments need a finite chain");
    }
    if (start > chain->size()) {
        throw std::invalid_argument("suffix start out of range");
    }
    FinalSegment s(std::move(chain));
    s.start_ = start;
    return s;
}

FinalSegment FinalSegment::slices(ChainPtr chain, std::vector<Slice> sl)
{
    if (chain->kind() != Chain::Kind::Product) {
        throw std::invalid_argument("slice segments need a product chain");
    }
    if (sl.size() != chain->size()) {
        throw std::invalid_argument("one slice descriptor per Q label expected");
    }
    for (std::size_t i = 0; i < sl.size(); ++i) {
        if (sl[i].kind == SliceKind::None) {
            continue;
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (sl[j].kind != SliceKind::All) {
                throw std::invalid_argument("segment is not upward closed at slice " + chain->labels()[j]);
            }
        }
    }
    FinalSegment s(std::move(chain));
    s.slices_ = std::move(sl);
    return s;
}

FinalSegment FinalSegment::full(ChainPtr chain)
{
    if (chain->kind() == Chain::Kind::Finite) {
        return suffix(std::move(chain), 0);
    }
    std::vector<Slice> sl(chain->size(), Slice::all());
    return slices(std::move(chain), std::move(sl));
}

FinalSegment FinalSegment::empty(ChainPtr chain)
{
    if (chain->kind() == Chain::Kind::Finite) {
        std::size_t n = chain->size();
        return suffix(std::move(chain), n);
    }
    std::vector<Slice> sl(chain->size(), Slice::none());
    return slices(std::move(chain), std::move(sl));
}

FinalSegment FinalSegment::down_to_slice(ChainPtr chain, std::size_t q)
{
    if (q >= chain->size()) {
        throw std::invalid_argument("slice index out of range");
    }
    std::vector<Slice> sl(chain->size(), Slice::none());
    for (std::size_t i = 0; i <= q; ++i) {
        sl[i] = Slice::all();
    }
    return slices(std::move(chain), std::move(sl));
}

bool FinalSegment::contains(const ChainPoint &p) const
{
    chain_->require(p);
    if (chain_->kind() == Chain::Kind::Finite) {
        return p.index >= start_;
    }
    const Slice &s = slices_[p.index];
    switch (s.kind) {
    case SliceKind::All:
        return true;
    case SliceKind::None:
        return false;
    case SliceKind::Tail:
        return p.n >= s.start;
    }
    return false;
}

bool FinalSegment::contains(const ExtendedPoint &p) const
{
    return p.is_infinity() || contains(p.point());
}

bool FinalSegment::is_empty() const
{
    if (chain_->kind() == Chain::Kind::Finite) {
        return start_ == chain_->size();
    }
    return std::all_of(slices_.begin(), slices_.end(), [](const Slice &s) { return s.kind == SliceKind::None; });
}

bool FinalSegment::is_full() const
{
    if (chain_->kind() == Chain::Kind::Finite) {
        return start_ == 0;
    }
    return std::all_of(slices_.begin(), slices_.end(), [](const Slice &s) { return s.kind == SliceKind::All; });
}

bool FinalSegment::has_tail() const
{
    return std::any_of(slices_.begin(), slices_.end(), [](const Slice &s) { return s.kind == SliceKind::Tail; });
}

namespace {

bool slice_subset(const Slice &a, const Slice &b)
{
    if (a.kind == SliceKind::None || b.kind == SliceKind::All) {
        return true;
    }
    if (a.kind == SliceKind::All || b.kind == SliceKind::None) {
        return false;
    }
    return b.start <= a.start;
}

} // namespace

bool FinalSegment::subset_of(const FinalSegment &other) const
{
    require_same_chain(chain_, other.chain_);
    if (chain_->kind() == Chain::Kind::Finite) {
        return start_ >= other.start_;
    }
    for (std::size_t i = 0; i < slices_.size(); ++i) {
        if (!slice_subset(slices_[i], other.slices_[i])) {
            return false;
        }
    }
    return true;
}

std::vector<ChainPoint> FinalSegment::boundary() const
{
    std::vector<ChainPoint> out;
    if (chain_->kind() == Chain::Kind::Finite) {
        if (start_ > 0 && start_ < chain_->size()) {
            out.push_back(ChainPoint::finite(start_ - 1));
        }
        return out;
    }
    for (std::size_t q = 0; q < slices_.size(); ++q) {
        if (slices_[q].kind == SliceKind::Tail) {
            out.push_back(ChainPoint::product(q, slices_[q].start - 1));
        }
    }
    return out;
}

std::string FinalSegment::to_string() const
{
    if (chain_->kind() == Chain::Kind::Finite) {
        if (is_empty()) {
            return "{none}";
        }
        if (is_full()) {
            return "{all}";
        }
        return "{from:g" + std::to_string(start_) + "}";
    }
    std::string out = "{";
    for (std::size_t q = 0; q < slices_.size(); ++q) {
        if (q > 0) {
            out += ",";
        }
        out += chain_->labels()[q] + ":";
        switch (slices_[q].kind) {
        case SliceKind::None:
            out += "none";
            break;
        case SliceKind::All:
            out += "all";
            break;
        case SliceKind::Tail:
            out += "tail(" + slices_[q].start.get_str() + ")";
            break;
        }
    }
    return out + "}";
}

bool operator==(const FinalSegment &a, const FinalSegment &b)
{
    if (!a.chain_->same_as(*b.chain_)) {
        return false;
    }
    if (a.chain_->kind() == Chain::Kind::Finite) {
        return a.start_ == b.start_;
    }
    return a.slices_ == b.slices_;
}

std::vector<FinalSegment> enumerate_final_segments(const ChainPtr &chain, const ZWindow &w)
{
    std::vector<FinalSegment> out;
    if (chain->kind() == Chain::Kind::Finite) {
        for (std::size_t s = chain->size() + 1; s-- > 0;) {
            out.push_back(FinalSegment::suffix(chain, s));
        }
        return out;
    }
    if (w.empty()) {
        throw std::invalid_argument("empty Z-window");
    }
    out.push_back(FinalSegment::empty(chain));
    for (std::size_t q = 0; q < chain->size(); ++q) {
        std::vector<Slice> sl(chain->size(), Slice::none());
        for (std::size_t i = 0; i < q; ++i) {
            sl[i] = Slice::all();
        }
        for (long n = w.hi; n >= w.lo; --n) {
            sl[q] = Slice::tail(n);
            out.push_back(FinalSegment::slices(chain, sl));
        }
        sl[q] = Slice::all();
        out.push_back(FinalSegment::slices(chain, sl));
    }
    return out;
}

void sort_by_inclusion(std::vector<FinalSegment> &segs)
{
    std::stable_sort(segs.begin(), segs.end(), [](const FinalSegment &a, const FinalSegment &b) {
        return a.subset_of(b) && a != b;
    });
}

} // namespace hahnfield

#pragma once

#include <hahnfield/group.hpp>
#include <hahnfield/parallel.hpp>
#include <hahnfield/report.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hahnfield {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotIntegrableError : std::domain_error {
    using std::domain_error::domain_error;
};

// psi at class level: psi_hat(x) = -e_{omega(x)} + c (0 instead of the unit
// when omega(x) is Infinity). A FiniteChain couple may instead carry an
// explicit table of class values.
class AsymptoticCouple
{
public:
    static AsymptoticCouple from_shift(ChainPtr chain, GroupElement offset);
    static AsymptoticCouple from_table(ChainPtr chain, std::vector<GroupElement> values);

    const ChainPtr &chain() const { return chain_; }
    const GroupElement &offset() const { return offset_; }
    bool is_shift() const { return !table_.has_value(); }
    const std::optional<std::vector<GroupElement>> &table() const { return table_; }

    GroupElement sigma0(const ChainPoint &p) const;
    GroupElement psi_hat(const ChainPoint &p) const;
    ExtendedPoint omega_psi(const ChainPoint &p) const;

    GroupElement psi(const GroupElement &g) const;
    GroupElement dg(const GroupElement &g) const;

    // psi + x.
    AsymptoticCouple translated(const GroupElement &x) const;

private:
    AsymptoticCouple(ChainPtr chain, GroupElement offset) : chain_(std::move(chain)), offset_(std::move(offset)) {}

    ChainPtr chain_;
    GroupElement offset_;
    std::optional<std::vector<GroupElement>> table_;
};

AsymptoticCouple couple_from_shift(ChainPtr chain, const GroupElement &offset);
AsymptoticCouple couple_from_shift(ChainPtr chain);

GroupElement psi_apply(const AsymptoticCouple &c, const GroupElement &g);
GroupElement dg_apply(const AsymptoticCouple &c, const GroupElement &g);

struct AxiomBudget {
    ZWindow window;
    std::size_t random_samples = 200;
    std::uint64_t seed = 42;
    Exec exec = Exec::Parallel;
};

// AC1, AC2, AC3, ACH over all pairs of windowed class representatives
// plus random pairs.
std::vector<CheckReport> check_axioms(const AsymptoticCouple &c, const AxiomBudget &budget = {});

struct CutPointReport {
    ExtendedPoint cut_class;
    GroupElement witness;
};

CutPointReport find_cut_point(const AsymptoticCouple &c);

// Fixpoint class search over the windowed classes.
CutPointReport find_cut_point_scan(const AsymptoticCouple &c, const ZWindow &w = {});

std::optional<GroupElement> asymptotic_integral(const AsymptoticCouple &c, const GroupElement &h);

enum class TrichotomyKind { Gap, MaxPsi, AsymptoticIntegration };

struct TrichotomyClass {
    TrichotomyKind kind = TrichotomyKind::AsymptoticIntegration;
    std::optional<GroupElement> witness;
    std::vector<CheckReport> certificates;
};

const char *to_string(TrichotomyKind k);

TrichotomyClass classify_trichotomy(const AsymptoticCouple &c, const AxiomBudget &budget = {});

GroupElement contraction_chi(const AsymptoticCouple &c, const GroupElement &g);

// Class-level contraction value chi(-e_x) = integral of psi_hat(x), if any.
std::optional<GroupElement> chi_hat(const AsymptoticCouple &c, const ChainPoint &p);

struct NegativeTranslate {
    AsymptoticCouple couple;
    GroupElement x;
    ExtendedPoint alpha;
    CheckReport check;
};

NegativeTranslate translate_to_negative(const AsymptoticCouple &c, const ZWindow &w = {});

// Quasi-order on classes induced by omega_psi.
bool qo_class_leq(const AsymptoticCouple &c, const ChainPoint &a, const ChainPoint &b);

bool qo_psi_leq(const AsymptoticCouple &c, const GroupElement &g, const GroupElement &h);

} // namespace hahnfield

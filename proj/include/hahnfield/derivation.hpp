#pragma once

#include <hahnfield/couple.hpp>
#include <hahnfield/ranks.hpp>
#include <hahnfield/series.hpp>

#include <cstdint>
#include <vector>

namespace hahnfield {

// D(t^g) = t^g * sum over x in supp(g) of lambda_x * g_x * t^{psi_hat(x)}.
class DerivationConfig
{
public:
    explicit DerivationConfig(AsymptoticCouple couple, Rational default_lambda = -1);

    const AsymptoticCouple &couple() const { return couple_; }
    const ChainPtr &chain() const { return couple_.chain(); }

    void set_lambda(const ChainPoint &p, const Rational &lambda);
    Rational lambda(const ChainPoint &p) const;

private:
    AsymptoticCouple couple_;
    Rational default_lambda_;
    std::vector<std::pair<ChainPoint, Rational>> overrides_;
};

Series derive_monomial(const DerivationConfig &cfg, const GroupElement &g);
Series derive(const DerivationConfig &cfg, const Series &a);

// D(a)/a with every omitted exponent >= bound.
TruncatedSeries log_derivative(const DerivationConfig &cfg, const Series &a, const GroupElement &bound);

struct SampleBudget {
    ZWindow window;
    std::size_t samples = 500;
    std::uint64_t seed = 42;
    Exec exec = Exec::Parallel;
};

std::vector<CheckReport> check_dv_axioms(const DerivationConfig &cfg, const SampleBudget &budget = {});
std::vector<CheckReport> check_h_axioms(const DerivationConfig &cfg, const SampleBudget &budget = {});

struct InducedCouple {
    std::vector<std::pair<ChainPoint, ExtendedPoint>> class_map;
    CheckReport check;
};

InducedCouple induced_couple(const DerivationConfig &cfg, const ZWindow &w = {});

enum class ResidueClass {
    InDifferentialRank,
    InUnfoldedRankOnly,
    ResidueDerivationOnly,
    NoInducedDerivation,
    TrivialResidueDerivation,
};

const char *to_string(ResidueClass c);

// Coarsening w of v whose value group kernel is the lift of `segment`.
struct ResidueContext {
    FinalSegment segment;
    bool trivial_coarsening = false;

    bool w_nonnegative(const Series &a) const;
    bool w_positive(const Series &a) const;
    bool w_unit(const Series &a) const;
};

struct ResidueReport {
    ResidueContext context;
    ResidueClass classification = ResidueClass::InDifferentialRank;
    bool certified = false;
    std::vector<CheckReport> checks;
};

ResidueReport coarsen_residue(const DerivationConfig &cfg, const FinalSegment &segment, const SampleBudget &budget = {});

// D restricted to series supported in the lifted subgroup of the context.
Series residue_derive(const DerivationConfig &cfg, const ResidueContext &ctx, const Series &a);

} // namespace hahnfield

#pragma once

#include <hahnfield/derivation.hpp>
#include <hahnfield/io.hpp>
#include <hahnfield/ranks.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hahnfield {

// Q as a finite chain of labels in ascending order, and an optional
// generator of P (absent means P = Q).
struct RealizationSpec {
    std::vector<std::string> q_labels;
    std::optional<std::string> p_generator;
};

struct RealizationBudget {
    ZWindow window;
    std::size_t samples = 500;
    std::uint64_t seed = 42;
    Exec exec = Exec::Parallel;
};

struct RealizationCertificate {
    DerivationConfig config;
    RankReport rank;
    UnfoldedRankReport unfolded;
    // q label -> segment, for P and for Q.
    std::vector<std::pair<std::string, FinalSegment>> p_witness;
    std::vector<std::pair<std::string, FinalSegment>> q_witness;
    std::vector<CheckReport> reports;
    bool pass = false;
};

struct RealizationError : std::runtime_error {
    RealizationError(const std::string &what, CheckReport failing)
        : std::runtime_error(what), report(std::move(failing))
    {
    }
    CheckReport report;
};

// Builds the couple over Q x Z, runs every check, and returns the
// certificate. Throws RealizationError when a check fails.
RealizationCertificate realize(const RealizationSpec &spec, const RealizationBudget &budget = {});

// Same pipeline without throwing; pass is false on a failing check.
RealizationCertificate realize_unchecked(const RealizationSpec &spec, const RealizationBudget &budget = {});

Json certificate_to_json(const RealizationCertificate &cert);

} // namespace hahnfield

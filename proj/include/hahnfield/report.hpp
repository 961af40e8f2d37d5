#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hahnfield {

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchema = "hahnfield/1";

// Outcome of one sampled or exhaustive property sweep.
struct CheckReport {
    std::string axiom;
    std::size_t samples = 0;
    bool pass = true;
    std::optional<Json> counterexample;
    std::uint64_t seed = 0;
};

Json to_json(const CheckReport &r);

bool all_pass(const std::vector<CheckReport> &reports);

const CheckReport *first_failure(const std::vector<CheckReport> &reports);

} // namespace hahnfield

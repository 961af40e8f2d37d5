#include <hahnfield/report.hpp>

namespace hahnfield {

Json to_json(const CheckReport &r)
{
    Json j;
    j["axiom"] = r.axiom;
    j["samples"] = r.samples;
    j["pass"] = r.pass;
    if (r.counterexample) {
        j["counterexample"] = *r.counterexample;
    }
    j["seed"] = r.seed;
    return j;
}

bool all_pass(const std::vector<CheckReport> &reports)
{
    return first_failure(reports) == nullptr;
}

const CheckReport *first_failure(const std::vector<CheckReport> &reports)
{
    for (const auto &r : reports) {
        if (!r.pass) {
            return &r;
        }
    }
    return nullptr;
}

} // namespace hahnfield

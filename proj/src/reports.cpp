#include "rankcrank/reports.hpp"

namespace rankcrank {

nlohmann::ordered_json report_to_json(const IdentityReport& r) {
    nlohmann::ordered_json j;
    j["identity"] = r.identity;
    j["order"] = r.order;
    j["samples"] = r.samples;
    j["pass"] = r.pass;
    if (!r.pass) {
        j["fail_q"] = r.fail_q;
        j["fail_z"] = r.fail_z;
        j["lhs"] = r.lhs_value;
        j["rhs"] = r.rhs_value;
    }
    return j;
}

nlohmann::ordered_json report_to_json(const PointwiseReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["modulus"] = r.modulus;
    j["n_min"] = r.n_min;
    j["n_max"] = r.n_max;
    j["pass"] = r.pass;
    j["failures"] = r.failures;
    return j;
}

} // namespace rankcrank

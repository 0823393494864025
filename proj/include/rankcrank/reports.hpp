#ifndef RANKCRANK_REPORTS_HPP
#define RANKCRANK_REPORTS_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace rankcrank {

// Outcome of a coefficientwise series identity check.  fail_q / fail_z locate
// the first mismatched coefficient when pass is false (fail_z stays 0 for
// plain q-series identities).
struct IdentityReport {
    std::string identity;
    int order = 0;
    std::vector<std::string> samples;
    bool pass = true;
    int fail_q = -1;
    int fail_z = 0;
    std::string lhs_value;
    std::string rhs_value;
};

// Outcome of a pointwise check over an integer range, exact or modular
// (modulus 0 means exact equality of rationals).
struct PointwiseReport {
    std::string name;
    long modulus = 0;
    int n_min = 0;
    int n_max = 0;
    bool pass = true;
    std::vector<long> failures;
};

nlohmann::ordered_json report_to_json(const IdentityReport& r);
nlohmann::ordered_json report_to_json(const PointwiseReport& r);

} // namespace rankcrank

#endif

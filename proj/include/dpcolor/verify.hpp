#ifndef DPCOLOR_VERIFY_HPP
#define DPCOLOR_VERIFY_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpcolor/io.hpp"

namespace dpcolor {

// One checked value. pass is exact equality of expected and computed.
struct VerificationReport {
    std::string claim;
    std::string source;  // where the expected value comes from
    std::string expected;
    std::string computed;
    bool pass = false;
    std::chrono::nanoseconds elapsed{0};
};

struct ClaimInfo {
    std::string id;
    std::string summary;
    int criterion;  // acceptance criterion number
};

const std::vector<ClaimInfo>& claim_catalog();

struct VerifyOptions {
    // Claim id, or a report id / prefix of one within a claim.
    std::optional<std::string> filter;
    bool slow = false;
    std::uint64_t seed = 1;
};

// Runs every selected claim; a claim that throws yields a failing report.
// Throws ValidationError if the filter selects nothing.
std::vector<VerificationReport> verify_all(const VerifyOptions& opts = {});

Json report_to_json(const VerificationReport& r);
Json reports_to_json(const std::vector<VerificationReport>& rs);

}  // namespace dpcolor

#endif  // DPCOLOR_VERIFY_HPP

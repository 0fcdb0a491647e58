#include <cstring>
#include <iostream>
#include <map>

#include "dpcolor/verify.hpp"

using namespace dpcolor;

int main(int argc, char** argv) {
    VerifyOptions opts;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--slow") == 0) opts.slow = true;

    std::map<std::string, int> criterion_of;
    for (const ClaimInfo& c : claim_catalog()) criterion_of[c.id] = c.criterion;

    std::map<int, std::vector<const VerificationReport*>> by_criterion;
    const auto reports = verify_all(opts);
    for (const auto& r : reports) {
        for (const auto& [id, crit] : criterion_of)
            if (r.claim == id || r.claim.compare(0, id.size() + 1, id + "-") == 0) by_criterion[crit].push_back(&r);
    }

    bool all = true;
    for (int crit = 1; crit <= 10; ++crit) {
        const auto& rs = by_criterion[crit];
        bool pass = !rs.empty();
        double ms = 0;
        for (const auto* r : rs) {
            pass = pass && r->pass;
            ms += std::chrono::duration<double, std::milli>(r->elapsed).count();
        }
        all = all && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << crit << " (" << rs.size() << " checks, " << ms
                  << " ms)\n";
        for (const auto* r : rs)
            if (!r->pass)
                std::cout << "    " << r->claim << ": expected " << r->expected << ", computed " << r->computed << '\n';
    }
    return all ? 0 : 1;
}

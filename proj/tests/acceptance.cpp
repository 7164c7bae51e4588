#include <cstdio>

#include "nbgeo/verify.hpp"

int main() {
    const auto results = nbgeo::run_acceptance({});
    for (const auto& r : results)
        std::printf("%s  %-24s  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
    const bool ok = nbgeo::all_passed(results);
    std::printf("%s\n", ok ? "all criteria passed" : "CRITERIA FAILED");
    return ok ? 0 : 1;
}

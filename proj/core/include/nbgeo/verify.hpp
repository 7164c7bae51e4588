#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nbgeo {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::string only;                // substring filter on criterion names
    bool inject_sign_error = false;  // negative control: flips the sign of e1b
    std::uint64_t seed = 42;
    int threads = 0;
};

/// Runs the full verification matrix: the forward and converse classification
/// checks, oracle equivalence, the minimal-bundle equivalence, the polynomial
/// coefficient identities, the A_{JH}H remark, the Hamiltonian-stationary
/// cases, internal consistency (Codazzi, frame Gram, t-parity), and shape
/// recognition. Every tolerance is pinned in code.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace nbgeo

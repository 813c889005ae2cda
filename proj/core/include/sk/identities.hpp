#ifndef SK_IDENTITIES_HPP
#define SK_IDENTITIES_HPP

#include <map>
#include <string>
#include <vector>

#include "sk/factored.hpp"

namespace sk {

struct IdentityResult {
    bool holds = false;
    std::string name;
    std::map<std::string, int> params;
    std::string detail;  // set on failure
};

// Symbolic verification of one named summation identity. Both sides are
// assembled over a common denominator and compared exactly. Unknown names
// throw DomainError.
//
// Names and parameters:
//   pre_vandermonde(m)             higher_vandermonde(m, r, k)
//   vandermonde(m, r, s)           extended_vandermonde(m, p)
//   negative_vandermonde(m, s)     negative_vandermonde_sq(m)
//   shifted_inverse(m)             shifted_inverse_sq(m)
//   shifted_power(m, s)            shifted_power_top(m)
//   linear_sigma(m, r, s, l)       sigma_shift(m, r, s, shift in 1..3)
//   funny_product(d)               delta_log(d)
//   block_sum(m, d)                block_sum_top(d)
IdentityResult verify_identity(const std::string& name, const std::map<std::string, int>& params);

// The acceptance grid. Runs every identity family over the stated parameter
// ranges; returns all results.
std::vector<IdentityResult> run_identity_grid(int max_m = 6);

}  // namespace sk

#endif

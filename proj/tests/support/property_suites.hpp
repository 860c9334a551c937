#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace testsupport {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    bool pass() const { return failures == 0 && cases > 0; }
};

// Randomized exact property suites.  Every assertion is an integer equality;
// a failure records the offending germ.
SuiteResult run_divisibility_suite(int cases, std::uint64_t seed);      // M | P_M
SuiteResult run_conjugation_suite(int cases, std::uint64_t seed);       // mu, P, O invariance
SuiteResult run_prod_ind_suite(int cases, std::uint64_t seed);          // order of a composition
SuiteResult run_prod1_suite(int cases, std::uint64_t seed);             // component-product additivity
SuiteResult run_unit_matrix_suite(int cases, std::uint64_t seed);       // germ-matrix invariance
SuiteResult run_shub_sullivan_suite(int cases, std::uint64_t seed);     // index equality
SuiteResult run_cronin_dual_suite(int cases, std::uint64_t seed);       // fast path vs dual space
SuiteResult run_iterate_resonance_suite(int cases, std::uint64_t seed); // normal form iterates

std::vector<SuiteResult> run_all_property_suites(int cases, std::uint64_t seed);

} // namespace testsupport

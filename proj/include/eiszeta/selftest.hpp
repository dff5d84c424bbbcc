#ifndef EISZETA_SELFTEST_HPP
#define EISZETA_SELFTEST_HPP

#include <string>
#include <vector>

namespace eiszeta {

struct CriterionResult {
    int number;
    std::string name;
    bool pass;
    double seconds;
    std::string detail;
};

/// Runs the full acceptance battery (nine criteria) and reports one result
/// per criterion. seed drives the randomized algebra-law cases.
std::vector<CriterionResult> run_acceptance(unsigned seed = 12345);

}  // namespace eiszeta

#endif

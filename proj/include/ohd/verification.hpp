#ifndef OHD_VERIFICATION_HPP
#define OHD_VERIFICATION_HPP

#include <string>
#include <vector>

namespace ohd {

/// One entry of the built-in verification table.
struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Run the full invariant suite on the built-in scenarios.  Criterion 10
/// aggregates the rest, so the table passes as a whole iff every entry
/// passes.
std::vector<CriterionResult> verify_all();

} // namespace ohd

#endif

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polywell {

struct IdentityResult {
    std::string name;
    std::uint64_t samples;
    double max_residual; // worst scale-normalized residual observed
    double tolerance;
    bool pass;
};

/// Seeded random verification of the algebraic identities behind the
/// decomposition: the trace/minor and skew-norm identities over n in 2..6,
/// the 2x2 closed form with its sum-of-squares certificate, vanishing on
/// rotations, the 3x3 closed form, isotropy and frame invariance, the value
/// 27 of the origin-centered 3x3 form at the identity, and the -12 diagonal
/// of the finite-difference Hessian of the sphere-well form at the origin.
std::vector<IdentityResult> run_identity_suite(std::uint64_t seed);

bool all_pass(const std::vector<IdentityResult>& results);

} // namespace polywell

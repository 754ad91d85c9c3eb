#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polywell/energy.hpp"
#include "polywell/matrix.hpp"
#include "polywell/svd.hpp"

namespace polywell {

enum class Verdict { polyconvex, not_polyconvex };

/// Outcome of the polyconvexity test. On polyconvex: the half-gap factors as
/// a * Q with Q orthonormal (det +-1 allowed), and |delta - a Q| stays within
/// the certification tolerance. On not_polyconvex: a rank-one direction along
/// which the second derivative of g at Z = 0 is negative, when the zero-point
/// construction yields one (witness may be empty for n >= 3 when the largest
/// singular value is not dominant; the verdict still stands).
struct Certificate {
    Verdict verdict;
    std::vector<double> sigma;     // singular values of the half-gap, descending
    double sigma_spread = 0.0;     // sigma_1 - sigma_n

    // polyconvex payload
    double a = 0.0;
    std::optional<Matrix> Q;
    std::optional<Matrix> B;

    // not_polyconvex payload
    std::optional<RankOneDirection> witness;
    double violation_value = 0.0;  // hessian_rank_one at (0, witness); < 0

    bool polyconvex() const { return verdict == Verdict::polyconvex; }
};

struct CertifyOptions {
    double tol = 1e-8; // relative tolerance for singular-value equality
};

struct NotPolyconvexError : std::runtime_error {
    Certificate cert;
    NotPolyconvexError(std::string msg, Certificate c)
        : std::runtime_error(std::move(msg)), cert(std::move(c)) {}
};

/// Singular-value test: polyconvex iff (sigma_1 - sigma_n) <= tol (1 + sigma_1).
/// The relative form keeps the test meaningful for large wells. Coincident
/// wells short-circuit to a = 0, Q = I.
Certificate certify(const DoubleWell& dw, const CertifyOptions& opts = {});

/// Deterministic witness from the SVD of the half-gap: u and v are the top
/// singular vector pair, value = 4 |delta|^2 - 8 sigma_1^2. Requires the
/// strict dominance sigma_1^2 > sum(sigma_k^2) / 2; throws NoViolationExists
/// otherwise.
struct Violation {
    RankOneDirection direction;
    double value;
};
Violation find_violation(const DoubleWell& dw);

/// Seeded sweep of hessian_rank_one over random (Z, u, v) with |u| = |v| = 1
/// and |Z| <= 10. Sample index 0 is the deterministic zero-point witness
/// candidate when the SVD admits one, so a known violation is always in the
/// set. Reduction is a min with smallest-index tie-break, making the report
/// identical however samples are scheduled.
struct RankOneSampleReport {
    double min_value;
    Matrix argmin_z;
    RankOneDirection argmin_dir;
    std::uint64_t argmin_index;
    std::uint64_t samples;
    double max_z_norm; // largest |Z| actually drawn
};
RankOneSampleReport sample_rank_one(const DoubleWell& dw, std::uint64_t samples,
                                    std::uint64_t seed);

} // namespace polywell

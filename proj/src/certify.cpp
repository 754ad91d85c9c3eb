#include "polywell/certify.hpp"

#include <cmath>

#include "polywell/rng.hpp"

namespace polywell {

Certificate certify(const DoubleWell& dw, const CertifyOptions& opts) {
    if (opts.tol <= 0.0) throw ValidationError("certify: tol must be positive");
    const int n = dw.n;

    Certificate cert;
    cert.B = dw.mid;

    if (frobenius_norm_sq(dw.delta) == 0.0) {
        // coincident wells: f = |X - X1|^4 is convex outright
        cert.verdict = Verdict::polyconvex;
        cert.sigma.assign(n, 0.0);
        cert.sigma_spread = 0.0;
        cert.a = 0.0;
        cert.Q = Matrix::identity(n);
        return cert;
    }

    const SvdResult dec = svd(dw.delta);
    cert.sigma = dec.sigma;
    cert.sigma_spread = dec.sigma.front() - dec.sigma.back();

    if (cert.sigma_spread <= opts.tol * (1.0 + dec.sigma.front())) {
        cert.verdict = Verdict::polyconvex;
        double mean = 0.0;
        for (double s : dec.sigma) mean += s;
        cert.a = mean / n; // least-squares uniform fit under the tolerance
        cert.Q = matmul(dec.U, dec.V.transpose());
        return cert;
    }

    cert.verdict = Verdict::not_polyconvex;
    try {
        Violation viol = find_violation(dw);
        cert.witness = std::move(viol.direction);
        cert.violation_value = viol.value;
    } catch (const NoViolationExists&) {
        // unequal singular values with no dominant one: the theorem still
        // rules out polyconvexity but the zero-point construction is silent
        cert.witness.reset();
    }
    return cert;
}

Violation find_violation(const DoubleWell& dw) {
    const SvdResult dec = svd(dw.delta);
    const int n = dw.n;

    double sum_sq = 0.0;
    for (double s : dec.sigma) sum_sq += s * s;
    const double top_sq = dec.sigma[0] * dec.sigma[0];
    if (!(top_sq > 0.5 * sum_sq))
        throw NoViolationExists("find_violation: sigma_1^2 <= sum(sigma^2)/2, the zero-point "
                                "construction yields no negative direction");

    RankOneDirection dir;
    dir.u.resize(n);
    dir.v.resize(n);
    for (int r = 0; r < n; ++r) {
        dir.u[r] = dec.U(r, 0);
        dir.v[r] = dec.V(r, 0);
    }
    const double value = 4.0 * sum_sq - 8.0 * top_sq;
    return Violation{std::move(dir), value};
}

RankOneSampleReport sample_rank_one(const DoubleWell& dw, std::uint64_t samples,
                                    std::uint64_t seed) {
    if (samples < 1) throw ValidationError("sample_rank_one: samples must be >= 1");
    const int n = dw.n;

    RankOneSampleReport report{0.0, Matrix(n), RankOneDirection{}, 0, samples, 0.0};
    bool have_min = false;

    auto consider = [&](double value, const Matrix& z, const RankOneDirection& d,
                        std::uint64_t index) {
        if (!have_min || value < report.min_value) {
            have_min = true;
            report.min_value = value;
            report.argmin_z = z;
            report.argmin_dir = d;
            report.argmin_index = index;
        }
    };

    // index 0: the deterministic zero-point candidate from the SVD
    {
        const SvdResult dec = svd(dw.delta);
        RankOneDirection d;
        d.u.resize(n);
        d.v.resize(n);
        for (int r = 0; r < n; ++r) {
            d.u[r] = dec.U(r, 0);
            d.v[r] = dec.V(r, 0);
        }
        Matrix z0(n);
        consider(hessian_rank_one(dw, z0, d), z0, d, 0);
    }

    for (std::uint64_t idx = 1; idx < samples; ++idx) {
        Rng rng = Rng::derived(seed, idx);
        Matrix z(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) z(i, j) = rng.normal();
        const double zn = std::sqrt(frobenius_norm_sq(z));
        const double radius = rng.uniform(0.0, 10.0);
        if (zn > 0.0) z *= radius / zn;

        RankOneDirection d;
        d.u.resize(n);
        d.v.resize(n);
        double un = 0.0;
        double vn = 0.0;
        for (int i = 0; i < n; ++i) {
            d.u[i] = rng.normal();
            d.v[i] = rng.normal();
            un += d.u[i] * d.u[i];
            vn += d.v[i] * d.v[i];
        }
        un = std::sqrt(un);
        vn = std::sqrt(vn);
        if (un == 0.0 || vn == 0.0) continue; // unobservable with a real RNG
        for (int i = 0; i < n; ++i) {
            d.u[i] /= un;
            d.v[i] /= vn;
        }

        const double z_norm = std::sqrt(frobenius_norm_sq(z));
        if (z_norm > report.max_z_norm) report.max_z_norm = z_norm;
        consider(hessian_rank_one(dw, z, d), z, d, idx);
    }
    return report;
}

} // namespace polywell

#include "npg2/np_system.hpp"

#include <cmath>

namespace npg2 {

namespace detail {

Vec5 rhs_f_raw(const FCoeffs& f, double lambda)
{
    const double b1 = f.f1 * f.f4 - f.f3 * f.f3;
    const double b2 = f.f2 * f.f3 - f.f4 * f.f4;
    const double m = 0.5 * (f.f1 * f.f2 - f.f3 * f.f4);

    const double f0p3 = f.f0 * f.f0 * f.f0;
    const double f0p4 = f0p3 * f.f0;

    Vec5 d;
    d[1] = lambda / f0p3 * (f.f1 * m - f.f3 * b1);
    d[2] = lambda / f0p3 * (f.f4 * b2 - f.f2 * m);
    d[3] = 6.0 * f.f0 + lambda / (2.0 * f0p3) * (f.f1 * b2 - f.f4 * b1);
    d[4] = -6.0 * f.f0 + lambda / (2.0 * f0p3) * (f.f3 * b2 - f.f2 * b1);
    d[0] = -1.5 / f0p4 * ((f.f1 + f.f3) * b2 - (f.f2 + f.f4) * b1);
    return d;
}

} // namespace detail

Vec5 rhs_f(const FCoeffs& f, double lambda)
{
    if (!is_admissible(f))
        throw NonAdmissibleError("rhs_f requires an admissible 3-form");
    return detail::rhs_f_raw(f, lambda);
}

ConstraintValues constraints(const FCoeffs& f, double lambda)
{
    const double b1 = f.f1 * f.f4 - f.f3 * f.f3;
    const double b2 = f.f2 * f.f3 - f.f4 * f.f4;
    const double m = f.f1 * f.f2 - f.f3 * f.f4;
    const double f0sq = f.f0 * f.f0;
    const double f0p6 = f0sq * f0sq * f0sq;

    ConstraintValues c;
    c.r1 = f.f3 + f.f4 + lambda / 6.0 * f0sq;
    c.r2 = b1 * b2 - 0.25 * m * m - f0p6;
    return c;
}

std::array<double, 6> np_residual(const FCoeffs& f, const Vec5& fprime, double lambda)
{
    if (!is_admissible(f))
        throw NonAdmissibleError("np_residual requires an admissible 3-form");

    const FourForm d = exterior_derivative(f, fprime);
    const FourForm s = detail::hodge_dual_raw(f);

    std::array<double, 6> r;
    for (int i = 0; i < 5; ++i)
        r[i] = d[i] - lambda * s[i];
    r[5] = arc_length_residual(f);
    return r;
}

SeedResult seed_on_constraint(double f0, double f1, double f3, double lambda,
                              const std::optional<FCoeffs>& reference)
{
    if (f0 == 0.0)
        throw NonAdmissibleError("seed_on_constraint requires f0 != 0");

    const double f4 = -f3 - lambda / 6.0 * f0 * f0; // R1 = 0
    const double b1 = f1 * f4 - f3 * f3;
    if (!(b1 < 0.0))
        throw NoAdmissibleRootError("f1 f4 - f3^2 >= 0; no admissible completion exists");

    const double f0sq = f0 * f0;
    const double f0p6 = f0sq * f0sq * f0sq;

    // R2 as a polynomial in f2:
    //   -(f1^2/4) f2^2 + (b1 f3 + f1 f3 f4 / 2) f2 - (b1 f4^2 + f3^2 f4^2 / 4 + f0^6)
    const double qa = -0.25 * f1 * f1;
    const double qb = b1 * f3 + 0.5 * f1 * f3 * f4;
    const double qc = -(b1 * f4 * f4 + 0.25 * f3 * f3 * f4 * f4 + f0p6);

    const auto admissible_f2 = [&](double f2) { return f2 * f3 - f4 * f4 < 0.0; };
    const auto make = [&](double f2) { return FCoeffs{f0, f1, f2, f3, f4}; };

    if (qa == 0.0) {
        // f1 = 0: the equation is linear in f2.
        if (qb == 0.0)
            throw DegenerateSeedError("f1 = 0 and the f2-equation degenerates to a constant");
        const double f2 = -qc / qb;
        if (!admissible_f2(f2))
            throw NoAdmissibleRootError("linear branch root violates f2 f3 - f4^2 < 0");
        SeedResult r;
        r.f = make(f2);
        r.used_linear_branch = true;
        return r;
    }

    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0)
        throw NoAdmissibleRootError("R2 = 0 has no real root in f2");

    // Stable quadratic roots.
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
    const double root_a = q / qa;
    const double root_b = (q != 0.0) ? qc / q : root_a;

    const bool ok_a = admissible_f2(root_a);
    const bool ok_b = admissible_f2(root_b) && root_b != root_a;

    SeedResult r;
    if (ok_a && ok_b) {
        r.both_roots_admissible = true;
        double take = root_a, other = root_b;
        if (reference) {
            if (std::abs(root_b - reference->f2) < std::abs(root_a - reference->f2))
                std::swap(take, other);
        } else if (std::abs(root_b) > std::abs(root_a)) {
            std::swap(take, other);
        }
        r.f = make(take);
        r.alternate_f2 = other;
    } else if (ok_a || ok_b) {
        r.f = make(ok_a ? root_a : root_b);
    } else {
        throw NoAdmissibleRootError("neither root of R2 = 0 satisfies f2 f3 - f4^2 < 0");
    }
    return r;
}

} // namespace npg2

#include "npg2/g2_algebra.hpp"

#include <cmath>

namespace npg2 {

namespace {

// (f1^2 f2^2 - 6 f1 f2 f3 f4 + 4 f1 f4^3 + 4 f2 f3^3 - 3 f3^2 f4^2); the bilinear-form
// determinant is (1/64) f0^9 times the cube of this.
double det_bracket(const FCoeffs& f)
{
    const double f12 = f.f1 * f.f2;
    const double f34 = f.f3 * f.f4;
    return f12 * f12 - 6.0 * f12 * f34 + 4.0 * f.f1 * f.f4 * f.f4 * f.f4
         + 4.0 * f.f2 * f.f3 * f.f3 * f.f3 - 3.0 * f34 * f34;
}

void require_admissible(const FCoeffs& f)
{
    if (!is_admissible(f))
        throw NonAdmissibleError("3-form is not admissible");
}

void require_normalized(const FCoeffs& f, double tol)
{
    const double r = arc_length_residual(f);
    if (!(std::abs(r) <= tol))
        throw NotNormalizedError("coefficients violate the arc-length normalization");
}

} // namespace

double FCoeffs::operator[](int i) const
{
    switch (i) {
    case 0: return f0;
    case 1: return f1;
    case 2: return f2;
    case 3: return f3;
    default: return f4;
    }
}

double& FCoeffs::operator[](int i)
{
    switch (i) {
    case 0: return f0;
    case 1: return f1;
    case 2: return f2;
    case 3: return f3;
    default: return f4;
    }
}

double FourForm::operator[](int i) const
{
    switch (i) {
    case 0: return s1;
    case 1: return s2;
    case 2: return s3;
    case 3: return s4;
    default: return s5;
    }
}

bool is_admissible(const FCoeffs& f)
{
    return f.f0 != 0.0 && f.f1 * f.f4 - f.f3 * f.f3 < 0.0 && f.f2 * f.f3 - f.f4 * f.f4 < 0.0;
}

GramBlocks gram_blocks(const FCoeffs& f)
{
    GramBlocks b;
    b.b1 = f.f1 * f.f4 - f.f3 * f.f3;
    b.b2 = f.f2 * f.f3 - f.f4 * f.f4;
    b.b3 = 0.5 * (f.f1 * f.f2 - f.f3 * f.f4);

    const double p = det_bracket(f);
    const double f0sq = f.f0 * f.f0;
    const double f0p4 = f0sq * f0sq;
    const double f0p9 = f0p4 * f0p4 * f.f0;
    b.detB = (1.0 / 64.0) * f0p9 * p * p * p;
    return b;
}

double arc_length_residual(const FCoeffs& f)
{
    return f.f0 * f.f0 + std::cbrt(0.25 * det_bracket(f));
}

MetricBlocks metric_blocks(const FCoeffs& f, double tol)
{
    require_admissible(f);
    require_normalized(f, tol);

    const double f0sq = f.f0 * f.f0;
    MetricBlocks g;
    g.g1 = (f.f3 * f.f3 - f.f1 * f.f4) / f0sq;
    g.g2 = (f.f4 * f.f4 - f.f2 * f.f3) / f0sq;
    g.g3 = (f.f3 * f.f4 - f.f1 * f.f2) / (2.0 * f0sq);
    return g;
}

namespace detail {

FourForm hodge_dual_raw(const FCoeffs& f)
{
    const double inv = 1.0 / (2.0 * f.f0 * f.f0 * f.f0);
    FourForm s;
    s.s1 = inv * (f.f1 * f.f1 * f.f2 - 3.0 * f.f1 * f.f3 * f.f4 + 2.0 * f.f3 * f.f3 * f.f3);
    s.s2 = -inv * (f.f1 * f.f2 * f.f2 - 3.0 * f.f2 * f.f3 * f.f4 + 2.0 * f.f4 * f.f4 * f.f4);
    s.s3 = inv * (f.f1 * f.f2 * f.f3 - 2.0 * f.f1 * f.f4 * f.f4 + f.f3 * f.f3 * f.f4);
    s.s4 = -inv * (f.f1 * f.f2 * f.f4 - 2.0 * f.f2 * f.f3 * f.f3 + f.f3 * f.f4 * f.f4);
    s.s5 = -f.f0 * f.f0;
    return s;
}

} // namespace detail

FourForm hodge_dual(const FCoeffs& f, double tol)
{
    require_admissible(f);
    require_normalized(f, tol);
    return detail::hodge_dual_raw(f);
}

FourForm exterior_derivative(const FCoeffs& f, const Vec5& fprime)
{
    FourForm s;
    s.s1 = fprime[1];
    s.s2 = fprime[2];
    s.s3 = fprime[3] - 6.0 * f.f0;
    s.s4 = fprime[4] + 6.0 * f.f0;
    s.s5 = 6.0 * (f.f3 + f.f4);
    return s;
}

SingularPointForm singular_point_form(double f2_at_0, double f0prime_at_0)
{
    return SingularPointForm{-(8.0 / 27.0) * f2_at_0, -(2.0 / 9.0) * f0prime_at_0};
}

} // namespace npg2

#pragma once

// Pointwise multilinear algebra of the SU(2)^3-invariant 3-form
//
//   phi = f0 e^1^(e^25+e^36+e^47) + f1 e^234 + f2 e^567
//       + f3 (e^237-e^246+e^345) + f4 (e^267-e^357+e^456)
//
// along the transverse curve: Gram blocks of the induced bilinear form,
// the metric in arc-length gauge, the Hodge dual, the exterior derivative,
// and the limit form at a singular orbit.

#include <array>

#include "npg2/errors.hpp"

namespace npg2 {

using Vec5 = std::array<double, 5>; // derivative / residual five-vectors, index i <-> f_i

struct FCoeffs {
    double f0 = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    double f4 = 0.0;

    double operator[](int i) const;
    double& operator[](int i);
};

// Diagonal blocks of the bilinear form B_phi = f0 * diag(-f0^2, b1 I, b3 I | b3 I, b2 I)
// and its 7x7 determinant.
struct GramBlocks {
    double b1 = 0.0; // f1 f4 - f3^2
    double b2 = 0.0; // f2 f3 - f4^2
    double b3 = 0.0; // (f1 f2 - f3 f4) / 2
    double detB = 0.0;
};

// Induced metric blocks in arc-length gauge: g = diag(1, g1 I, g3 I | g3 I, g2 I).
struct MetricBlocks {
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;

    bool positive_definite() const { return g1 > 0.0 && g1 * g2 - g3 * g3 > 0.0; }
};

// Invariant 4-form in the basis
//   s1 e^1^e^234, s2 e^1^e^567, s3 e^1^(e^237-e^246+e^345),
//   s4 e^1^(e^267-e^357+e^456), s5 (e^2356+e^2457+e^3467).
struct FourForm {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;
    double s5 = 0.0;

    double operator[](int i) const;
};

// Limit 3-form at the singular orbit; stable (defines a metric) iff Ap*Bp < 0.
struct SingularPointForm {
    double Ap = 0.0; // -(8/27) f2(0)
    double Bp = 0.0; // -(2/9) f0'(0)

    bool stable() const { return Ap * Bp < 0.0; }
};

inline constexpr double kDefaultNormalizationTol = 1e-9;

// Admissibility: f0 != 0, f1 f4 - f3^2 < 0, f2 f3 - f4^2 < 0.
bool is_admissible(const FCoeffs& f);

GramBlocks gram_blocks(const FCoeffs& f);

// Arc-length gauge defect: f0^2 + cbrt((f1^2 f2^2 - 6 f1 f2 f3 f4 + 4 f1 f4^3
// + 4 f2 f3^3 - 3 f3^2 f4^2)/4), with the sign-preserving real cube root.
// Zero iff g(e1,e1) = 1.
double arc_length_residual(const FCoeffs& f);

// Requires admissibility and arc-length normalization within tol.
MetricBlocks metric_blocks(const FCoeffs& f, double tol = kDefaultNormalizationTol);

// Hodge dual *phi in arc-length gauge. Requires admissibility and normalization.
FourForm hodge_dual(const FCoeffs& f, double tol = kDefaultNormalizationTol);

// d phi for coefficient derivatives fprime; uses dw = 6(phi3 - phi4), dphi3 = dphi4 = 6 alpha.
FourForm exterior_derivative(const FCoeffs& f, const Vec5& fprime);

SingularPointForm singular_point_form(double f2_at_0, double f0prime_at_0);

namespace detail {
// Hodge-dual formulas without the admissibility/normalization gate; f0 != 0 assumed.
FourForm hodge_dual_raw(const FCoeffs& f);
} // namespace detail

} // namespace npg2

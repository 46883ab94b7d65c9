#pragma once

// The desingularized system at the singular orbit. Substituting
//
//   f0 = t h0,  f1 = t^4 h1,  f2 = h2,  f3 = t^2 h3,  f4 = t^2 h4,
//   h4 = -h3 - (lambda/6) h0^2,
//
// into the coefficient ODEs gives the singular initial value problem
//
//   h' = A(h)/t + B(h,t),   h(0) = (a, 27 lambda/4, -a^3/27, 3a),
//
// with A vanishing at the initial state and B odd in t. The field evaluation
// is templated on the scalar so the same formulas drive double integration,
// long-double residual diagnostics, and the jet recurrence of the Taylor
// startup.

#include <array>
#include <vector>

#include "npg2/g2_algebra.hpp"
#include "npg2/jets.hpp"

namespace npg2 {

struct HState {
    double h0 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;
};

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

double h4_of(const HState& h, double lambda);

FCoeffs f_from_h(const HState& h, double t, double lambda);

// Generic field evaluation. S must support ring operations with itself and
// with double, and division.
template <class S>
std::array<S, 4> a_field_eval(const std::array<S, 4>& h, double lambda)
{
    const S& h0 = h[0];
    const S& h1 = h[1];
    const S& h2 = h[2];
    const S& h3 = h[3];
    const S h0p3 = h0 * h0 * h0;
    const S h0p4 = h0p3 * h0;
    return {-h0 - 3.0 * h2 * h3 * h3 / h0p4,
            -4.0 * h1 + lambda * h3 * h3 * h3 / h0p3,
            0.0 * h0,
            -2.0 * h3 + 6.0 * h0};
}

template <class S>
std::array<S, 4> b_field_eval(const std::array<S, 4>& h, const S& t, double lambda)
{
    const S& h0 = h[0];
    const S& h1 = h[1];
    const S& h2 = h[2];
    const S& h3 = h[3];
    const S h4 = -h3 - (lambda / 6.0) * h0 * h0;
    const S h0p3 = h0 * h0 * h0;
    const S h0p4 = h0p3 * h0;
    const S t2 = t * t;

    const S b0 = -1.5 * (t * (h3 - h4) * (h1 * h2 + h3 * h4) - 2.0 * t * t2 * h1 * h4 * h4) / h0p4;
    const S b1 = (0.5 * lambda) * t * (h1 * h1 * h2 - 3.0 * h1 * h3 * h4) / h0p3;
    const S b2 = lambda * t * (h4 * (h2 * h3 - t2 * h4 * h4) - 0.5 * h2 * (h1 * h2 - h3 * h4)) / h0p3;
    const S b3 = (0.5 * lambda) * t * (h1 * h2 * h3 + h3 * h3 * h4 - 2.0 * t2 * h1 * h4 * h4) / h0p3;
    return {b0, b1, b2, b3};
}

// Double-precision entry points; throw ZeroH0Error at h0 = 0.
Vec4 a_field(const HState& h, double lambda);
Vec4 b_field(const HState& h, double t, double lambda);

// A(h)/t + B(h,t) for t != 0.
Vec4 rhs_h(const HState& h, double t, double lambda);

struct InitialData {
    double a = 0.0;
    double lambda = 1.0;
    HState hbar; // (a, 27 lambda/4, -a^3/27, 3a); h3 = 3 h0 is the orbit-closing jet condition
};

// Throws ZeroAError for a = 0; the constructed state satisfies A(hbar) = 0.
InitialData initial_state(double a, double lambda);

// Jacobian dA at hbar. Its characteristic polynomial det(dA - l I) equals
// l(l+4)(l^2+7l+6) independently of a and lambda, so l I - dA is invertible
// for every integer l >= 1 and the series recurrence below is solvable.
Mat4 linearization(double a, double lambda);

// det(M - l I) by elimination with partial pivoting.
double shifted_determinant(const Mat4& m, double l);

// Even jet of the solution at t = 0: h(t) = sum_k c[k] t^{2k}.
struct TruncatedEvenSeries {
    double lambda = 1.0;
    int order = 0;                 // highest retained power N (even)
    std::vector<Vec4> coeff;       // c[k] multiplies t^{2k}, k = 0..N/2

    HState eval(double t) const;
    Vec4 eval_derivative(double t) const;
};

// Coefficients from matching t^{2k-1} in t h' = A(h) + t B(h,t):
// (2k I - dA) c_{2k} = [A(h) + t B]_{t^{2k}} with c_{2k} excluded.
TruncatedEvenSeries taylor_startup(const InitialData& init, int order);

// Residual h'(t) - A(h(t))/t - B(h(t),t) of the truncated series, evaluated
// in long double so the truncation order is measurable above the double
// rounding floor of A/t.
Vec4 series_residual(const TruncatedEvenSeries& series, double t);

} // namespace npg2

#include "npg2/singular_ivp.hpp"

#include <cmath>

namespace npg2 {

namespace {

// Solves M x = b by Gaussian elimination with partial pivoting.
Vec4 solve4(Mat4 m, Vec4 b)
{
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col]))
                piv = r;
        if (std::abs(m[piv][col]) < 1e-12)
            throw SingularRecurrenceError("series recurrence matrix is numerically singular");
        std::swap(m[col], m[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 4; ++r) {
            const double fac = m[r][col] / m[col][col];
            if (fac == 0.0)
                continue;
            for (int c = col; c < 4; ++c)
                m[r][c] -= fac * m[col][c];
            b[r] -= fac * b[col];
        }
    }
    Vec4 x{};
    for (int r = 3; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < 4; ++c)
            acc -= m[r][c] * x[c];
        x[r] = acc / m[r][r];
    }
    return x;
}

} // namespace

double h4_of(const HState& h, double lambda)
{
    return -h.h3 - lambda / 6.0 * h.h0 * h.h0;
}

FCoeffs f_from_h(const HState& h, double t, double lambda)
{
    const double t2 = t * t;
    FCoeffs f;
    f.f0 = t * h.h0;
    f.f1 = t2 * t2 * h.h1;
    f.f2 = h.h2;
    f.f3 = t2 * h.h3;
    f.f4 = t2 * h4_of(h, lambda);
    return f;
}

Vec4 a_field(const HState& h, double lambda)
{
    if (h.h0 == 0.0)
        throw ZeroH0Error("A(h) requires h0 != 0");
    return a_field_eval<double>({h.h0, h.h1, h.h2, h.h3}, lambda);
}

Vec4 b_field(const HState& h, double t, double lambda)
{
    if (h.h0 == 0.0)
        throw ZeroH0Error("B(h,t) requires h0 != 0");
    return b_field_eval<double>({h.h0, h.h1, h.h2, h.h3}, t, lambda);
}

Vec4 rhs_h(const HState& h, double t, double lambda)
{
    const Vec4 a = a_field(h, lambda);
    const Vec4 b = b_field(h, t, lambda);
    Vec4 r;
    for (int i = 0; i < 4; ++i)
        r[i] = a[i] / t + b[i];
    return r;
}

InitialData initial_state(double a, double lambda)
{
    if (a == 0.0)
        throw ZeroAError("the family parameter a must be nonzero");
    InitialData init;
    init.a = a;
    init.lambda = lambda;
    init.hbar = HState{a, 6.75 * lambda, -a * a * a / 27.0, 3.0 * a};
    return init;
}

Mat4 linearization(double a, double lambda)
{
    if (a == 0.0)
        throw ZeroAError("linearization requires a != 0");
    const HState h = initial_state(a, lambda).hbar;
    const double h0 = h.h0, h2 = h.h2, h3 = h.h3;
    const double h0p3 = h0 * h0 * h0;
    const double h0p4 = h0p3 * h0;
    const double h0p5 = h0p4 * h0;

    Mat4 m{};
    m[0][0] = -1.0 + 12.0 * h2 * h3 * h3 / h0p5;
    m[0][2] = -3.0 * h3 * h3 / h0p4;
    m[0][3] = -6.0 * h2 * h3 / h0p4;
    m[1][0] = -3.0 * lambda * h3 * h3 * h3 / h0p4;
    m[1][1] = -4.0;
    m[1][3] = 3.0 * lambda * h3 * h3 / h0p3;
    m[3][0] = 6.0;
    m[3][3] = -2.0;
    return m;
}

double shifted_determinant(const Mat4& m, double l)
{
    Mat4 a = m;
    for (int i = 0; i < 4; ++i)
        a[i][i] -= l;

    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        if (a[piv][col] == 0.0)
            return 0.0;
        if (piv != col) {
            std::swap(a[col], a[piv]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double fac = a[r][col] / a[col][col];
            if (fac == 0.0)
                continue;
            for (int c = col; c < 4; ++c)
                a[r][c] -= fac * a[col][c];
        }
    }
    return det;
}

HState TruncatedEvenSeries::eval(double t) const
{
    const double u = t * t;
    Vec4 acc{};
    for (size_t k = coeff.size(); k-- > 0;)
        for (int i = 0; i < 4; ++i)
            acc[i] = acc[i] * u + coeff[k][i];
    return HState{acc[0], acc[1], acc[2], acc[3]};
}

Vec4 TruncatedEvenSeries::eval_derivative(double t) const
{
    // d/dt sum c_k t^{2k} = t * sum 2k c_k u^{k-1}, u = t^2
    const double u = t * t;
    Vec4 acc{};
    for (size_t k = coeff.size(); k-- > 1;)
        for (int i = 0; i < 4; ++i)
            acc[i] = acc[i] * u + 2.0 * static_cast<double>(k) * coeff[k][i];
    for (int i = 0; i < 4; ++i)
        acc[i] *= t;
    return acc;
}

TruncatedEvenSeries taylor_startup(const InitialData& init, int order)
{
    if (order < 2 || order % 2 != 0)
        throw InvalidConfigError("series order must be even and >= 2");

    TruncatedEvenSeries s;
    s.lambda = init.lambda;
    s.order = order;
    s.coeff.assign(static_cast<size_t>(order / 2) + 1, Vec4{});
    s.coeff[0] = {init.hbar.h0, init.hbar.h1, init.hbar.h2, init.hbar.h3};

    const Mat4 da = linearization(init.a, init.lambda);

    for (int k = 1; 2 * k <= order; ++k) {
        const int trunc = 2 * k;

        // Partial series with c_{2k} still zero.
        std::array<Jet, 4> h;
        for (int i = 0; i < 4; ++i) {
            h[i] = Jet(trunc);
            for (int j = 0; j < k; ++j)
                h[i].set_coeff(2 * j, s.coeff[static_cast<size_t>(j)][i]);
        }
        const Jet t = Jet::variable(trunc);

        const std::array<Jet, 4> a = a_field_eval<Jet>(h, init.lambda);
        const std::array<Jet, 4> b = b_field_eval<Jet>(h, t, init.lambda);

        // F = [A(h) + t B(h,t)]_{t^{2k}}; c_{2k} enters that coefficient only
        // through dA, so (2k I - dA) c_{2k} = F.
        Vec4 rhs;
        for (int i = 0; i < 4; ++i) {
            const Jet tb = t * b[i];
            rhs[i] = a[i].coeff(trunc) + tb.coeff(trunc);
        }

        Mat4 m{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                m[i][j] = (i == j ? 2.0 * k : 0.0) - da[i][j];
        s.coeff[static_cast<size_t>(k)] = solve4(m, rhs);
    }
    return s;
}

Vec4 series_residual(const TruncatedEvenSeries& series, double t)
{
    using LD = long double;
    const LD u = static_cast<LD>(t) * static_cast<LD>(t);

    std::array<LD, 4> h{}, dh{};
    for (size_t k = series.coeff.size(); k-- > 0;)
        for (int i = 0; i < 4; ++i)
            h[i] = h[i] * u + static_cast<LD>(series.coeff[k][i]);
    for (size_t k = series.coeff.size(); k-- > 1;)
        for (int i = 0; i < 4; ++i)
            dh[i] = dh[i] * u + 2.0L * static_cast<LD>(k) * static_cast<LD>(series.coeff[k][i]);
    for (int i = 0; i < 4; ++i)
        dh[i] *= static_cast<LD>(t);

    const std::array<LD, 4> a = a_field_eval<LD>(h, series.lambda);
    const std::array<LD, 4> b = b_field_eval<LD>(h, static_cast<LD>(t), series.lambda);

    Vec4 r;
    for (int i = 0; i < 4; ++i)
        r[i] = static_cast<double>(dh[i] - a[i] / static_cast<LD>(t) - b[i]);
    return r;
}

} // namespace npg2

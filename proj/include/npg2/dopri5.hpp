#pragma once

// Dormand-Prince 5(4) embedded pair with the standard quartic dense-output
// interpolant. Fixed evaluation order throughout, so identical inputs give
// bit-identical trajectories on one platform.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace npg2 {

template <int N>
struct Dopri5 {
    using Y = std::array<double, N>;

    struct DenseSegment {
        double t0 = 0.0;
        double h = 0.0;
        std::array<Y, 5> rcont{};

        double t1() const { return t0 + h; }

        Y eval(double t) const
        {
            const double theta = (t - t0) / h;
            const double theta1 = 1.0 - theta;
            Y y;
            for (int i = 0; i < N; ++i)
                y[i] = rcont[0][i]
                     + theta * (rcont[1][i]
                     + theta1 * (rcont[2][i]
                     + theta * (rcont[3][i] + theta1 * rcont[4][i])));
            return y;
        }
    };

    struct Attempt {
        Y ynew{};
        Y k_last{};       // stage 7 = f(t+h, ynew), reusable as the next k1
        DenseSegment dense{};
        double err = 0.0; // weighted RMS error estimate; accept when <= 1
        bool finite = true;
    };

    // One trial step from (t, y) with slope k1 = f(t, y). RHS: bool(double, const Y&, Y&);
    // returning false marks the stage (and the attempt) as non-finite.
    template <class RHS>
    static Attempt attempt_step(RHS&& f, double t, const Y& y, const Y& k1, double h,
                                double atol, double rtol)
    {
        constexpr double a21 = 1.0 / 5;
        constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                         a54 = -212.0 / 729;
        constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                         a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                         a75 = -2187.0 / 6784, a76 = 11.0 / 84;
        constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                         e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
        constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                         d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                         d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

        Attempt out;
        Y k2, k3, k4, k5, k6, k7, yt;

        auto stage = [&](double ct, const Y& ys, Y& k) {
            if (!f(t + ct * h, ys, k)) {
                out.finite = false;
                return false;
            }
            for (int i = 0; i < N; ++i)
                if (!std::isfinite(k[i])) {
                    out.finite = false;
                    return false;
                }
            return true;
        };

        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * a21 * k1[i];
        if (!stage(c2, yt, k2))
            return out;
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        if (!stage(c3, yt, k3))
            return out;
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        if (!stage(c4, yt, k4))
            return out;
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        if (!stage(c5, yt, k5))
            return out;
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        if (!stage(1.0, yt, k6))
            return out;
        for (int i = 0; i < N; ++i)
            out.ynew[i] =
                y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        if (!stage(1.0, out.ynew, k7))
            return out;
        out.k_last = k7;

        double err = 0.0;
        for (int i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]
                                   + e7 * k7[i]);
            const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(out.ynew[i]));
            const double q = ei / sk;
            err += q * q;
        }
        err = std::sqrt(err / N);
        if (!std::isfinite(err)) {
            out.finite = false;
            return out;
        }
        out.err = err;

        out.dense.t0 = t;
        out.dense.h = h;
        for (int i = 0; i < N; ++i) {
            const double ydiff = out.ynew[i] - y[i];
            const double bspl = h * k1[i] - ydiff;
            out.dense.rcont[0][i] = y[i];
            out.dense.rcont[1][i] = ydiff;
            out.dense.rcont[2][i] = bspl;
            out.dense.rcont[3][i] = ydiff - h * k7[i] - bspl;
            out.dense.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i]
                                         + d6 * k6[i] + d7 * k7[i]);
        }
        return out;
    }

    static double initial_step(const Y& y, const Y& k1, double atol, double rtol)
    {
        double dny = 0.0, dnf = 0.0;
        for (int i = 0; i < N; ++i) {
            const double s = atol + rtol * std::abs(y[i]);
            const double a = y[i] / s, b = k1[i] / s;
            dny += a * a;
            dnf += b * b;
        }
        if (dnf <= 1e-10 || dny <= 1e-10)
            return 1e-6;
        return 0.01 * std::sqrt(dny / dnf);
    }
};

} // namespace npg2

#pragma once

// Dense truncated power series in one variable (jets) with the arithmetic
// needed to expand the singular vector field: ring operations and division by
// a series with nonzero constant term.

#include <cassert>
#include <cstddef>
#include <vector>

#include "npg2/errors.hpp"

namespace npg2 {

class Jet {
public:
    Jet() = default;
    explicit Jet(int truncation_order) : c_(static_cast<size_t>(truncation_order) + 1, 0.0) {}

    static Jet constant(double v, int truncation_order)
    {
        Jet j(truncation_order);
        j.c_[0] = v;
        return j;
    }

    static Jet variable(int truncation_order)
    {
        Jet j(truncation_order);
        if (truncation_order >= 1)
            j.c_[1] = 1.0;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double coeff(int k) const { return (k >= 0 && k <= order()) ? c_[static_cast<size_t>(k)] : 0.0; }
    void set_coeff(int k, double v)
    {
        assert(k >= 0 && k <= order());
        c_[static_cast<size_t>(k)] = v;
    }

    Jet operator-() const
    {
        Jet r = *this;
        for (double& x : r.c_)
            x = -x;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b)
    {
        Jet r = a;
        for (size_t k = 0; k < r.c_.size(); ++k)
            r.c_[k] += b.c_[k];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b)
    {
        Jet r = a;
        for (size_t k = 0; k < r.c_.size(); ++k)
            r.c_[k] -= b.c_[k];
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        assert(a.order() == b.order());
        const size_t n = a.c_.size();
        Jet r(a.order());
        for (size_t i = 0; i < n; ++i) {
            if (a.c_[i] == 0.0)
                continue;
            for (size_t j = 0; i + j < n; ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    // Series division; b must have a nonzero constant term.
    friend Jet operator/(const Jet& a, const Jet& b)
    {
        assert(a.order() == b.order());
        if (b.c_[0] == 0.0)
            throw SingularRecurrenceError("jet division by a series with zero constant term");
        const size_t n = a.c_.size();
        Jet q(a.order());
        for (size_t k = 0; k < n; ++k) {
            double acc = a.c_[k];
            for (size_t j = 1; j <= k; ++j)
                acc -= b.c_[j] * q.c_[k - j];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }

    friend Jet operator*(double s, const Jet& a)
    {
        Jet r = a;
        for (double& x : r.c_)
            x *= s;
        return r;
    }
    friend Jet operator*(const Jet& a, double s) { return s * a; }
    friend Jet operator/(const Jet& a, double s) { return (1.0 / s) * a; }

    friend Jet operator+(const Jet& a, double s)
    {
        Jet r = a;
        r.c_[0] += s;
        return r;
    }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return -(a - s); }
    friend Jet operator/(double s, const Jet& a) { return Jet::constant(s, a.order()) / a; }

private:
    std::vector<double> c_;
};

} // namespace npg2

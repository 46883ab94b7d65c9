#include "npg2/homogeneous.hpp"

#include <cmath>

namespace npg2 {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);

PathPoint sine_cone_eval(double t)
{
    const double s = std::sin(t), c = std::cos(t);
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;

    PathPoint p;
    p.f.f0 = -2.0 * kSqrt3 * s2;
    p.f.f1 = 8.0 * s4;
    p.f.f2 = 8.0 * s4;
    p.f.f3 = -4.0 * kSqrt3 * s3 * c - 4.0 * s4;
    p.f.f4 = 4.0 * kSqrt3 * s3 * c - 4.0 * s4;

    p.df[0] = -4.0 * kSqrt3 * s * c;
    p.df[1] = 32.0 * s3 * c;
    p.df[2] = 32.0 * s3 * c;
    p.df[3] = -12.0 * kSqrt3 * s2 * c * c + 4.0 * kSqrt3 * s4 - 16.0 * s3 * c;
    p.df[4] = 12.0 * kSqrt3 * s2 * c * c - 4.0 * kSqrt3 * s4 - 16.0 * s3 * c;
    return p;
}

PathPoint round_sphere_eval(double t)
{
    const double s = std::sin(t), c = std::cos(t);
    const double s2 = s * s, c2 = c * c;

    PathPoint p;
    p.f.f0 = -9.0 * s * c;
    p.f.f1 = 27.0 * s2 * s2;
    p.f.f2 = 27.0 * c2 * c2;
    p.f.f3 = -27.0 * s2 * c2;
    p.f.f4 = p.f.f3;

    p.df[0] = -9.0 * (c2 - s2);
    p.df[1] = 108.0 * s2 * s * c;
    p.df[2] = -108.0 * c2 * c * s;
    p.df[3] = -54.0 * s * c * (c2 - s2);
    p.df[4] = p.df[3];
    return p;
}

PathPoint squashed_eval(double t)
{
    const double k = 27.0 / kSqrt5;
    const double s = std::sin(t), c = std::cos(t);
    const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2, s5 = s4 * s, s6 = s4 * s2;
    const double c2 = c * c, c3 = c2 * c, c4 = c2 * c2, c5 = c4 * c, c6 = c4 * c2;

    PathPoint p;
    p.f.f0 = (9.0 / kSqrt5) * s * c;
    p.f.f1 = k * (3.0 * s4 * c2 - 0.2 * s6);
    p.f.f2 = k * (3.0 * c4 * s2 - 0.2 * c6);
    p.f.f3 = k * s2 * c2 * (c2 - 2.2 * s2);
    p.f.f4 = k * s2 * c2 * (s2 - 2.2 * c2);

    p.df[0] = (9.0 / kSqrt5) * (c2 - s2);
    p.df[1] = k * (12.0 * s3 * c3 - 7.2 * s5 * c);
    p.df[2] = k * (-12.0 * c3 * s3 + 7.2 * c5 * s);
    p.df[3] = k * (2.0 * s * c5 - 12.8 * s3 * c3 + 4.4 * s5 * c);
    p.df[4] = k * (12.8 * s3 * c3 - 2.0 * s5 * c - 4.4 * s * c5);
    return p;
}

} // namespace

OracleSolution::OracleSolution(Oracle which) : which_(which)
{
    switch (which) {
    case Oracle::sine_cone:
        lambda_ = 4.0;
        base_t_max_ = kPi;
        break;
    case Oracle::round_sphere:
        lambda_ = 4.0;
        base_t_max_ = 0.5 * kPi;
        break;
    case Oracle::squashed_sphere:
        lambda_ = 12.0 / kSqrt5;
        base_t_max_ = 0.5 * kPi;
        break;
    }
}

double OracleSolution::initial_slope() const
{
    double base = 0.0;
    switch (which_) {
    case Oracle::sine_cone: base = 0.0; break; // f0 = O(t^2): the sine-cone is conical, not orbit-closing at 0
    case Oracle::round_sphere: base = -9.0; break;
    case Oracle::squashed_sphere: base = 9.0 / kSqrt5; break;
    }
    return scale0_ * base / time_scale_;
}

PathPoint OracleSolution::eval(double t) const
{
    const double tb = t / time_scale_;
    if (!(tb > 0.0 && tb < base_t_max_))
        throw OutOfDomainError("t outside the solution's domain");

    PathPoint p;
    switch (which_) {
    case Oracle::sine_cone: p = sine_cone_eval(tb); break;
    case Oracle::round_sphere: p = round_sphere_eval(tb); break;
    case Oracle::squashed_sphere: p = squashed_eval(tb); break;
    }

    p.f.f0 *= scale0_;
    for (int i = 1; i < 5; ++i)
        p.f[i] *= scalei_;
    p.df[0] *= scale0_ / time_scale_;
    for (int i = 1; i < 5; ++i)
        p.df[i] *= scalei_ / time_scale_;
    return p;
}

OracleSolution oracle(Oracle which)
{
    return OracleSolution(which);
}

std::optional<Oracle> oracle_from_name(const std::string& name)
{
    if (name == "sine_cone")
        return Oracle::sine_cone;
    if (name == "round_sphere")
        return Oracle::round_sphere;
    if (name == "squashed_sphere")
        return Oracle::squashed_sphere;
    return std::nullopt;
}

const char* oracle_name(Oracle which)
{
    switch (which) {
    case Oracle::sine_cone: return "sine_cone";
    case Oracle::round_sphere: return "round_sphere";
    case Oracle::squashed_sphere: return "squashed_sphere";
    }
    return "sine_cone";
}

OracleSolution rescale(const OracleSolution& s, double c)
{
    if (c == 0.0)
        throw InvalidConfigError("rescale requires c != 0");
    OracleSolution out = s;
    const double c13 = std::cbrt(c);
    out.time_scale_ *= c13;
    out.scale0_ *= c13 * c13;
    out.scalei_ *= c;
    out.lambda_ /= c13;
    return out;
}

OracleSolution rescale_to_lambda(const OracleSolution& s, double target_lambda)
{
    if (target_lambda == 0.0)
        throw InvalidConfigError("target lambda must be nonzero");
    const double ratio = s.lambda() / target_lambda;
    return rescale(s, ratio * ratio * ratio);
}

} // namespace npg2

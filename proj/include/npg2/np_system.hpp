#pragma once

// The nearly parallel equation d phi = lambda * phi reduced to the coefficient
// ODE system on the regular part, its two conserved constraints
//
//   R1 = f3 + f4 + (lambda/6) f0^2
//   R2 = (f1 f4 - f3^2)(f2 f3 - f4^2) - (1/4)(f1 f2 - f3 f4)^2 - f0^6
//
// and seeding of initial data on the constraint set.

#include <optional>

#include "npg2/g2_algebra.hpp"

namespace npg2 {

struct ConstraintValues {
    double r1 = 0.0;
    double r2 = 0.0;
};

// Right-hand side (f0',f1',f2',f3',f4') of the reduced first-order system.
// Throws NonAdmissibleError off the admissible set.
Vec5 rhs_f(const FCoeffs& f, double lambda);

ConstraintValues constraints(const FCoeffs& f, double lambda);

// Componentwise defect of d phi = lambda * phi (five numbers) followed by the
// arc-length residual; all six vanish exactly on a solution in arc-length gauge.
std::array<double, 6> np_residual(const FCoeffs& f, const Vec5& fprime, double lambda);

struct SeedResult {
    FCoeffs f;
    bool used_linear_branch = false;   // f1 = 0 made the f2-equation linear
    bool both_roots_admissible = false;
    double alternate_f2 = 0.0;         // the admissible root not taken (when both qualify)
};

// Completes (f0, f1, f3) to a point on the constraint set: f4 solves R1 = 0,
// f2 solves R2 = 0. With two admissible roots the one nearest reference.f2 is
// taken, or the larger |f2| without a reference.
SeedResult seed_on_constraint(double f0, double f1, double f3, double lambda,
                              const std::optional<FCoeffs>& reference = std::nullopt);

namespace detail {
// rhs formulas without the admissibility gate; f0 != 0 assumed.
Vec5 rhs_f_raw(const FCoeffs& f, double lambda);
} // namespace detail

} // namespace npg2

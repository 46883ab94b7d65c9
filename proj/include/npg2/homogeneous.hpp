#pragma once

// Closed-form solutions of the nearly parallel system: the sine-cone over the
// nearly Kahler S^3 x S^3 and the two homogeneous structures on S^7 (round and
// squashed), with hand-differentiated coefficient derivatives, plus the
// rescaling phi -> c phi that retargets the constant lambda.

#include <optional>
#include <string>

#include "npg2/g2_algebra.hpp"

namespace npg2 {

enum class Oracle { sine_cone, round_sphere, squashed_sphere };

struct PathPoint {
    FCoeffs f;
    Vec5 df{}; // coefficient derivatives at the same t
};

class OracleSolution {
public:
    explicit OracleSolution(Oracle which);

    Oracle which() const { return which_; }
    double lambda() const { return lambda_; }
    double t_min() const { return 0.0; }
    double t_max() const { return time_scale_ * base_t_max_; }

    // Initial slope of f0 at the singular orbit (the family parameter when lambda = 1).
    double initial_slope() const;

    // Closed-form values and derivatives; throws OutOfDomainError outside (t_min, t_max).
    PathPoint eval(double t) const;

private:
    friend OracleSolution rescale(const OracleSolution&, double c);

    Oracle which_;
    double lambda_;
    double base_t_max_;
    double time_scale_ = 1.0;  // t_base = t / time_scale_
    double scale0_ = 1.0;      // f~0(t) = scale0 * f0(t_base)
    double scalei_ = 1.0;      // f~i(t) = scalei * fi(t_base), i = 1..4
};

OracleSolution oracle(Oracle which);
std::optional<Oracle> oracle_from_name(const std::string& name);
const char* oracle_name(Oracle which);

// phi -> c phi: values scale by (c^{2/3}, c, c, c, c), time stretches by c^{1/3},
// lambda by c^{-1/3}.
OracleSolution rescale(const OracleSolution& s, double c);

// Convenience: pick c so the rescaled solution solves the system with the
// target lambda (target 1 maps the round sphere to initial slope -36 and the
// squashed sphere to 108/5).
OracleSolution rescale_to_lambda(const OracleSolution& s, double target_lambda);

} // namespace npg2

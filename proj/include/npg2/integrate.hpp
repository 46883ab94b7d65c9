#pragma once

// Adaptive integration of the coefficient system: the singular initial value
// problem started from its Taylor series, and the regular system from a point
// on the constraint set. Dense output drives event localization (metric
// degeneration, admissibility loss, constraint drift) and trajectory sampling.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "npg2/np_system.hpp"
#include "npg2/singular_ivp.hpp"

namespace npg2 {

struct EventThresholds {
    double h0_zero_tol = 1e-10;       // bisection tolerance in t for the h0 root
    double positivity_margin = 1e-10; // admissibility brackets must stay below -margin
    double drift_max = 1e-8;          // bound on |R2| / max(1, f0^6)
};

struct SolveConfig {
    double a = 0.0;
    double lambda = 1.0;
    double t_max = 3.0;
    double rtol = 1e-10;
    double atol = 1e-12;
    int series_order = 8;
    double t_switch = 1e-3;
    EventThresholds events;
    int sample_count = 1000;

    void validate() const; // throws InvalidConfigError
};

struct IntegrateOpts {
    double rtol = 1e-10;
    double atol = 1e-12;
    EventThresholds events;
    int sample_count = 1000;
};

enum class TerminationKind {
    reached_t_max,
    h0_zero,
    positivity_failure,
    drift_exceeded,
    step_underflow,
};

struct Termination {
    TerminationKind kind = TerminationKind::reached_t_max;
    double t_star = 0.0;      // event location, or the end of the integration span
    int which_inequality = 0; // positivity_failure: 1 for f1f4-f3^2, 2 for f2f3-f4^2
};

const char* termination_kind_name(TerminationKind kind);
std::string termination_to_string(const Termination& term);

struct Sample {
    double t = 0.0;
    HState h;
    FCoeffs f;
    MetricBlocks g;
    ConstraintValues r;
};

enum class TrajectoryKind { singular_ivp, regular_f };

struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::singular_ivp;
    double a = 0.0; // family parameter; meaningful for singular_ivp trajectories
    double lambda = 1.0;
    std::vector<Sample> samples; // t strictly increasing; excludes the event point itself
    Termination termination;
    double max_drift = 0.0; // max |R2| / max(1, f0^6) over accepted steps and samples
};

// Startup series on [0, t_switch], adaptive steps on [t_switch, t_max].
// R1 vanishes identically along the reconstruction, so samples carry r1 = 0.
Trajectory solve(const SolveConfig& config);

// Regular system from an admissible start on the constraint set; t_end < t0
// integrates backward (the system is autonomous). Throws NonAdmissibleError or
// ConstraintViolatedError on bad starts.
Trajectory integrate_f(const FCoeffs& start, double lambda, double t0, double t_end,
                       const IntegrateOpts& opts = {});

// Metric blocks through the h-substitution; finite at t = 0.
MetricBlocks metric_blocks_from_h(const HState& h, double t, double lambda);

// |R2| / max(1, f0^6): scale-invariant constraint defect.
double drift_metric(const FCoeffs& f, double lambda);

namespace detail {
// First root of m on [ta, tb] by bisection given m(ta) < 0 <= m(tb).
double bisect_crossing(const std::function<double(double)>& m, double ta, double tb, double tol);
} // namespace detail

} // namespace npg2

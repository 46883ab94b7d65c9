#pragma once

// Post-processing of trajectories: metric norm functions, the small-t
// quadratic coefficient of g2, comparison against the homogeneous solutions,
// smooth-closing diagnostics at a degeneration orbit, and parameter sweeps.

#include <string>
#include <vector>

#include "npg2/homogeneous.hpp"
#include "npg2/integrate.hpp"

namespace npg2 {

struct MetricNormSample {
    double t = 0.0;
    double g1 = 0.0; // |e2|^2
    double g2 = 0.0; // |e5|^2
    double g3 = 0.0; // |e2+e5|^2 = g1 + g2 + 2*(cross block)
};

std::vector<MetricNormSample> metric_norms(const Trajectory& traj);

// Least-squares t^2-coefficient of g2(t) - a^2/9 over samples with
// 0 < t <= window (even model c2 t^2 + c4 t^4 + c6 t^6). Requires a
// singular-IVP trajectory with lambda = 1 and >= 5 samples in the window.
double g2_quadratic_coefficient(const Trajectory& traj, double window = 0.05);

// -(5/576) a^2 + a/8 + 27/4: the expected coefficient along the family.
double g2_quadratic_reference(double a);

enum class HomogeneityClass { round_like, squashed_like, generic };

const char* homogeneity_name(HomogeneityClass c);

// Sup-distance comparison against the lambda = 1 homogeneous solutions, with
// the tau_13 identification a <-> -a applied when the signs differ.
HomogeneityClass classify_homogeneous(const Trajectory& traj, double tol = 1e-5);

struct ClosingResiduals {
    // wrong-parity magnitudes over the fit window (f0 should be odd, f1..f4 even)
    std::array<double, 5> parity = {};
    double f1_value = 0.0;  // f1(0)
    double f3_value = 0.0;  // f3(0)
    double f4_value = 0.0;  // f4(0)
    double f1_dd = 0.0;     // f1''(0)
    double jet_defect = 0.0; // 6 f0'(0) - f3''(0)
    double f2_value = 0.0;  // must stay away from 0
    double f0_slope = 0.0;  // f0'(0); must stay away from 0
};

struct ClosingReport {
    double t_star = 0.0;
    ClosingResiduals residuals;
    double max_residual = 0.0; // largest normalized equality defect
    bool closes = false;
    std::vector<std::string> failed; // names of violated conditions
};

// Extendability diagnostics at a degeneration orbit t* (termination h0_zero):
// the path is reflected through t* and the two S^3 factors swapped, i.e. the
// tested data is (f0, f2, f1, f4, f3) at t* - s (the f0 sign flips of the time
// reflection and the factor swap cancel). Degree-6 fits over the trailing
// window estimate the jet at s = 0.
ClosingReport closing_diagnostics(const Trajectory& traj, double window_frac = 0.05,
                                  double tol = 1e-5);

// Same conditions applied at the start t = 0 of a singular-IVP trajectory,
// without reflection or factor swap; they hold by construction.
ClosingReport start_diagnostics(const Trajectory& traj, double window_frac = 0.05,
                                double tol = 1e-5);

struct SweepRow {
    double a = 0.0;
    bool ok = false;           // solve completed without throwing
    std::string error;         // exception text when !ok
    Termination termination;
    double max_drift = 0.0;
    HomogeneityClass cls = HomogeneityClass::generic;
    std::string closing_verdict; // "closes_within_tol", "fails(...)", "not_applicable"
    double closing_residual = 0.0;
};

// One solve + diagnostics per grid entry; a failure is captured in its row.
std::vector<SweepRow> sweep(const std::vector<double>& a_grid, const SolveConfig& base);

} // namespace npg2

#include "npg2/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "npg2/dopri5.hpp"

namespace npg2 {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// A positivity or drift touch with |h0| below this fraction of its running
// maximum is treated as the shadow of an approaching h0 = 0 degeneration: the
// admissibility brackets vanish together with h0 there, and the constraint
// scale collapses like f0^6 against a fixed absolute solution error.
// Integration continues toward the h0 root and the touch is reported only if
// no root materializes.
constexpr double kShadowFrac = 0.05;
constexpr long kMaxSteps = 20'000'000;

double step_floor(double t)
{
    return 1e3 * kEps * std::max(1.0, std::abs(t));
}

struct EventCandidate {
    TerminationKind kind;
    double t;
    int which = 0;
};

template <int N>
struct RunResult {
    std::vector<typename Dopri5<N>::DenseSegment> segs;
    Termination term;
    double max_drift = 0.0;
};

// Monitors map (t, y) to the scalar event functions of one path flavor.
template <int N>
struct Monitors {
    std::function<double(double, const std::array<double, N>&)> h0;
    std::function<double(double, const std::array<double, N>&)> q1;
    std::function<double(double, const std::array<double, N>&)> q2;
    std::function<double(double, const std::array<double, N>&)> drift;
};

template <int N, class RHS>
RunResult<N> run_adaptive(RHS&& rhs, const Monitors<N>& mon, double t0, double t1,
                          std::array<double, N> y, double rtol, double atol,
                          const EventThresholds& ev)
{
    using D = Dopri5<N>;
    RunResult<N> out;

    double h0_prev = mon.h0(t0, y);
    double q1_prev = mon.q1(t0, y);
    double q2_prev = mon.q2(t0, y);
    double drift_prev = mon.drift(t0, y);
    out.max_drift = drift_prev;
    double h0_peak = std::abs(h0_prev);
    std::optional<EventCandidate> pending;

    // A start already past a threshold terminates immediately.
    if (q1_prev >= -ev.positivity_margin) {
        out.term = {TerminationKind::positivity_failure, t0, 1};
        return out;
    }
    if (q2_prev >= -ev.positivity_margin) {
        out.term = {TerminationKind::positivity_failure, t0, 2};
        return out;
    }
    if (drift_prev > ev.drift_max) {
        out.term = {TerminationKind::drift_exceeded, t0, 0};
        return out;
    }

    std::array<double, N> k1;
    if (!rhs(t0, y, k1))
        throw Error("vector field not evaluable at the initial state");

    double t = t0;
    double h = std::min(D::initial_step(y, k1, atol, rtol), 0.1 * (t1 - t0));
    h = std::max(h, step_floor(t0));
    bool rejected_last = false;

    const auto finish_no_event = [&](TerminationKind kind, double at) {
        if (pending)
            out.term = {pending->kind, pending->t, pending->which};
        else
            out.term = {kind, at, 0};
    };

    // The field carries 1/h0 powers, so a degeneration orbit cannot be
    // straddled: stages sampling h0 ~ 0 off the solution blow up and the step
    // size collapses just short of the root. When the stall happens inside the
    // degeneration shadow with h0 heading to zero, the root is one Newton
    // extrapolation away (error ~ stall distance squared).
    const auto stall_is_degeneration = [&](double tc, const std::array<double, N>& yc,
                                           double& troot) {
        if (std::abs(mon.h0(tc, yc)) >= kShadowFrac * h0_peak)
            return false;
        std::array<double, N> dy;
        if (!rhs(tc, yc, dy) || !std::isfinite(dy[0]) || dy[0] == 0.0)
            return false;
        const double step = -mon.h0(tc, yc) / dy[0];
        if (!(step > 0.0) || step > 0.01 * std::max(1.0, std::abs(tc)))
            return false;
        troot = tc + step;
        return true;
    };

    for (long nstep = 0;; ++nstep) {
        if (nstep > kMaxSteps)
            throw Error("step limit exceeded");

        if (t1 - t <= step_floor(t)) {
            finish_no_event(TerminationKind::reached_t_max, t1);
            return out;
        }
        if (h < step_floor(t)) {
            double troot = 0.0;
            if (stall_is_degeneration(t, y, troot))
                out.term = {TerminationKind::h0_zero, troot, 0};
            else
                finish_no_event(TerminationKind::step_underflow, t);
            return out;
        }
        bool last = false;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }

        auto att = D::attempt_step(rhs, t, y, k1, h, atol, rtol);
        if (!att.finite || att.err > 1.0) {
            double fac = 0.5;
            if (att.finite) {
                fac = std::max(0.2, 0.9 * std::pow(att.err, -0.2));
                fac = std::min(fac, 1.0);
            }
            h *= fac;
            rejected_last = true;
            if (h < step_floor(t)) {
                double troot = 0.0;
                if (stall_is_degeneration(t, y, troot))
                    out.term = {TerminationKind::h0_zero, troot, 0};
                else
                    finish_no_event(TerminationKind::step_underflow, t);
                return out;
            }
            continue;
        }

        const double tb = last ? t1 : t + h;
        const auto& seg = att.dense;
        const auto state_at = [&](double tt) { return seg.eval(tt); };

        const double h0_new = mon.h0(tb, att.ynew);
        const double q1_new = mon.q1(tb, att.ynew);
        const double q2_new = mon.q2(tb, att.ynew);
        const double drift_new = mon.drift(tb, att.ynew);

        // h0 sign change has priority: at a closing orbit the positivity
        // brackets graze their margins in the same step.
        if (h0_prev != 0.0 && (h0_new == 0.0 || std::signbit(h0_new) != std::signbit(h0_prev))) {
            const double sign0 = h0_prev > 0.0 ? 1.0 : -1.0;
            const double troot = detail::bisect_crossing(
                [&](double tt) { return -sign0 * mon.h0(tt, state_at(tt)); }, t, tb,
                ev.h0_zero_tol);
            out.segs.push_back(seg); // dense data up to the root stays sampleable
            out.term = {TerminationKind::h0_zero, troot, 0};
            return out;
        }

        std::optional<EventCandidate> hit;
        if (q1_prev < -ev.positivity_margin && q1_new >= -ev.positivity_margin) {
            const double tc = detail::bisect_crossing(
                [&](double tt) { return mon.q1(tt, state_at(tt)) + ev.positivity_margin; }, t, tb,
                ev.h0_zero_tol);
            hit = EventCandidate{TerminationKind::positivity_failure, tc, 1};
        }
        if (q2_prev < -ev.positivity_margin && q2_new >= -ev.positivity_margin) {
            const double tc = detail::bisect_crossing(
                [&](double tt) { return mon.q2(tt, state_at(tt)) + ev.positivity_margin; }, t, tb,
                ev.h0_zero_tol);
            if (!hit || tc < hit->t)
                hit = EventCandidate{TerminationKind::positivity_failure, tc, 2};
        }
        if (drift_prev <= ev.drift_max && drift_new > ev.drift_max) {
            const double tc = detail::bisect_crossing(
                [&](double tt) {
                    return mon.drift(tt, state_at(tt)) - ev.drift_max;
                },
                t, tb, ev.h0_zero_tol);
            if (!hit || tc < hit->t)
                hit = EventCandidate{TerminationKind::drift_exceeded, tc, 0};
        }

        if (hit) {
            const double h0_at_hit = std::abs(mon.h0(hit->t, state_at(hit->t)));
            if (h0_at_hit < kShadowFrac * h0_peak) {
                if (!pending)
                    pending = hit; // degeneration shadow; keep going
            } else {
                out.segs.push_back(seg);
                out.term = {hit->kind, hit->t, hit->which};
                return out;
            }
        }

        out.segs.push_back(seg);
        out.max_drift = std::max(out.max_drift, drift_new);
        h0_peak = std::max(h0_peak, std::abs(h0_new));
        t = tb;
        y = att.ynew;
        k1 = att.k_last;
        h0_prev = h0_new;
        q1_prev = q1_new;
        q2_prev = q2_new;
        drift_prev = drift_new;

        if (last) {
            finish_no_event(TerminationKind::reached_t_max, t1);
            return out;
        }

        double fac = att.err > 0.0 ? 0.9 * std::pow(att.err, -0.2) : 10.0;
        fac = std::clamp(fac, 0.2, 10.0);
        if (rejected_last)
            fac = std::min(fac, 1.0);
        rejected_last = false;
        h *= fac;
    }
}

FCoeffs f_of_y5(const std::array<double, 5>& y)
{
    return FCoeffs{y[0], y[1], y[2], y[3], y[4]};
}

HState h_of_y4(const std::array<double, 4>& y)
{
    return HState{y[0], y[1], y[2], y[3]};
}

Monitors<4> h_monitors(double lambda)
{
    Monitors<4> mon;
    mon.h0 = [](double, const std::array<double, 4>& y) { return y[0]; };
    // Desingularized admissibility brackets (f1f4-f3^2)/t^4 and (f2f3-f4^2)/t^2:
    // same sign for t > 0, finite and negative at t = 0.
    mon.q1 = [lambda](double t, const std::array<double, 4>& y) {
        const double h4 = -y[3] - lambda / 6.0 * y[0] * y[0];
        return t * t * y[1] * h4 - y[3] * y[3];
    };
    mon.q2 = [lambda](double t, const std::array<double, 4>& y) {
        const double h4 = -y[3] - lambda / 6.0 * y[0] * y[0];
        return y[2] * y[3] - t * t * h4 * h4;
    };
    mon.drift = [lambda](double t, const std::array<double, 4>& y) {
        return drift_metric(f_from_h(h_of_y4(y), t, lambda), lambda);
    };
    return mon;
}

Monitors<5> f_monitors(double lambda)
{
    Monitors<5> mon;
    mon.h0 = [](double, const std::array<double, 5>& y) { return y[0]; };
    mon.q1 = [](double, const std::array<double, 5>& y) { return y[1] * y[4] - y[3] * y[3]; };
    mon.q2 = [](double, const std::array<double, 5>& y) { return y[2] * y[3] - y[4] * y[4]; };
    mon.drift = [lambda](double, const std::array<double, 5>& y) {
        return drift_metric(f_of_y5(y), lambda);
    };
    return mon;
}

ConstraintValues constraint_sample(const FCoeffs& f, double lambda, bool r1_exact_zero)
{
    ConstraintValues c = constraints(f, lambda);
    if (r1_exact_zero)
        c.r1 = 0.0;
    return c;
}

} // namespace

namespace detail {

double bisect_crossing(const std::function<double(double)>& m, double ta, double tb, double tol)
{
    double lo = ta, hi = tb;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (m(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

} // namespace detail

void SolveConfig::validate() const
{
    if (a == 0.0)
        throw InvalidConfigError("a must be nonzero");
    if (lambda == 0.0)
        throw InvalidConfigError("lambda must be nonzero");
    if (!(t_switch > 0.0) || !(t_max > t_switch))
        throw InvalidConfigError("need 0 < t_switch < t_max");
    if (!(rtol > 0.0) || !(atol > 0.0))
        throw InvalidConfigError("tolerances must be positive");
    if (series_order < 2 || series_order % 2 != 0)
        throw InvalidConfigError("series_order must be even and >= 2");
    if (sample_count < 2)
        throw InvalidConfigError("sample_count must be >= 2");
}

const char* termination_kind_name(TerminationKind kind)
{
    switch (kind) {
    case TerminationKind::reached_t_max: return "reached_t_max";
    case TerminationKind::h0_zero: return "h0_zero";
    case TerminationKind::positivity_failure: return "positivity_failure";
    case TerminationKind::drift_exceeded: return "drift_exceeded";
    case TerminationKind::step_underflow: return "step_underflow";
    }
    return "reached_t_max";
}

std::string termination_to_string(const Termination& term)
{
    char buf[96];
    switch (term.kind) {
    case TerminationKind::reached_t_max:
        return "reached_t_max";
    case TerminationKind::positivity_failure:
        std::snprintf(buf, sizeof buf, "positivity_failure(%.17g,b%d)", term.t_star,
                      term.which_inequality);
        return buf;
    default:
        std::snprintf(buf, sizeof buf, "%s(%.17g)", termination_kind_name(term.kind), term.t_star);
        return buf;
    }
}

MetricBlocks metric_blocks_from_h(const HState& h, double t, double lambda)
{
    const double h4 = h4_of(h, lambda);
    const double t2 = t * t;
    const double h0sq = h.h0 * h.h0;
    MetricBlocks g;
    g.g1 = t2 * (h.h3 * h.h3 - t2 * h.h1 * h4) / h0sq;
    g.g2 = (t2 * h4 * h4 - h.h2 * h.h3) / h0sq;
    g.g3 = t2 * (h.h3 * h4 - h.h1 * h.h2) / (2.0 * h0sq);
    return g;
}

double drift_metric(const FCoeffs& f, double lambda)
{
    // R2 relative to the size of its own terms; every term vanishes toward a
    // degeneration orbit, so the ratio stays meaningful there (dividing by
    // f0^6 alone does not).
    const double b1 = f.f1 * f.f4 - f.f3 * f.f3;
    const double b2 = f.f2 * f.f3 - f.f4 * f.f4;
    const double m = f.f1 * f.f2 - f.f3 * f.f4;
    const double f0sq = f.f0 * f.f0;
    const double f0p6 = f0sq * f0sq * f0sq;
    const double scale = std::abs(b1 * b2) + 0.25 * m * m + f0p6;
    return std::abs(constraints(f, lambda).r2) / std::max(1.0, scale);
}

Trajectory solve(const SolveConfig& config)
{
    config.validate();

    TruncatedEvenSeries series;
    try {
        series = taylor_startup(initial_state(config.a, config.lambda), config.series_order);
    } catch (const SingularRecurrenceError& e) {
        throw StartupFailureError(e.what());
    }

    const HState hs = series.eval(config.t_switch);
    std::array<double, 4> y0 = {hs.h0, hs.h1, hs.h2, hs.h3};

    const double lambda = config.lambda;
    auto rhs = [lambda](double t, const std::array<double, 4>& y, std::array<double, 4>& dy) {
        if (y[0] == 0.0)
            return false;
        const std::array<double, 4> a = a_field_eval<double>(y, lambda);
        const std::array<double, 4> b = b_field_eval<double>(y, t, lambda);
        for (int i = 0; i < 4; ++i)
            dy[i] = a[i] / t + b[i];
        return true;
    };

    RunResult<4> run = run_adaptive<4>(rhs, h_monitors(lambda), config.t_switch, config.t_max, y0,
                                       config.rtol, config.atol, config.events);

    Trajectory traj;
    traj.kind = TrajectoryKind::singular_ivp;
    traj.a = config.a;
    traj.lambda = lambda;
    traj.termination = run.term;
    traj.max_drift = run.max_drift;

    const bool event_hit = run.term.kind != TerminationKind::reached_t_max;
    const double t_end = run.term.t_star;
    const double covered_end =
        run.segs.empty() ? config.t_switch : run.segs.back().t1();
    const int n = config.sample_count;
    size_t seg_idx = 0;
    traj.samples.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
        if (event_hit && t >= t_end * (1.0 - 1e-15))
            break; // the event point itself is not a valid sample
        HState h;
        if (t <= config.t_switch) {
            h = series.eval(t);
        } else {
            if (run.segs.empty() || t > covered_end + 1e-12 * std::max(1.0, covered_end))
                break;
            t = std::min(t, covered_end);
            while (seg_idx + 1 < run.segs.size() && run.segs[seg_idx].t1() < t)
                ++seg_idx;
            const auto& seg = run.segs[seg_idx];
            h = h_of_y4(seg.eval(t));
        }
        Sample s;
        s.t = t;
        s.h = h;
        s.f = f_from_h(h, t, lambda);
        s.g = metric_blocks_from_h(h, t, lambda);
        s.r = constraint_sample(s.f, lambda, /*r1_exact_zero=*/true);
        traj.max_drift = std::max(traj.max_drift, drift_metric(s.f, lambda));
        traj.samples.push_back(s);
    }
    return traj;
}

Trajectory integrate_f(const FCoeffs& start, double lambda, double t0, double t_end,
                       const IntegrateOpts& opts)
{
    if (!(t0 > 0.0) || !(t_end > 0.0) || t0 == t_end)
        throw InvalidConfigError("integrate_f needs positive, distinct t0 and t_end");
    if (opts.sample_count < 2)
        throw InvalidConfigError("sample_count must be >= 2");
    if (!is_admissible(start))
        throw NonAdmissibleError("integrate_f requires an admissible start");
    {
        const ConstraintValues c = constraints(start, lambda);
        const double f0sq = start.f0 * start.f0;
        const double r1n = std::abs(c.r1) / std::max(1.0, f0sq);
        if (r1n > 1e-10 || drift_metric(start, lambda) > 1e-10)
            throw ConstraintViolatedError("start point is off the constraint set");
    }

    const bool backward = t_end < t0;
    const double span = std::abs(t_end - t0);

    // s is the integration variable; t = t0 + dir * s.
    const double dir = backward ? -1.0 : 1.0;
    auto rhs = [lambda, dir](double, const std::array<double, 5>& y,
                             std::array<double, 5>& dy) {
        if (y[0] == 0.0)
            return false;
        const Vec5 d = detail::rhs_f_raw(f_of_y5(y), lambda);
        for (int i = 0; i < 5; ++i)
            dy[i] = dir * d[i];
        return true;
    };

    Monitors<5> mon = f_monitors(lambda);
    std::array<double, 5> y0 = {start.f0, start.f1, start.f2, start.f3, start.f4};
    RunResult<5> run =
        run_adaptive<5>(rhs, mon, 0.0, span, y0, opts.rtol, opts.atol, opts.events);

    Trajectory traj;
    traj.kind = TrajectoryKind::regular_f;
    traj.a = std::numeric_limits<double>::quiet_NaN();
    traj.lambda = lambda;
    traj.max_drift = run.max_drift;
    traj.termination = run.term;
    traj.termination.t_star = t0 + dir * run.term.t_star;

    const bool event_hit = run.term.kind != TerminationKind::reached_t_max;
    const double s_end = run.term.t_star;
    const double covered_end = run.segs.empty() ? 0.0 : run.segs.back().t1();
    const int n = opts.sample_count;
    size_t seg_idx = 0;
    traj.samples.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = s_end * static_cast<double>(i) / static_cast<double>(n - 1);
        if (event_hit && s >= s_end * (1.0 - 1e-15) && i > 0)
            break;
        std::array<double, 5> y;
        if (i == 0) {
            y = y0;
        } else {
            if (run.segs.empty() || s > covered_end + 1e-12 * std::max(1.0, covered_end))
                break;
            s = std::min(s, covered_end);
            while (seg_idx + 1 < run.segs.size() && run.segs[seg_idx].t1() < s)
                ++seg_idx;
            const auto& seg = run.segs[seg_idx];
            y = seg.eval(s);
        }
        const double t = t0 + dir * s;
        Sample smp;
        smp.t = t;
        smp.f = f_of_y5(y);
        const double t2 = t * t;
        smp.h = HState{smp.f.f0 / t, smp.f.f1 / (t2 * t2), smp.f.f2, smp.f.f3 / t2};
        const double f0sq = smp.f.f0 * smp.f.f0;
        smp.g.g1 = (smp.f.f3 * smp.f.f3 - smp.f.f1 * smp.f.f4) / f0sq;
        smp.g.g2 = (smp.f.f4 * smp.f.f4 - smp.f.f2 * smp.f.f3) / f0sq;
        smp.g.g3 = (smp.f.f3 * smp.f.f4 - smp.f.f1 * smp.f.f2) / (2.0 * f0sq);
        smp.r = constraint_sample(smp.f, lambda, /*r1_exact_zero=*/false);
        traj.max_drift = std::max(traj.max_drift, drift_metric(smp.f, lambda));
        traj.samples.push_back(smp);
    }
    if (backward)
        std::reverse(traj.samples.begin(), traj.samples.end());
    return traj;
}

} // namespace npg2

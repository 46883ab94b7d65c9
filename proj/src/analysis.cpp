#include "npg2/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "npg2/symmetries.hpp"

namespace npg2 {

namespace {

// Least squares for V p = y with V_{jk} = u_j^k, k = 0..degree, by Householder QR.
std::vector<double> polyfit(const std::vector<double>& u, const std::vector<double>& y, int degree)
{
    const int m = static_cast<int>(u.size());
    const int n = degree + 1;
    std::vector<double> a(static_cast<size_t>(m) * n);
    for (int j = 0; j < m; ++j) {
        double p = 1.0;
        for (int k = 0; k < n; ++k) {
            a[static_cast<size_t>(j) * n + k] = p;
            p *= u[static_cast<size_t>(j)];
        }
    }
    std::vector<double> b = y;

    for (int k = 0; k < n; ++k) {
        double norm = 0.0;
        for (int j = k; j < m; ++j)
            norm += a[static_cast<size_t>(j) * n + k] * a[static_cast<size_t>(j) * n + k];
        norm = std::sqrt(norm);
        if (norm == 0.0)
            throw InsufficientSamplesError("rank-deficient polynomial fit");
        double& akk = a[static_cast<size_t>(k) * n + k];
        const double alpha = akk > 0.0 ? -norm : norm;
        std::vector<double> v(static_cast<size_t>(m - k), 0.0);
        v[0] = akk - alpha;
        for (int j = k + 1; j < m; ++j)
            v[static_cast<size_t>(j - k)] = a[static_cast<size_t>(j) * n + k];
        double vnorm2 = 0.0;
        for (double x : v)
            vnorm2 += x * x;
        if (vnorm2 == 0.0)
            continue;
        for (int c = k; c < n; ++c) {
            double dot = 0.0;
            for (int j = k; j < m; ++j)
                dot += v[static_cast<size_t>(j - k)] * a[static_cast<size_t>(j) * n + c];
            const double fac = 2.0 * dot / vnorm2;
            for (int j = k; j < m; ++j)
                a[static_cast<size_t>(j) * n + c] -= fac * v[static_cast<size_t>(j - k)];
        }
        double dot = 0.0;
        for (int j = k; j < m; ++j)
            dot += v[static_cast<size_t>(j - k)] * b[static_cast<size_t>(j)];
        const double fac = 2.0 * dot / vnorm2;
        for (int j = k; j < m; ++j)
            b[static_cast<size_t>(j)] -= fac * v[static_cast<size_t>(j - k)];
    }

    std::vector<double> p(static_cast<size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < n; ++c)
            acc -= a[static_cast<size_t>(r) * n + c] * p[static_cast<size_t>(c)];
        p[static_cast<size_t>(r)] = acc / a[static_cast<size_t>(r) * n + r];
    }
    return p;
}

struct JetFitInput {
    double t_star = 0.0;
    double s_max = 0.0;
    // rows: s ascending, reflected/ordered components F0..F4
    std::vector<double> s;
    std::array<std::vector<double>, 5> comp;
};

ClosingReport fit_jet_conditions(const JetFitInput& in, double tol)
{
    constexpr int kDegree = 6;
    if (in.s.size() < 15)
        throw FitWindowError("fewer than 15 samples in the fit window");

    std::vector<double> u(in.s.size());
    for (size_t j = 0; j < in.s.size(); ++j)
        u[j] = in.s[j] / in.s_max;

    std::array<std::vector<double>, 5> p;
    std::array<double, 5> scale;
    for (int i = 0; i < 5; ++i) {
        p[i] = polyfit(u, in.comp[i], kDegree);
        double m = 0.0;
        for (double v : in.comp[i])
            m = std::max(m, std::abs(v));
        scale[i] = std::max(1.0, m);
    }

    ClosingReport rep;
    rep.t_star = in.t_star;
    auto& res = rep.residuals;

    // Scaled coefficients p[i][k] are the size of the u^k contribution at the
    // window edge, so wrong-parity defects read off directly.
    res.parity[0] = std::max({std::abs(p[0][0]), std::abs(p[0][2]), std::abs(p[0][4]),
                              std::abs(p[0][6])});
    for (int i = 1; i < 5; ++i)
        res.parity[i] = std::max({std::abs(p[i][1]), std::abs(p[i][3]), std::abs(p[i][5])});

    const double smax2 = in.s_max * in.s_max;
    res.f1_value = p[1][0];
    res.f3_value = p[3][0];
    res.f4_value = p[4][0];
    res.f1_dd = 2.0 * p[1][2] / smax2;
    res.f0_slope = p[0][1] / in.s_max;
    const double f3_dd = 2.0 * p[3][2] / smax2;
    res.jet_defect = 6.0 * res.f0_slope - f3_dd;
    res.f2_value = p[2][0];

    const auto check = [&](const char* name, double normalized) {
        rep.max_residual = std::max(rep.max_residual, normalized);
        if (!(normalized <= tol))
            rep.failed.push_back(name);
    };
    check("f0_parity", res.parity[0] / scale[0]);
    check("f1_parity", res.parity[1] / scale[1]);
    check("f2_parity", res.parity[2] / scale[2]);
    check("f3_parity", res.parity[3] / scale[3]);
    check("f4_parity", res.parity[4] / scale[4]);
    check("f1_zero", std::abs(res.f1_value) / scale[1]);
    check("f3_zero", std::abs(res.f3_value) / scale[3]);
    check("f4_zero", std::abs(res.f4_value) / scale[4]);
    check("f1_second_derivative", std::abs(p[1][2]) / scale[1]);
    check("jet_match",
          std::abs(res.jet_defect) / std::max({1.0, 6.0 * std::abs(res.f0_slope),
                                               std::abs(f3_dd)}));
    if (!(std::abs(res.f2_value) > tol * scale[2]))
        rep.failed.push_back("f2_nonzero");
    if (!(std::abs(res.f0_slope) > tol * std::max(1.0, scale[0] / in.s_max)))
        rep.failed.push_back("f0_slope_nonzero");

    rep.closes = rep.failed.empty();
    return rep;
}

} // namespace

std::vector<MetricNormSample> metric_norms(const Trajectory& traj)
{
    std::vector<MetricNormSample> out;
    out.reserve(traj.samples.size());
    for (const Sample& s : traj.samples)
        out.push_back({s.t, s.g.g1, s.g.g2, s.g.g1 + s.g.g2 + 2.0 * s.g.g3});
    return out;
}

double g2_quadratic_reference(double a)
{
    return -(5.0 / 576.0) * a * a + a / 8.0 + 27.0 / 4.0;
}

double g2_quadratic_coefficient(const Trajectory& traj, double window)
{
    if (traj.kind != TrajectoryKind::singular_ivp || traj.lambda != 1.0)
        throw InvalidConfigError("g2 coefficient needs a singular-IVP trajectory with lambda = 1");

    const double limit = traj.a * traj.a / 9.0;
    std::vector<double> u, z;
    for (const Sample& s : traj.samples) {
        if (s.t <= 0.0 || s.t > window)
            continue;
        const double q = (s.t / window) * (s.t / window);
        u.push_back(q);
        z.push_back((s.g.g2 - limit) / (s.t * s.t));
    }
    if (u.size() < 5)
        throw InsufficientSamplesError("need at least 5 samples in the fit window");

    // z = c2 + c4 t^2 + c6 t^4 rewritten in q = (t/window)^2.
    const std::vector<double> p = polyfit(u, z, 2);
    return p[0];
}

const char* homogeneity_name(HomogeneityClass c)
{
    switch (c) {
    case HomogeneityClass::round_like: return "round_like";
    case HomogeneityClass::squashed_like: return "squashed_like";
    case HomogeneityClass::generic: return "generic";
    }
    return "generic";
}

HomogeneityClass classify_homogeneous(const Trajectory& traj, double tol)
{
    if (traj.kind != TrajectoryKind::singular_ivp || traj.lambda != 1.0)
        return HomogeneityClass::generic;
    if (traj.samples.empty())
        return HomogeneityClass::generic;

    const auto distance_to = [&](const OracleSolution& cand) {
        const bool flip = std::signbit(traj.a) != std::signbit(cand.initial_slope());
        const double t_hi = cand.t_max() * (1.0 - 1e-9);
        double dist = 0.0;
        int used = 0;
        for (const Sample& smp : traj.samples) {
            if (smp.t <= 0.0 || smp.t >= t_hi)
                continue;
            const FCoeffs f = flip ? apply_tau(Tau::t13, smp.f) : smp.f;
            const FCoeffs o = cand.eval(smp.t).f;
            for (int i = 0; i < 5; ++i)
                dist = std::max(dist, std::abs(f[i] - o[i]) / std::max(1.0, std::abs(o[i])));
            ++used;
        }
        return used > 0 ? dist : std::numeric_limits<double>::infinity();
    };

    if (distance_to(rescale_to_lambda(oracle(Oracle::round_sphere), 1.0)) < tol)
        return HomogeneityClass::round_like;
    if (distance_to(rescale_to_lambda(oracle(Oracle::squashed_sphere), 1.0)) < tol)
        return HomogeneityClass::squashed_like;
    return HomogeneityClass::generic;
}

ClosingReport closing_diagnostics(const Trajectory& traj, double window_frac, double tol)
{
    if (traj.termination.kind != TerminationKind::h0_zero)
        throw NoDegenerationError("trajectory did not reach h0 = 0");
    const double t_star = traj.termination.t_star;
    const double t_lo = t_star * (1.0 - window_frac);

    JetFitInput in;
    in.t_star = t_star;
    // Reflect through t*: s = t* - t, and swap the two factors. The reflected
    // coefficient order is (f0, f2, f1, f4, f3); f0 keeps its sign because the
    // reflection and the swap each flip it once.
    for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
        if (it->t < t_lo || it->t >= t_star)
            continue;
        in.s.push_back(t_star - it->t);
        in.comp[0].push_back(it->f.f0);
        in.comp[1].push_back(it->f.f2);
        in.comp[2].push_back(it->f.f1);
        in.comp[3].push_back(it->f.f4);
        in.comp[4].push_back(it->f.f3);
    }
    if (in.s.empty())
        throw FitWindowError("no samples before t*");
    in.s_max = in.s.back();
    return fit_jet_conditions(in, tol);
}

ClosingReport start_diagnostics(const Trajectory& traj, double window_frac, double tol)
{
    if (traj.kind != TrajectoryKind::singular_ivp)
        throw InvalidConfigError("start diagnostics apply to singular-IVP trajectories");
    if (traj.samples.empty())
        throw FitWindowError("empty trajectory");
    const double t_end = traj.samples.back().t;
    const double t_hi = t_end * window_frac;

    JetFitInput in;
    in.t_star = 0.0;
    for (const Sample& smp : traj.samples) {
        if (smp.t > t_hi)
            break;
        in.s.push_back(smp.t);
        for (int i = 0; i < 5; ++i)
            in.comp[static_cast<size_t>(i)].push_back(smp.f[i]);
    }
    if (in.s.empty())
        throw FitWindowError("no samples in the start window");
    in.s_max = in.s.back();
    if (in.s_max <= 0.0)
        throw FitWindowError("degenerate start window");
    return fit_jet_conditions(in, tol);
}

std::vector<SweepRow> sweep(const std::vector<double>& a_grid, const SolveConfig& base)
{
    if (a_grid.empty())
        throw InvalidConfigError("empty parameter grid");

    std::vector<SweepRow> rows;
    rows.reserve(a_grid.size());
    for (double a : a_grid) {
        SweepRow row;
        row.a = a;
        try {
            SolveConfig cfg = base;
            cfg.a = a;
            const Trajectory traj = solve(cfg);
            row.ok = true;
            row.termination = traj.termination;
            row.max_drift = traj.max_drift;
            row.cls = classify_homogeneous(traj);
            if (traj.termination.kind == TerminationKind::h0_zero) {
                try {
                    const ClosingReport rep = closing_diagnostics(traj);
                    row.closing_residual = rep.max_residual;
                    if (rep.closes) {
                        row.closing_verdict = "closes_within_tol";
                    } else {
                        row.closing_verdict = "fails(";
                        for (size_t i = 0; i < rep.failed.size(); ++i) {
                            if (i)
                                row.closing_verdict += ' ';
                            row.closing_verdict += rep.failed[i];
                        }
                        row.closing_verdict += ')';
                    }
                } catch (const Error& e) {
                    row.closing_verdict = std::string("error: ") + e.what();
                    row.closing_residual = std::numeric_limits<double>::quiet_NaN();
                }
            } else {
                row.closing_verdict = "not_applicable";
                row.closing_residual = std::numeric_limits<double>::quiet_NaN();
            }
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace npg2

#include "npg2/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace npg2 {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::optional<double> CsvTable::footer_value(const std::string& key) const
{
    const std::string prefix = "# " + key + "=";
    for (const std::string& line : footers)
        if (line.rfind(prefix, 0) == 0)
            return std::strtod(line.c_str() + prefix.size(), nullptr);
    return std::nullopt;
}

CsvTable table_from_trajectory(const Trajectory& traj)
{
    CsvTable t;
    t.rows.reserve(traj.samples.size());
    for (const Sample& s : traj.samples)
        t.rows.push_back({s.t, s.f.f0, s.f.f1, s.f.f2, s.f.f3, s.f.f4, s.g.g1, s.g.g2, s.g.g3,
                          s.r.r1, s.r.r2});
    t.footers.push_back("# termination=" + termination_to_string(traj.termination));
    t.footers.push_back("# a=" + format_double(traj.a));
    t.footers.push_back("# lambda=" + format_double(traj.lambda));
    return t;
}

CsvTable table_from_solution(const OracleSolution& sol, double t0, double t1, int n)
{
    if (n < 2)
        throw InvalidConfigError("need at least two sample points");
    CsvTable t;
    t.rows.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double tt = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        const PathPoint p = sol.eval(tt);
        const MetricBlocks g = metric_blocks(p.f);
        const ConstraintValues c = constraints(p.f, sol.lambda());
        t.rows.push_back({tt, p.f.f0, p.f.f1, p.f.f2, p.f.f3, p.f.f4, g.g1, g.g2, g.g3, c.r1,
                          c.r2});
    }
    t.footers.push_back("# termination=reached_t_max");
    t.footers.push_back("# a=" + format_double(sol.initial_slope()));
    t.footers.push_back("# lambda=" + format_double(sol.lambda()));
    return t;
}

void write_csv(std::ostream& os, const CsvTable& table)
{
    os << kCsvHeader << '\n';
    for (const auto& row : table.rows) {
        for (int i = 0; i < 11; ++i) {
            if (i)
                os << ',';
            os << format_double(row[static_cast<size_t>(i)]);
        }
        os << '\n';
    }
    for (const std::string& line : table.footers)
        os << line << '\n';
}

CsvTable read_csv(std::istream& is)
{
    CsvTable t;
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw CsvFormatError("missing or wrong CSV header");

    double prev_t = 0.0;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            t.footers.push_back(line);
            continue;
        }
        std::array<double, 11> row{};
        const char* p = line.c_str();
        for (int i = 0; i < 11; ++i) {
            char* end = nullptr;
            row[static_cast<size_t>(i)] = std::strtod(p, &end);
            if (end == p)
                throw CsvFormatError("malformed numeric field");
            p = end;
            if (i < 10) {
                if (*p != ',')
                    throw CsvFormatError("expected 11 comma-separated columns");
                ++p;
            }
        }
        if (*p != '\0')
            throw CsvFormatError("trailing characters after 11 columns");
        if (!first && !(row[0] > prev_t))
            throw CsvFormatError("t column must be strictly increasing");
        prev_t = row[0];
        first = false;
        t.rows.push_back(row);
    }
    if (t.rows.empty())
        throw CsvFormatError("no data rows");
    return t;
}

CsvTable transform_table(const CsvTable& table, Tau tau, double lambda)
{
    const TauAction act = tau_action(tau);

    CsvTable out;
    out.footers = table.footers;
    out.rows.reserve(table.rows.size());

    const auto emit = [&](double t, const FCoeffs& f) {
        if (f.f0 == 0.0)
            return; // metric columns are not recomputable from f alone there
        const double f0sq = f.f0 * f.f0;
        const double g1 = (f.f3 * f.f3 - f.f1 * f.f4) / f0sq;
        const double g2 = (f.f4 * f.f4 - f.f2 * f.f3) / f0sq;
        const double g3 = (f.f3 * f.f4 - f.f1 * f.f2) / (2.0 * f0sq);
        const ConstraintValues c = constraints(f, lambda);
        out.rows.push_back({t, f.f0, f.f1, f.f2, f.f3, f.f4, g1, g2, g3, c.r1, c.r2});
    };

    const auto mapped = [&](const std::array<double, 11>& row) {
        FCoeffs in{row[1], row[2], row[3], row[4], row[5]};
        FCoeffs f;
        for (int i = 0; i < 5; ++i) {
            double v = 0.0;
            for (int j = 0; j < 5; ++j)
                v += act.m[i][j] * in[j];
            f[i] = v;
        }
        return f;
    };

    if (act.reflect_time) {
        for (auto it = table.rows.rbegin(); it != table.rows.rend(); ++it)
            emit(-(*it)[0], mapped(*it));
    } else {
        for (const auto& row : table.rows)
            emit(row[0], mapped(row));
    }
    if (out.rows.empty())
        throw CsvFormatError("transform produced no rows");
    return out;
}

ResidualReport residual_check(const CsvTable& table, double lambda)
{
    const size_t n = table.rows.size();
    if (n < 5)
        throw CsvFormatError("residual check needs at least 5 rows");

    const double h = table.rows[1][0] - table.rows[0][0];
    for (size_t i = 1; i < n; ++i) {
        const double hi = table.rows[i][0] - table.rows[i - 1][0];
        if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw CsvFormatError("residual check needs a uniform t grid");
    }

    ResidualReport rep;
    for (size_t i = 2; i + 2 < n; ++i) {
        FCoeffs f{table.rows[i][1], table.rows[i][2], table.rows[i][3], table.rows[i][4],
                  table.rows[i][5]};
        Vec5 df;
        for (int c = 0; c < 5; ++c) {
            const double m2 = table.rows[i - 2][static_cast<size_t>(c) + 1];
            const double m1 = table.rows[i - 1][static_cast<size_t>(c) + 1];
            const double p1 = table.rows[i + 1][static_cast<size_t>(c) + 1];
            const double p2 = table.rows[i + 2][static_cast<size_t>(c) + 1];
            df[static_cast<size_t>(c)] = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
        }
        const std::array<double, 6> r = np_residual(f, df, lambda);
        const ConstraintValues c = constraints(f, lambda);
        const double f0sq = f.f0 * f.f0;

        double worst = 0.0;
        for (int k = 0; k < 6; ++k)
            worst = std::max(worst, std::abs(r[static_cast<size_t>(k)]));
        worst = std::max(worst, std::abs(c.r1) / std::max(1.0, f0sq));
        worst = std::max(worst, drift_metric(f, lambda));
        if (worst > rep.max_residual) {
            rep.max_residual = worst;
            rep.t_at_max = table.rows[i][0];
        }
        ++rep.rows_checked;
    }
    return rep;
}

nlohmann::json solve_summary(const Trajectory& traj, const std::optional<ClosingReport>& closing)
{
    nlohmann::json j;
    j["a"] = traj.a;
    j["lambda"] = traj.lambda;
    j["termination"] = termination_kind_name(traj.termination.kind);
    if (traj.termination.kind == TerminationKind::reached_t_max)
        j["t_star"] = nullptr;
    else
        j["t_star"] = traj.termination.t_star;
    j["max_drift"] = traj.max_drift;
    j["classification"] =
        traj.lambda == 1.0 ? homogeneity_name(classify_homogeneous(traj)) : "unclassified";
    if (closing) {
        nlohmann::json c;
        c["t_star"] = closing->t_star;
        c["closes_within_tol"] = closing->closes;
        c["max_residual"] = closing->max_residual;
        c["failed"] = closing->failed;
        j["closing_report"] = c;
    } else {
        j["closing_report"] = nullptr;
    }
    return j;
}

} // namespace npg2

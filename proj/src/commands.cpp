#include "npg2/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "npg2/analysis.hpp"
#include "npg2/homogeneous.hpp"
#include "npg2/trajectory_io.hpp"

namespace npg2::cli {

namespace {

bool write_file(const std::string& path, const std::string& contents, std::ostream& err)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        err << "cannot open " << path << " for writing\n";
        return false;
    }
    os << contents;
    return os.good();
}

std::optional<CsvTable> load_table(const std::string& path, std::ostream& err)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        err << "cannot open " << path << "\n";
        return std::nullopt;
    }
    try {
        return read_csv(is);
    } catch (const CsvFormatError& e) {
        err << "malformed CSV: " << e.what() << "\n";
        return std::nullopt;
    }
}

} // namespace

int cmd_oracle_check(const OracleCheckArgs& args, std::ostream& out, std::ostream& err)
{
    const std::optional<Oracle> which = oracle_from_name(args.oracle);
    if (!which) {
        err << "unknown oracle '" << args.oracle << "'\n";
        return 2;
    }
    if (args.samples < 2) {
        err << "need at least 2 samples\n";
        return 2;
    }

    const OracleSolution sol = oracle(*which);
    double worst = 0.0, worst_t = 0.0;
    for (int i = 0; i < args.samples; ++i) {
        const double t = sol.t_min()
                       + (sol.t_max() - sol.t_min()) * (i + 0.5) / static_cast<double>(args.samples);
        const PathPoint p = sol.eval(t);
        const std::array<double, 6> r = np_residual(p.f, p.df, sol.lambda());
        const ConstraintValues c = constraints(p.f, sol.lambda());
        double m = std::max(std::abs(c.r1), std::abs(c.r2));
        for (int k = 0; k < 5; ++k)
            m = std::max(m, std::abs(r[static_cast<size_t>(k)]));
        if (m > worst) {
            worst = m;
            worst_t = t;
        }
    }
    out << "oracle " << args.oracle << ": max residual " << format_double(worst) << " at t="
        << format_double(worst_t) << "\n";

    if (!args.dump_path.empty()) {
        const double t0 = sol.t_min() + 1e-3 * (sol.t_max() - sol.t_min());
        const double t1 = sol.t_max() - 1e-3 * (sol.t_max() - sol.t_min());
        std::ostringstream os;
        write_csv(os, table_from_solution(sol, t0, t1, args.samples));
        if (!write_file(args.dump_path, os.str(), err))
            return 1;
    }
    return worst < args.tol ? 0 : 1;
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err)
{
    try {
        args.config.validate();
    } catch (const InvalidConfigError& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return 2;
    }

    Trajectory traj;
    try {
        traj = solve(args.config);
    } catch (const Error& e) {
        err << "solve failed: " << e.what() << "\n";
        return 1;
    }

    std::optional<ClosingReport> closing;
    if (traj.termination.kind == TerminationKind::h0_zero) {
        try {
            closing = closing_diagnostics(traj);
        } catch (const Error&) {
            // too few samples near t*; summary reports null
        }
    }

    if (!args.csv_path.empty()) {
        std::ostringstream os;
        write_csv(os, table_from_trajectory(traj));
        if (!write_file(args.csv_path, os.str(), err))
            return 1;
    }

    const nlohmann::json summary = solve_summary(traj, closing);
    if (args.json_path.empty()) {
        out << summary.dump(2) << "\n";
    } else if (!write_file(args.json_path, summary.dump(2) + "\n", err)) {
        return 1;
    }
    return 0;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err)
{
    if (args.steps < 1) {
        err << "steps must be >= 1\n";
        return 2;
    }
    const double lo = std::min(args.a_from, args.a_to);
    const double hi = std::max(args.a_from, args.a_to);
    if ((lo <= 0.0 && hi >= 0.0) && !args.split) {
        err << "parameter range touches a = 0; pass --split to skip the zero point\n";
        return 2;
    }
    std::vector<double> grid;
    for (int i = 0; i < args.steps; ++i) {
        const double a = args.steps == 1
                           ? args.a_from
                           : args.a_from
                                 + (args.a_to - args.a_from) * static_cast<double>(i)
                                       / static_cast<double>(args.steps - 1);
        if (a == 0.0)
            continue;
        grid.push_back(a);
    }
    if (grid.empty()) {
        err << "empty parameter grid\n";
        return 2;
    }

    std::vector<SweepRow> rows;
    try {
        rows = sweep(grid, args.base);
    } catch (const Error& e) {
        err << "sweep failed: " << e.what() << "\n";
        return 1;
    }

    std::ostringstream os;
    os << "a,termination,t_star,max_drift,class,closing_verdict,closing_residual\n";
    for (const SweepRow& row : rows) {
        if (!row.ok) {
            os << format_double(row.a) << ",error(" << row.error << "),nan,nan,,," << "nan\n";
            continue;
        }
        const double t_star = row.termination.kind == TerminationKind::reached_t_max
                                ? std::numeric_limits<double>::quiet_NaN()
                                : row.termination.t_star;
        os << format_double(row.a) << ',' << termination_kind_name(row.termination.kind) << ','
           << format_double(t_star) << ',' << format_double(row.max_drift) << ','
           << homogeneity_name(row.cls) << ',' << row.closing_verdict << ','
           << format_double(row.closing_residual) << '\n';
    }
    if (args.csv_path.empty())
        out << os.str();
    else if (!write_file(args.csv_path, os.str(), err))
        return 1;
    return 0;
}

int cmd_transform(const TransformArgs& args, std::ostream& out, std::ostream& err)
{
    (void)out;
    const std::optional<Tau> tau = tau_from_name(args.tau);
    if (!tau) {
        err << "unknown tau '" << args.tau << "'\n";
        return 2;
    }
    const std::optional<CsvTable> table = load_table(args.in_path, err);
    if (!table)
        return 2;

    double lambda;
    if (args.lambda) {
        lambda = *args.lambda;
    } else if (const std::optional<double> fl = table->footer_value("lambda")) {
        lambda = *fl;
    } else {
        err << "no lambda footer in input; pass --lambda\n";
        return 2;
    }

    try {
        const CsvTable transformed = transform_table(*table, *tau, lambda);
        std::ostringstream os;
        write_csv(os, transformed);
        if (!write_file(args.out_path, os.str(), err))
            return 1;
    } catch (const CsvFormatError& e) {
        err << "transform failed: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_residual(const ResidualArgs& args, std::ostream& out, std::ostream& err)
{
    const std::optional<CsvTable> table = load_table(args.in_path, err);
    if (!table)
        return 2;

    double lambda;
    if (args.lambda) {
        lambda = *args.lambda;
    } else if (const std::optional<double> fl = table->footer_value("lambda")) {
        lambda = *fl;
    } else {
        err << "no lambda footer in input; pass --lambda\n";
        return 2;
    }

    ResidualReport rep;
    try {
        rep = residual_check(*table, lambda);
    } catch (const CsvFormatError& e) {
        err << "residual check failed: " << e.what() << "\n";
        return 2;
    } catch (const NonAdmissibleError& e) {
        err << "residual check failed: " << e.what() << "\n";
        return 1;
    }
    out << "max residual " << format_double(rep.max_residual) << " at t="
        << format_double(rep.t_at_max) << " over " << rep.rows_checked << " rows\n";
    return rep.max_residual < args.tol ? 0 : 1;
}

} // namespace npg2::cli

#pragma once

// Subcommand implementations behind the CLI: parse-free argument structs in,
// exit code out (0 pass, 1 numerical failure, 2 usage error). The CLI binary
// only maps flags onto these.

#include <optional>
#include <ostream>
#include <string>

#include "npg2/integrate.hpp"

namespace npg2::cli {

struct OracleCheckArgs {
    std::string oracle;
    int samples = 1000;
    double tol = 1e-9;
    std::string dump_path; // optional: write the closed-form trajectory CSV here
};

struct SolveArgs {
    SolveConfig config;
    std::string csv_path;
    std::string json_path; // empty: summary to stdout
};

struct SweepArgs {
    double a_from = 0.0;
    double a_to = 0.0;
    int steps = 1;
    bool split = false; // allow a range crossing 0 by dropping the zero point
    SolveConfig base;   // a is taken from the grid
    std::string csv_path;
};

struct TransformArgs {
    std::string tau;
    std::string in_path;
    std::string out_path;
    std::optional<double> lambda; // default: the input's lambda footer
};

struct ResidualArgs {
    std::string in_path;
    std::optional<double> lambda;
    double tol = 1e-6;
};

int cmd_oracle_check(const OracleCheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_transform(const TransformArgs& args, std::ostream& out, std::ostream& err);
int cmd_residual(const ResidualArgs& args, std::ostream& out, std::ostream& err);

} // namespace npg2::cli

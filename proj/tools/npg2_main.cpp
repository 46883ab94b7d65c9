// Command-line front end: oracle-check, solve, sweep, transform, residual.
// Exit codes: 0 success/pass, 1 numerical failure or tolerance fail, 2 usage error.

#include <iostream>

#include <CLI11.hpp>

#include "npg2/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"SU(2)^3-invariant nearly parallel G2-structure solver"};
    app.require_subcommand(1);

    npg2::cli::OracleCheckArgs oracle_args;
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "verify a closed-form solution against the structure equations");
    oracle->add_option("--oracle", oracle_args.oracle,
                       "sine_cone, round_sphere or squashed_sphere")
        ->required();
    oracle->add_option("--samples", oracle_args.samples, "interior sample count");
    oracle->add_option("--tol", oracle_args.tol, "residual tolerance");
    oracle->add_option("--dump", oracle_args.dump_path, "write the sampled trajectory CSV here");

    npg2::cli::SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "integrate the singular initial value problem");
    solve->add_option("--a", solve_args.config.a, "family parameter (nonzero)")->required();
    solve->add_option("--lambda", solve_args.config.lambda, "structure constant");
    solve->add_option("--t-max", solve_args.config.t_max, "integration end");
    solve->add_option("--rtol", solve_args.config.rtol, "relative tolerance");
    solve->add_option("--atol", solve_args.config.atol, "absolute tolerance");
    solve->add_option("--series-order", solve_args.config.series_order, "startup series order");
    solve->add_option("--t-switch", solve_args.config.t_switch, "series-to-integrator handoff");
    solve->add_option("--samples", solve_args.config.sample_count, "output sample count");
    solve->add_option("--drift-max", solve_args.config.events.drift_max, "constraint drift bound");
    solve->add_option("--out", solve_args.csv_path, "trajectory CSV path");
    solve->add_option("--json", solve_args.json_path, "summary JSON path (default stdout)");

    npg2::cli::SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "solve over a grid of family parameters");
    sweep->add_option("--a-from", sweep_args.a_from)->required();
    sweep->add_option("--a-to", sweep_args.a_to)->required();
    sweep->add_option("--steps", sweep_args.steps)->required();
    sweep->add_flag("--split", sweep_args.split, "allow a range touching 0 by skipping it");
    sweep->add_option("--lambda", sweep_args.base.lambda);
    sweep->add_option("--t-max", sweep_args.base.t_max);
    sweep->add_option("--rtol", sweep_args.base.rtol);
    sweep->add_option("--atol", sweep_args.base.atol);
    sweep->add_option("--samples", sweep_args.base.sample_count);
    sweep->add_option("--out", sweep_args.csv_path, "sweep CSV path (default stdout)");

    npg2::cli::TransformArgs transform_args;
    double transform_lambda = 0.0;
    CLI::App* transform = app.add_subcommand("transform", "apply a discrete symmetry to a CSV");
    transform->add_option("--tau", transform_args.tau, "o, 12, 13, 23, 123 or 132")->required();
    transform->add_option("--in", transform_args.in_path)->required();
    transform->add_option("--out", transform_args.out_path)->required();
    CLI::Option* tl = transform->add_option("--lambda", transform_lambda,
                                            "override the input's lambda footer");

    npg2::cli::ResidualArgs residual_args;
    double residual_lambda = 0.0;
    CLI::App* residual =
        app.add_subcommand("residual", "finite-difference verification of a trajectory CSV");
    residual->add_option("--in", residual_args.in_path)->required();
    CLI::Option* rl = residual->add_option("--lambda", residual_lambda,
                                           "override the input's lambda footer");
    residual->add_option("--tol", residual_args.tol, "pass/fail threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (oracle->parsed())
        return npg2::cli::cmd_oracle_check(oracle_args, std::cout, std::cerr);
    if (solve->parsed())
        return npg2::cli::cmd_solve(solve_args, std::cout, std::cerr);
    if (sweep->parsed())
        return npg2::cli::cmd_sweep(sweep_args, std::cout, std::cerr);
    if (transform->parsed()) {
        if (tl->count())
            transform_args.lambda = transform_lambda;
        return npg2::cli::cmd_transform(transform_args, std::cout, std::cerr);
    }
    if (residual->parsed()) {
        if (rl->count())
            residual_args.lambda = residual_lambda;
        return npg2::cli::cmd_residual(residual_args, std::cout, std::cerr);
    }
    return 2;
}

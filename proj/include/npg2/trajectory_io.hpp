#pragma once

// Flat-file formats: the 11-column trajectory CSV
// (t,f0,f1,f2,f3,f4,g1,g2,g3,R1,R2 with # footers), tau transforms of tables,
// finite-difference residual verification of tables, and the JSON solve
// summary. Numbers are serialized with 17 significant digits so re-reading is
// exact and re-serializing is byte-identical.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "npg2/analysis.hpp"
#include "npg2/integrate.hpp"
#include "npg2/symmetries.hpp"

namespace npg2 {

inline constexpr char kCsvHeader[] = "t,f0,f1,f2,f3,f4,g1,g2,g3,R1,R2";

struct CsvTable {
    std::vector<std::array<double, 11>> rows; // column order as in kCsvHeader
    std::vector<std::string> footers;         // verbatim "# key=value" lines

    std::optional<double> footer_value(const std::string& key) const;
};

CsvTable table_from_trajectory(const Trajectory& traj);

// Closed-form samples on n uniform points of [t0, t1] (both interior to the
// solution's domain).
CsvTable table_from_solution(const OracleSolution& sol, double t0, double t1, int n);

void write_csv(std::ostream& os, const CsvTable& table);
CsvTable read_csv(std::istream& is); // throws CsvFormatError

// Applies tau to the f-columns (and reflects/negates t for tau_o), then
// recomputes the g- and R-columns; rows with f0 = 0 are dropped.
CsvTable transform_table(const CsvTable& table, Tau tau, double lambda);

struct ResidualReport {
    double max_residual = 0.0; // max over rows of form residuals and normalized R1, R2
    double t_at_max = 0.0;
    int rows_checked = 0;
};

// 4th-order central differences for f' on the uniform grid; evaluates the
// nearly parallel defect and the constraints on interior rows.
ResidualReport residual_check(const CsvTable& table, double lambda);

nlohmann::json solve_summary(const Trajectory& traj, const std::optional<ClosingReport>& closing);

std::string format_double(double v); // %.17g

} // namespace npg2

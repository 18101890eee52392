#pragma once

#include "fastl1/solver.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fastl1 {

using CsvCell = std::variant<double, long long, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

/// Header line, then one line per row. Doubles print as %.16e, so every value
/// carries 17 significant digits; strings are written verbatim.
void write_csv(std::ostream& os, const CsvTable& table);

/// FASTL1_WORKERS if set to a positive integer, otherwise the hardware thread count.
[[nodiscard]] std::size_t default_workers();

enum class MeshKind { graded, composite };

struct ConvergenceSpec {
    double alpha = 0.4;
    std::optional<double> sigma;              ///< defaults to 2 - alpha
    double gamma = 1.0;
    std::vector<std::size_t> steps{50, 100, 200};
    std::optional<std::size_t> grid_cells;    ///< fixed M; empty couples M = N
    double final_time = 1.0;
    MeshKind mesh = MeshKind::graded;
    KernelMode kernel = KernelMode::fast;
    double soe_tolerance = 1e-12;
    double cg_tolerance = 1e-11;
    std::size_t workers = 1;
};

/// Manufactured Fisher problem. Rows "N,M,error,order" (order empty on the first
/// row), then a "target" row carrying min(gamma sigma, 2 - alpha) in the last column.
[[nodiscard]] CsvTable cmd_convergence(const ConvergenceSpec& spec);

/// Rows "t_n,q1,q2,q3", then a "slope" row with the fitted slope per probe.
[[nodiscard]] CsvTable cmd_singularity(const SingularityConfig& config);

struct BenchmarkSpec {
    double alpha = 0.5;
    double gamma = 2.0;
    std::vector<std::size_t> total_steps{512, 1024, 2048, 4096, 8192};
    std::size_t grid_cells = 16;
    double final_time = 50.0;
    MeshKind mesh = MeshKind::composite;
    double soe_tolerance = 1e-12;
    double cg_tolerance = 1e-11;
};

/// Fisher problem timed in both kernel modes, serially so runs do not compete
/// for cores. Rows "N_T,seconds_fast,seconds_direct", then a "slope" row with
/// the fitted log-log slopes.
[[nodiscard]] CsvTable cmd_benchmark(const BenchmarkSpec& spec);

struct SoeReportSpec {
    std::vector<double> alphas{0.5};
    std::vector<double> tolerances{1e-4, 1e-8, 1e-12};
    std::vector<double> cutoffs{1e-6};
    std::vector<double> horizons{1.0, 10.0, 100.0};
    std::size_t workers = 1;
};

struct SoeReport {
    CsvTable table;
    std::size_t failures = 0;
};

/// Rows "alpha,eps,dt,T,Nq,certified_error" over the Cartesian product, looping
/// alpha outermost and T innermost. A row whose construction fails has Nq
/// "failed" and the best error reached.
[[nodiscard]] SoeReport cmd_soe_report(const SoeReportSpec& spec);

} // namespace fastl1

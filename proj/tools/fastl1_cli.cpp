// Command-line driver for the convergence, singularity, benchmark and SOE
// experiments. Writes one CSV per invocation to --out or stdout.

#include "fastl1/errors.hpp"
#include "fastl1/experiments.hpp"
#include "fastl1/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace fastl1;

struct Options {
    std::string experiment;
    std::optional<double> alpha;
    std::optional<double> sigma;
    std::optional<double> gamma;
    std::vector<std::size_t> steps;
    std::vector<std::size_t> total_steps;
    std::optional<std::size_t> grid_cells;
    std::vector<double> final_times;
    std::vector<double> soe_tolerances;
    std::vector<double> cutoffs;
    std::optional<std::string> mesh;
    std::string kernel = "fast";
    double cg_tolerance = 1e-11;
    std::string out;
};

template <class T>
std::optional<T> single(const std::vector<T>& values, const char* flag)
{
    if (values.empty()) {
        return std::nullopt;
    }
    if (values.size() > 1) {
        throw ValidationError(std::string(flag) + " takes one value for this experiment");
    }
    return values.front();
}

MeshKind mesh_kind(const Options& o, MeshKind fallback)
{
    if (!o.mesh) {
        return fallback;
    }
    return *o.mesh == "graded" ? MeshKind::graded : MeshKind::composite;
}

KernelMode kernel_mode(const Options& o)
{
    return o.kernel == "direct" ? KernelMode::direct : KernelMode::fast;
}

double soe_tolerance(const Options& o)
{
    return single(o.soe_tolerances, "--eps-soe").value_or(1e-12);
}

CsvTable convergence(const Options& o)
{
    ConvergenceSpec spec;
    spec.alpha = o.alpha.value_or(spec.alpha);
    spec.sigma = o.sigma;
    spec.gamma = o.gamma.value_or(spec.gamma);
    if (!o.steps.empty()) {
        spec.steps = o.steps;
    }
    spec.grid_cells = o.grid_cells;
    spec.final_time = single(o.final_times, "--T").value_or(spec.final_time);
    spec.mesh = mesh_kind(o, MeshKind::graded);
    spec.kernel = kernel_mode(o);
    spec.soe_tolerance = soe_tolerance(o);
    spec.cg_tolerance = o.cg_tolerance;
    spec.workers = default_workers();
    return cmd_convergence(spec);
}

CsvTable singularity(const Options& o)
{
    if (mesh_kind(o, MeshKind::composite) != MeshKind::composite) {
        throw ValidationError("singularity runs on the composite mesh");
    }
    SingularityConfig c;
    c.alpha = o.alpha.value_or(c.alpha);
    c.gamma = o.gamma.value_or(c.gamma);
    c.grid_cells = o.grid_cells.value_or(c.grid_cells);
    c.total_steps = single(o.total_steps, "--NT").value_or(c.total_steps);
    c.final_time = single(o.final_times, "--T");
    c.soe_tolerance = soe_tolerance(o);
    c.kernel = kernel_mode(o);
    return cmd_singularity(c);
}

CsvTable benchmark(const Options& o)
{
    BenchmarkSpec spec;
    spec.alpha = o.alpha.value_or(spec.alpha);
    spec.gamma = o.gamma.value_or(spec.gamma);
    if (!o.total_steps.empty()) {
        spec.total_steps = o.total_steps;
    }
    spec.grid_cells = o.grid_cells.value_or(spec.grid_cells);
    spec.final_time = single(o.final_times, "--T").value_or(spec.final_time);
    spec.mesh = mesh_kind(o, MeshKind::composite);
    spec.soe_tolerance = soe_tolerance(o);
    spec.cg_tolerance = o.cg_tolerance;
    return cmd_benchmark(spec);
}

int soe_report(const Options& o, std::ostream& os)
{
    SoeReportSpec spec;
    if (o.alpha) {
        spec.alphas = {*o.alpha};
    }
    if (!o.soe_tolerances.empty()) {
        spec.tolerances = o.soe_tolerances;
    }
    if (!o.cutoffs.empty()) {
        spec.cutoffs = o.cutoffs;
    }
    if (!o.final_times.empty()) {
        spec.horizons = o.final_times;
    }
    spec.workers = default_workers();
    const SoeReport report = cmd_soe_report(spec);
    write_csv(os, report.table);
    if (report.failures > 0) {
        std::cerr << "soe-report: " << report.failures << " row(s) failed certification\n";
        return 4;
    }
    return 0;
}

// Single solve: manufactured Fisher problem when --sigma is given, else the
// plain Fisher problem.
int single_run(const Options& o, std::ostream& os)
{
    RunConfig rc;
    rc.alpha = o.alpha.value_or(0.5);
    const double gamma = o.gamma.value_or(1.0);
    const std::size_t n = single(o.steps, "--N").value_or(100);
    const double T = single(o.final_times, "--T").value_or(1.0);
    rc.mesh = mesh_kind(o, MeshKind::graded) == MeshKind::graded
                  ? MeshSpec{GradedSpec{T, n, gamma}}
                  : MeshSpec{CompositeSpec{T, n, gamma}};
    const std::size_t m = o.grid_cells.value_or(n);
    rc.grid = SpatialGrid2D::unit_pi_square(m);
    rc.soe_tolerance = soe_tolerance(o);
    rc.cg_tolerance = o.cg_tolerance;
    rc.kernel = kernel_mode(o);
    const SemilinearProblem problem =
        o.sigma ? manufactured_fisher_problem(*o.sigma, rc.alpha) : fisher_problem();
    const RunResult result = run(problem, rc);
    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    write_run_csv(os, result, m);
    return 0;
}

int dispatch(const Options& o, std::ostream& os)
{
    if (o.experiment == "soe-report") {
        return soe_report(o, os);
    }
    if (o.experiment == "run") {
        return single_run(o, os);
    }
    CsvTable table;
    if (o.experiment == "convergence") {
        table = convergence(o);
    } else if (o.experiment == "singularity") {
        table = singularity(o);
    } else {
        table = benchmark(o);
    }
    write_csv(os, table);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fast L1 solver for time-fractional semilinear diffusion"};
    Options o;
    app.add_option("--experiment", o.experiment, "Experiment to run")
        ->required()
        ->check(CLI::IsMember({"convergence", "singularity", "benchmark", "soe-report", "run"}));
    app.add_option("--alpha", o.alpha, "Fractional order in (0,1)");
    app.add_option("--sigma", o.sigma, "Regularity of the manufactured solution");
    app.add_option("--gamma", o.gamma, "Mesh grading parameter");
    app.add_option("--N", o.steps, "Time steps, comma list")->delimiter(',');
    app.add_option("--NT", o.total_steps, "Total time steps, comma list")->delimiter(',');
    app.add_option("--M", o.grid_cells, "Spatial cells per direction (fixed M)");
    app.add_option("--T", o.final_times, "Final time (list for soe-report)")->delimiter(',');
    app.add_option("--eps-soe", o.soe_tolerances, "SOE tolerance (list for soe-report)")
        ->delimiter(',');
    app.add_option("--dt", o.cutoffs, "SOE cutoff, soe-report only, comma list")->delimiter(',');
    app.add_option("--mesh", o.mesh, "Time mesh")->check(CLI::IsMember({"graded", "composite"}));
    app.add_option("--kernel", o.kernel, "Caputo evaluation")
        ->check(CLI::IsMember({"fast", "direct"}));
    app.add_option("--cg-tol", o.cg_tolerance, "Relative CG tolerance");
    app.add_option("--out", o.out, "Output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (o.out.empty()) {
            return dispatch(o, std::cout);
        }
        std::ofstream file(o.out);
        if (!file) {
            throw ValidationError("cannot open " + o.out);
        }
        return dispatch(o, file);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const SoeCertificationError& e) {
        std::cerr << "SOE certification failed: " << e.what() << '\n';
        return 4;
    }
}

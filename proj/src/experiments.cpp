#include "fastl1/experiments.hpp"

#include "fastl1/consistency.hpp"
#include "fastl1/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

namespace fastl1 {

namespace {

std::string format_cell(const CsvCell& cell)
{
    if (const auto* d = std::get_if<double>(&cell)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.16e", *d);
        return buf;
    }
    if (const auto* i = std::get_if<long long>(&cell)) {
        return std::to_string(*i);
    }
    return std::get<std::string>(cell);
}

// Evaluates job(0..count-1) on up to `workers` threads; results keep index order.
template <class R, class Job>
std::vector<R> parallel_map(std::size_t count, std::size_t workers, Job job)
{
    std::vector<R> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < n; ++k) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return results;
}

MeshSpec make_mesh(MeshKind kind, double T, std::size_t steps, double gamma)
{
    if (kind == MeshKind::graded) {
        return GradedSpec{T, steps, gamma};
    }
    return CompositeSpec{T, steps, gamma};
}

void require_nonempty(const auto& list, const char* what)
{
    if (list.empty()) {
        throw ValidationError(std::string(what) + ": empty sweep");
    }
}

} // namespace

void write_csv(std::ostream& os, const CsvTable& table)
{
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        os << (c ? "," : "") << table.header[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << format_cell(row[c]);
        }
        os << '\n';
    }
}

std::size_t default_workers()
{
    if (const char* env = std::getenv("FASTL1_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

CsvTable cmd_convergence(const ConvergenceSpec& spec)
{
    require_nonempty(spec.steps, "cmd_convergence");
    const double sigma = spec.sigma.value_or(2.0 - spec.alpha);
    const SemilinearProblem problem = manufactured_fisher_problem(sigma, spec.alpha);

    struct Row {
        std::size_t m = 0;
        double error = 0.0;
    };
    const auto rows = parallel_map<Row>(spec.steps.size(), spec.workers, [&](std::size_t i) {
        const std::size_t n = spec.steps[i];
        RunConfig rc;
        rc.alpha = spec.alpha;
        rc.mesh = make_mesh(spec.mesh, spec.final_time, n, spec.gamma);
        const std::size_t m = spec.grid_cells.value_or(n);
        rc.grid = SpatialGrid2D::unit_pi_square(m);
        rc.kernel = spec.kernel;
        rc.soe_tolerance = spec.soe_tolerance;
        rc.cg_tolerance = spec.cg_tolerance;
        return Row{m, run(problem, rc).max_error};
    });

    CsvTable table{{"N", "M", "error", "order"}, {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CsvCell order = std::string{};
        if (i > 0) {
            order = estimate_order(rows[i - 1].error, rows[i].error);
        }
        table.rows.push_back({static_cast<long long>(spec.steps[i]),
                              static_cast<long long>(rows[i].m), rows[i].error, order});
    }
    table.rows.push_back({std::string("target"), std::string{}, std::string{},
                          std::min(spec.gamma * sigma, 2.0 - spec.alpha)});
    return table;
}

CsvTable cmd_singularity(const SingularityConfig& config)
{
    const SingularityTable scan = singularity_scan(config);
    CsvTable table{{"t_n", "q1", "q2", "q3"}, {}};
    for (std::size_t n = 0; n < scan.times.size(); ++n) {
        const auto& q = scan.quotients[n];
        table.rows.push_back({scan.times[n], q[0], q[1], q[2]});
    }
    table.rows.push_back({std::string("slope"), scan.slopes[0], scan.slopes[1], scan.slopes[2]});
    return table;
}

CsvTable cmd_benchmark(const BenchmarkSpec& spec)
{
    require_nonempty(spec.total_steps, "cmd_benchmark");
    const SemilinearProblem problem = fisher_problem();
    std::vector<double> sizes;
    std::vector<double> fast;
    std::vector<double> direct;
    CsvTable table{{"N_T", "seconds_fast", "seconds_direct"}, {}};
    for (std::size_t nt : spec.total_steps) {
        RunConfig rc;
        rc.alpha = spec.alpha;
        rc.mesh = make_mesh(spec.mesh, spec.final_time, nt, spec.gamma);
        rc.grid = SpatialGrid2D::unit_pi_square(spec.grid_cells);
        rc.soe_tolerance = spec.soe_tolerance;
        rc.cg_tolerance = spec.cg_tolerance;
        rc.kernel = KernelMode::fast;
        const double tf = run(problem, rc).wall_seconds;
        rc.kernel = KernelMode::direct;
        const double td = run(problem, rc).wall_seconds;
        sizes.push_back(static_cast<double>(nt));
        fast.push_back(tf);
        direct.push_back(td);
        table.rows.push_back({static_cast<long long>(nt), tf, td});
    }
    if (sizes.size() >= 2) {
        table.rows.push_back({std::string("slope"), loglog_slope(sizes, fast),
                              loglog_slope(sizes, direct)});
    }
    return table;
}

SoeReport cmd_soe_report(const SoeReportSpec& spec)
{
    require_nonempty(spec.alphas, "cmd_soe_report");
    require_nonempty(spec.tolerances, "cmd_soe_report");
    require_nonempty(spec.cutoffs, "cmd_soe_report");
    require_nonempty(spec.horizons, "cmd_soe_report");

    struct Case {
        double alpha, eps, dt, T;
    };
    std::vector<Case> cases;
    for (double a : spec.alphas) {
        for (double e : spec.tolerances) {
            for (double dt : spec.cutoffs) {
                for (double T : spec.horizons) {
                    cases.push_back({a, e, dt, T});
                }
            }
        }
    }
    struct Outcome {
        long long size = -1;
        double error = 0.0;
    };
    const auto outcomes = parallel_map<Outcome>(cases.size(), spec.workers, [&](std::size_t i) {
        const Case& c = cases[i];
        try {
            const SoeApprox soe = soe_build(c.alpha, c.eps, c.dt, c.T);
            return Outcome{static_cast<long long>(soe.size()), soe_certified_error(soe)};
        } catch (const SoeCertificationError& e) {
            return Outcome{-1, e.achieved_error()};
        }
    });

    SoeReport report;
    report.table.header = {"alpha", "eps", "dt", "T", "Nq", "certified_error"};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Case& c = cases[i];
        CsvCell nq = outcomes[i].size;
        if (outcomes[i].size < 0) {
            nq = std::string("failed");
            ++report.failures;
        }
        report.table.rows.push_back({c.alpha, c.eps, c.dt, c.T, nq, outcomes[i].error});
    }
    return report;
}

} // namespace fastl1

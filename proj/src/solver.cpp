#include "fastl1/solver.hpp"

#include "fastl1/consistency.hpp"
#include "fastl1/discrete_kernels.hpp"
#include "fastl1/errors.hpp"
#include "fastl1/kernel_functions.hpp"
#include "fastl1/l1.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fastl1 {

void validate_problem(const SemilinearProblem& problem)
{
    if (!problem.reaction || !problem.reaction_slope || !problem.initial) {
        throw ValidationError("problem needs f, f' and an initial field");
    }
    constexpr double delta = 1e-5;
    for (double u : {-2.0, -1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        const double fd =
            (problem.reaction(u + delta) - problem.reaction(u - delta)) / (2.0 * delta);
        const double slope = problem.reaction_slope(u);
        if (std::fabs(slope - fd) > 1e-6 * (1.0 + std::fabs(slope))) {
            std::ostringstream msg;
            msg << "problem: f' disagrees with a difference quotient of f at u = " << u;
            throw ValidationError(msg.str());
        }
    }
}

SemilinearProblem fisher_problem()
{
    SemilinearProblem p;
    p.reaction = [](double u) { return u * (1.0 - u); };
    p.reaction_slope = [](double u) { return 1.0 - 2.0 * u; };
    p.initial = [](double x, double y) { return std::sin(x) * std::sin(y); };
    return p;
}

SemilinearProblem manufactured_problem(double sigma, double alpha,
                                       std::function<double(double)> reaction,
                                       std::function<double(double)> slope)
{
    check_order(alpha);
    if (!(sigma > 0.0 && sigma < 2.0) || sigma == 1.0) {
        throw ValidationError("manufactured problem: sigma must lie in (0,1) or (1,2)");
    }
    // omega_{1+sigma}(t) = t^sigma / Gamma(1+sigma), its Caputo derivative
    // omega_{1+sigma-alpha}(t) = t^(sigma-alpha) / Gamma(1+sigma-alpha).
    const double c_u = 1.0 / std::tgamma(1.0 + sigma);
    const double c_d = 1.0 / std::tgamma(1.0 + sigma - alpha);
    auto amplitude = [sigma, c_u](double t) { return t > 0.0 ? c_u * std::pow(t, sigma) : 0.0; };

    SemilinearProblem p;
    p.reaction = reaction;
    p.reaction_slope = std::move(slope);
    p.initial = [](double, double) { return 0.0; };
    p.exact = [amplitude](double x, double y, double t) {
        return amplitude(t) * std::sin(x) * std::sin(y);
    };
    p.forcing = [=, f = std::move(reaction)](double x, double y, double t) {
        const double s = std::sin(x) * std::sin(y);
        const double u = amplitude(t) * s;
        const double caputo = c_d * std::pow(t, sigma - alpha);
        return (caputo + 2.0 * amplitude(t)) * s - f(u);
    };
    return p;
}

SemilinearProblem manufactured_fisher_problem(double sigma, double alpha)
{
    return manufactured_problem(
        sigma, alpha, [](double u) { return u * (1.0 - u); },
        [](double u) { return 1.0 - 2.0 * u; });
}

TimeMesh build_mesh(const MeshSpec& spec)
{
    return std::visit(
        [](const auto& s) -> TimeMesh {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, GradedSpec>) {
                return build_graded(s);
            } else {
                return build_composite(s);
            }
        },
        spec);
}

TwoLevelStepper::TwoLevelStepper(const SemilinearProblem& problem, double alpha, TimeMesh mesh,
                                 SpatialGrid2D grid, KernelMode mode,
                                 std::shared_ptr<const SoeApprox> soe, double cg_tolerance)
    : problem_(problem), alpha_(alpha), mesh_(std::move(mesh)), grid_(grid), mode_(mode),
      soe_(std::move(soe)), cg_tolerance_(cg_tolerance), u_(grid_), du_(grid_)
{
    check_order(alpha);
    validate_problem(problem_);
    if (mode_ == KernelMode::fast) {
        if (!soe_) {
            throw ValidationError("fast mode needs an SOE approximation");
        }
        if (std::fabs(soe_->alpha - alpha) > 1e-15) {
            throw ValidationError("SOE was built for a different fractional order");
        }
        if (soe_->cutoff > mesh_.min_step() * (1.0 + 1e-12) ||
            soe_->horizon < mesh_.final_time() * (1.0 - 1e-12)) {
            throw ValidationError("SOE range does not cover [min step, T]");
        }
    }
    u_ = GridFunction::sample(grid_, problem_.initial, true);
    for (std::size_t j = 1; j < grid_.m2(); ++j) {
        for (std::size_t i = 1; i < grid_.m1(); ++i) {
            interior_.push_back(grid_.index(i, j));
        }
    }
    if (mode_ == KernelMode::fast) {
        history_.emplace(soe_, interior_.size());
    } else {
        increments_.reserve(mesh_.num_steps());
    }
}

void TwoLevelStepper::history_term(std::size_t n, std::span<double> out)
{
    if (mode_ == KernelMode::fast) {
        const double tau = mesh_.step(n);
        if (tau != factors_tau_) {
            factors_ = step_factors(*soe_, tau);
            factors_tau_ = tau;
        }
        history_->history_term(n, factors_, out);
        return;
    }
    std::fill(out.begin(), out.end(), 0.0);
    if (n == 1) {
        return;
    }
    const L1Kernel kernel = l1_coefficients(mesh_, alpha_, n);
    for (std::size_t k = 1; k < n; ++k) {
        const double a = kernel.for_step(k);
        const double* inc = increments_[k - 1].data();
        for (std::size_t d = 0; d < out.size(); ++d) {
            out[d] += a * inc[d];
        }
    }
}

void TwoLevelStepper::record_increment(std::size_t n, const GridFunction& du)
{
    std::vector<double> packed(interior_.size());
    for (std::size_t d = 0; d < interior_.size(); ++d) {
        packed[d] = du.data()[interior_[d]];
    }
    if (mode_ == KernelMode::fast) {
        history_->update(n, factors_, packed);
    } else {
        increments_.push_back(std::move(packed));
    }
}

void TwoLevelStepper::step(std::size_t n)
{
    if (n != level_ + 1 || n > mesh_.num_steps()) {
        std::ostringstream msg;
        msg << "step: cannot advance to level " << n << " from level " << level_;
        throw ValidationError(msg.str());
    }
    const double tn = mesh_.t(n);
    const double tau = mesh_.step(n);
    const double a0 = power_increment(0.0, tau, 1.0 - alpha_) / (std::tgamma(2.0 - alpha_) * tau);

    std::vector<double> hist(interior_.size());
    history_term(n, hist);

    const GridFunction lap = laplacian(grid_, u_);
    GridFunction rhs(grid_);
    GridFunction slope(grid_);
    for (std::size_t d = 0; d < interior_.size(); ++d) {
        const std::size_t k = interior_[d];
        const double u = u_.data()[k];
        double g = 0.0;
        if (problem_.forcing) {
            const std::size_t i = k % (grid_.m1() + 1);
            const std::size_t j = k / (grid_.m1() + 1);
            g = problem_.forcing(grid_.x(i), grid_.y(j), tn);
        }
        rhs.data()[k] = lap.data()[k] + problem_.reaction(u) + g - hist[d];
        slope.data()[k] = problem_.reaction_slope(u);
    }

    ShiftedSolveOptions opts;
    opts.relative_tolerance = cg_tolerance_;
    opts.initial_guess = &du_;
    ShiftedSolveResult solved = solve_shifted(grid_, a0, slope, rhs, opts);
    cg_iterations_ += solved.iterations;
    du_ = std::move(solved.solution);

    for (std::size_t k : interior_) {
        u_.data()[k] += du_.data()[k];
    }
    record_increment(n, du_);
    level_ = n;
}

double level_error(const SpatialGrid2D& grid, const GridFunction& u,
                   const std::function<double(double, double, double)>& exact, double t)
{
    if (!exact) {
        throw ValidationError("level_error: no exact solution");
    }
    double worst = 0.0;
    for (std::size_t j = 1; j < grid.m2(); ++j) {
        for (std::size_t i = 1; i < grid.m1(); ++i) {
            worst = std::max(worst, std::fabs(exact(grid.x(i), grid.y(j), t) - u(i, j)));
        }
    }
    return worst;
}

double compute_error(const SpatialGrid2D& grid, const TimeMesh& mesh,
                     std::span<const GridFunction> fields,
                     const std::function<double(double, double, double)>& exact)
{
    if (!exact) {
        throw ValidationError("compute_error: no exact solution");
    }
    if (fields.size() != mesh.num_steps()) {
        throw ValidationError("compute_error: need one field per level");
    }
    double e = 0.0;
    for (std::size_t l = 1; l <= fields.size(); ++l) {
        e = std::max(e, level_error(grid, fields[l - 1], exact, mesh.t(l)));
    }
    return e;
}

double estimate_order(double coarse_error, double fine_error)
{
    if (!(coarse_error > 0.0) || !(fine_error > 0.0)) {
        throw ValidationError("estimate_order: errors must be positive");
    }
    return std::log2(coarse_error / fine_error);
}

RunResult run(const SemilinearProblem& problem, const RunConfig& config,
              const LevelObserver& observer)
{
    check_order(config.alpha);
    if (!(config.soe_tolerance > 0.0)) {
        throw ValidationError("SOE tolerance must be positive");
    }
    TimeMesh mesh = build_mesh(config.mesh);
    std::vector<std::string> warnings;
    std::shared_ptr<const SoeApprox> soe;
    if (config.kernel == KernelMode::fast) {
        soe = std::make_shared<const SoeApprox>(
            soe_build(config.alpha, config.soe_tolerance, mesh.min_step(), mesh.final_time()));
        const double admissible = admissible_soe_tolerance(config.alpha, mesh.final_time());
        if (config.soe_tolerance > admissible) {
            std::ostringstream msg;
            msg << "SOE tolerance " << config.soe_tolerance << " exceeds " << admissible
                << "; the fast kernel may lose monotonicity";
            warnings.push_back(msg.str());
        }
    }

    TwoLevelStepper stepper(problem, config.alpha, mesh, config.grid, config.kernel, soe,
                            config.cg_tolerance);
    RunResult result{GridFunction(config.grid), mesh, {}, 0.0, 0.0, soe ? soe->size() : 0, 0,
                     std::move(warnings)};
    if (observer) {
        observer(0, 0.0, stepper.solution());
    }

    double error_seconds = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t n = 1; n <= mesh.num_steps(); ++n) {
        stepper.step(n);
        if (problem.exact || observer) {
            const auto pause = std::chrono::steady_clock::now();
            if (problem.exact) {
                result.level_errors.push_back(
                    level_error(config.grid, stepper.solution(), problem.exact, mesh.t(n)));
            }
            if (observer) {
                observer(n, mesh.t(n), stepper.solution());
            }
            error_seconds +=
                std::chrono::duration<double>(std::chrono::steady_clock::now() - pause).count();
        }
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() -
        error_seconds;
    result.final_field = stepper.solution();
    result.cg_iterations = stepper.cg_iterations();
    result.max_error = problem.exact
                           ? *std::max_element(result.level_errors.begin(), result.level_errors.end())
                           : std::numeric_limits<double>::quiet_NaN();
    return result;
}

std::array<ProbePoint, 3> default_probes()
{
    constexpr double pi = std::numbers::pi;
    return {{{pi / 4, pi / 4}, {pi / 2, pi / 2}, {3 * pi / 4, pi / 4}}};
}

void write_run_csv(std::ostream& os, const RunResult& result, std::size_t grid_cells)
{
    const auto old_flags = os.flags();
    const auto old_prec = os.precision(16);
    os.setf(std::ios::scientific, std::ios::floatfield);
    os << "n,t_n,error\n";
    for (std::size_t n = 1; n <= result.level_errors.size(); ++n) {
        os << n << ',' << result.mesh.t(n) << ',' << result.level_errors[n - 1] << '\n';
    }
    os << "N,M,e,wall_seconds,Nq\n";
    os << result.mesh.num_steps() << ',' << grid_cells << ',' << result.max_error << ','
       << result.wall_seconds << ',' << result.soe_size << '\n';
    os.flags(old_flags);
    os.precision(old_prec);
}

SingularityTable difference_quotients(const TimeMesh& mesh,
                                      const std::array<std::vector<double>, 3>& series)
{
    SingularityTable table;
    const std::size_t steps = mesh.num_steps();
    for (const auto& s : series) {
        if (s.size() != steps + 1) {
            throw ValidationError("difference_quotients: need N + 1 values per probe");
        }
    }
    for (std::size_t n = 1; n <= steps; ++n) {
        table.times.push_back(mesh.t(n));
        table.midpoints.push_back(0.5 * (mesh.t(n - 1) + mesh.t(n)));
        std::array<double, 3> q{};
        for (std::size_t p = 0; p < 3; ++p) {
            q[p] = (series[p][n] - series[p][n - 1]) / mesh.step(n);
        }
        table.quotients.push_back(q);
    }
    return table;
}

void fit_singularity_slopes(SingularityTable& table, double window_end, double decades)
{
    if (table.midpoints.size() < 3) {
        throw ValidationError("fit_singularity_slopes: need at least three steps");
    }
    if (!(decades > 0.0)) {
        throw ValidationError("fit_singularity_slopes: decades must be positive");
    }
    const double begin = table.midpoints[1];
    const double end = std::min(begin * std::pow(10.0, decades), window_end);
    table.fit_window_begin = begin;
    table.fit_window_end = end;
    for (std::size_t p = 0; p < 3; ++p) {
        std::vector<double> t;
        std::vector<double> q;
        for (std::size_t n = 2; n <= table.midpoints.size(); ++n) {
            if (table.midpoints[n - 1] > end) {
                break;
            }
            t.push_back(table.midpoints[n - 1]);
            q.push_back(std::fabs(table.quotients[n - 1][p]));
        }
        if (t.size() < 2) {
            throw ValidationError("fit_singularity_slopes: fewer than two points in the window");
        }
        if (std::any_of(q.begin(), q.end(), [](double v) { return v == 0.0; })) {
            table.slopes[p] = 0.0;
            continue;
        }
        table.slopes[p] = loglog_slope(t, q);
    }
}

SingularityTable singularity_scan(const SingularityConfig& config)
{
    const double T = config.final_time.value_or(1.0 / config.gamma);
    RunConfig rc;
    rc.alpha = config.alpha;
    rc.mesh = CompositeSpec{T, config.total_steps, config.gamma};
    rc.grid = SpatialGrid2D::unit_pi_square(config.grid_cells);
    rc.soe_tolerance = config.soe_tolerance;
    rc.kernel = config.kernel;

    const auto probes = default_probes();
    std::array<std::pair<std::size_t, std::size_t>, 3> nodes{};
    for (std::size_t p = 0; p < 3; ++p) {
        nodes[p] = {static_cast<std::size_t>(std::lround(probes[p].x / rc.grid.h1())),
                    static_cast<std::size_t>(std::lround(probes[p].y / rc.grid.h2()))};
    }
    std::array<std::vector<double>, 3> series;
    const RunResult result =
        run(fisher_problem(), rc, [&](std::size_t, double, const GridFunction& u) {
            for (std::size_t p = 0; p < 3; ++p) {
                series[p].push_back(u(nodes[p].first, nodes[p].second));
            }
        });
    SingularityTable table = difference_quotients(result.mesh, series);
    fit_singularity_slopes(table, T / 10.0);
    return table;
}

} // namespace fastl1

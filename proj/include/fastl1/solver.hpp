#pragma once

#include "fastl1/fast_history.hpp"
#include "fastl1/soe.hpp"
#include "fastl1/spatial2d.hpp"
#include "fastl1/timemesh.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fastl1 {

/// Caputo-alpha u = Delta u + f(u) + g(x, y, t) with u = 0 on the boundary.
struct SemilinearProblem {
    std::function<double(double)> reaction;       ///< f
    std::function<double(double)> reaction_slope; ///< f'
    std::function<double(double, double, double)> forcing; ///< g; empty means 0
    std::function<double(double, double)> initial;         ///< u^0
    std::function<double(double, double, double)> exact;   ///< optional exact solution
};

/// Checks that f and f' agree: |f'(u) - central difference| <= 1e-6 on sampled u.
void validate_problem(const SemilinearProblem& problem);

/// f(u) = u(1-u), g = 0, u^0 = sin x sin y on (0, pi)^2; no exact solution.
[[nodiscard]] SemilinearProblem fisher_problem();

/// Exact solution u = omega_{1+sigma}(t) sin x sin y with the forcing that makes
/// it solve the equation for the given reaction:
///     g = [omega_{1+sigma-alpha}(t) + 2 omega_{1+sigma}(t)] sin x sin y - f(u).
/// u^0 = 0. sigma must lie in (0,1) or (1,2).
[[nodiscard]] SemilinearProblem manufactured_problem(double sigma, double alpha,
                                                     std::function<double(double)> reaction,
                                                     std::function<double(double)> slope);

/// manufactured_problem with the Fisher reaction u(1-u).
[[nodiscard]] SemilinearProblem manufactured_fisher_problem(double sigma, double alpha);

enum class KernelMode { fast, direct };

using MeshSpec = std::variant<GradedSpec, CompositeSpec>;

[[nodiscard]] TimeMesh build_mesh(const MeshSpec& spec);

struct RunConfig {
    double alpha = 0.5;
    MeshSpec mesh = GradedSpec{};
    SpatialGrid2D grid = SpatialGrid2D::unit_pi_square(16);
    double soe_tolerance = 1e-12;
    double cg_tolerance = 1e-11;
    KernelMode kernel = KernelMode::fast;
};

/// Two-level linearized stepper. Each step solves
///     [a^(n)_0 - Delta_h - f'(u^{n-1})] du = Delta_h u^{n-1} + f(u^{n-1}) + g(t_n) - history
/// and sets u^n = u^{n-1} + du. In fast mode the history is the SOE sum over
/// H^l(t_{n-1}); in direct mode it is the full L1 sum over stored increments.
class TwoLevelStepper {
public:
    /// soe may be null in direct mode.
    TwoLevelStepper(const SemilinearProblem& problem, double alpha, TimeMesh mesh,
                    SpatialGrid2D grid, KernelMode mode, std::shared_ptr<const SoeApprox> soe,
                    double cg_tolerance = 1e-11);

    [[nodiscard]] std::size_t level() const noexcept { return level_; }
    [[nodiscard]] const GridFunction& solution() const noexcept { return u_; }
    [[nodiscard]] const GridFunction& last_increment() const noexcept { return du_; }
    [[nodiscard]] const TimeMesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const SpatialGrid2D& grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t cg_iterations() const noexcept { return cg_iterations_; }

    /// Advances from level n-1 to n; n must equal level() + 1.
    void step(std::size_t n);

private:
    void history_term(std::size_t n, std::span<double> out);
    void record_increment(std::size_t n, const GridFunction& du);

    SemilinearProblem problem_;
    double alpha_;
    TimeMesh mesh_;
    SpatialGrid2D grid_;
    KernelMode mode_;
    std::shared_ptr<const SoeApprox> soe_;
    double cg_tolerance_;

    std::size_t level_ = 0;
    GridFunction u_;
    GridFunction du_;
    std::vector<std::size_t> interior_;        // node index of each interior DOF
    std::optional<FastHistory> history_;       // fast mode
    StepFactors factors_;                      // fast mode, current step
    double factors_tau_ = 0.0;                 // step size factors_ was built for
    std::vector<std::vector<double>> increments_; // direct mode, per level
    std::size_t cg_iterations_ = 0;
};

struct RunResult {
    GridFunction final_field;
    TimeMesh mesh;
    std::vector<double> level_errors; ///< entry n-1 is the max-norm error at t_n
    double max_error = 0.0;           ///< e(N, M); NaN without an exact solution
    double wall_seconds = 0.0;        ///< time loop only
    std::size_t soe_size = 0;         ///< 0 in direct mode
    std::size_t cg_iterations = 0;
    std::vector<std::string> warnings;
};

/// Per-level rows "n,t_n,error", then a "N,M,e,wall_seconds,Nq" header and
/// its row. Numbers use 17 significant digits.
void write_run_csv(std::ostream& os, const RunResult& result, std::size_t grid_cells);

using LevelObserver = std::function<void(std::size_t n, double t, const GridFunction& u)>;

/// Builds the mesh and (in fast mode) an SOE with cutoff equal to the smallest
/// step, then runs steps 1..N. Errors against the exact solution are recorded
/// per level when one is available.
[[nodiscard]] RunResult run(const SemilinearProblem& problem, const RunConfig& config,
                            const LevelObserver& observer = {});

/// ||U(t) - u||_inf over interior nodes.
[[nodiscard]] double level_error(const SpatialGrid2D& grid, const GridFunction& u,
                                 const std::function<double(double, double, double)>& exact,
                                 double t);

/// e(N, M) = max_{1<=l<=N} ||U(t_l) - u^l||_inf; fields[l-1] holds u^l.
[[nodiscard]] double compute_error(const SpatialGrid2D& grid, const TimeMesh& mesh,
                                   std::span<const GridFunction> fields,
                                   const std::function<double(double, double, double)>& exact);

/// beta = log2(e_N / e_2N); both errors must be positive.
[[nodiscard]] double estimate_order(double coarse_error, double fine_error);

// ---------------------------------------------------------------------------
// Initial-singularity scan

struct ProbePoint {
    double x = 0.0;
    double y = 0.0;
};

/// (pi/4, pi/4), (pi/2, pi/2), (3pi/4, pi/4).
[[nodiscard]] std::array<ProbePoint, 3> default_probes();

struct SingularityConfig {
    double alpha = 0.4;
    double gamma = 1.0;
    std::size_t grid_cells = 100; ///< M
    std::size_t total_steps = 100; ///< N_T
    std::optional<double> final_time; ///< defaults to 1/gamma
    double soe_tolerance = 1e-12;
    KernelMode kernel = KernelMode::fast;
};

struct SingularityTable {
    std::vector<double> times;                     ///< t_n, n = 1..N
    std::vector<double> midpoints;                 ///< (t_{n-1} + t_n) / 2
    std::vector<std::array<double, 3>> quotients;  ///< (u^n - u^{n-1}) / tau_n per probe
    std::array<double, 3> slopes{};                ///< fitted log-log slopes
    double fit_window_begin = 0.0;
    double fit_window_end = 0.0;
};

/// Difference quotients of probe time series; series[p] holds u^0..u^N at probe p.
[[nodiscard]] SingularityTable difference_quotients(const TimeMesh& mesh,
                                                    const std::array<std::vector<double>, 3>& series);

/// Fits log|q_n| against the log of the interval midpoint for n >= 2, keeping
/// midpoints in [m_2, min(m_2 * 10^decades, window_end)]. The first quotient
/// averages u' over [0, t_1] where u' is unbounded, so it is left out.
void fit_singularity_slopes(SingularityTable& table, double window_end, double decades = 2.0);

/// Fisher problem with u^0 = sin x sin y on a composite mesh. Slopes use the
/// default two-decade window capped at T/10.
[[nodiscard]] SingularityTable singularity_scan(const SingularityConfig& config);

} // namespace fastl1

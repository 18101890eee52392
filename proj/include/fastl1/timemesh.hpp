#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace fastl1 {

/// Strictly increasing time grid 0 = t_0 < t_1 < ... < t_N.
///
/// Steps and ratios use the 1-based convention of the scheme:
/// step(k) = t_k - t_{k-1} for 1 <= k <= N and ratio(k) = step(k)/step(k+1)
/// for 1 <= k <= N-1. Immutable after construction.
class TimeMesh {
public:
    /// Throws ValidationError unless points[0] == 0, points.size() >= 2 and
    /// the points are strictly increasing and finite.
    explicit TimeMesh(std::vector<double> points);

    [[nodiscard]] std::size_t num_steps() const noexcept { return points_.size() - 1; }
    [[nodiscard]] double final_time() const noexcept { return points_.back(); }
    [[nodiscard]] double t(std::size_t k) const { return points_.at(k); }
    [[nodiscard]] double step(std::size_t k) const { return steps_.at(k - 1); }
    [[nodiscard]] double ratio(std::size_t k) const;
    [[nodiscard]] double max_step() const noexcept { return max_step_; }
    [[nodiscard]] double min_step() const noexcept { return min_step_; }
    /// Largest step ratio; 0 for a single-step mesh.
    [[nodiscard]] double max_ratio() const noexcept;

    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] std::span<const double> steps() const noexcept { return steps_; }

private:
    std::vector<double> points_;
    std::vector<double> steps_;
    double max_step_ = 0.0;
    double min_step_ = 0.0;
};

/// t_k = T (k/N)^gamma.
struct GradedSpec {
    double final_time = 1.0;
    std::size_t steps = 1;
    double gamma = 1.0;
};

/// Graded mesh on [0, T0] with T0 = min(1/gamma, T), followed by a uniform
/// tail on [T0, T]; total_steps counts both parts.
struct CompositeSpec {
    double final_time = 1.0;
    std::size_t total_steps = 1;
    double gamma = 1.0;
};

struct CompositeLayout {
    double graded_end = 0.0;      ///< T0
    std::size_t graded_steps = 0; ///< N
    std::size_t tail_steps = 0;   ///< N_T - N
};

[[nodiscard]] TimeMesh build_graded(const GradedSpec& spec);

/// Split used by build_composite. When T <= 1/gamma the whole interval is
/// graded and the tail is empty.
[[nodiscard]] CompositeLayout composite_layout(const CompositeSpec& spec);

/// Throws ValidationError when the tail interval is nonempty but would get
/// no steps (N >= N_T).
[[nodiscard]] TimeMesh build_composite(const CompositeSpec& spec);

struct MeshDiagnostics {
    double max_ratio = 0.0;       ///< max_k tau_k / tau_{k+1}
    double grading_constant = 0.0; ///< max_k tau_k / (tau min{1, t_k^{1-1/gamma}})
    double growth_constant = 0.0;  ///< max_{k>=2} t_k / t_{k-1}
};

[[nodiscard]] MeshDiagnostics mesh_diagnostics(const TimeMesh& mesh, double gamma);

/// One time point per line, 17 significant digits.
void write_mesh_csv(std::ostream& os, const TimeMesh& mesh);
[[nodiscard]] TimeMesh read_mesh_csv(std::istream& is);

} // namespace fastl1

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace fastl1 {

/// Uniform tensor-product grid on [x_l, x_r] x [y_l, y_r] with M1 x M2 cells.
class SpatialGrid2D {
public:
    SpatialGrid2D(double x_left, double x_right, double y_left, double y_right, std::size_t m1,
                  std::size_t m2);

    /// (0, pi)^2 with m cells per direction.
    [[nodiscard]] static SpatialGrid2D unit_pi_square(std::size_t m);

    [[nodiscard]] std::size_t m1() const noexcept { return m1_; }
    [[nodiscard]] std::size_t m2() const noexcept { return m2_; }
    [[nodiscard]] double h1() const noexcept { return h1_; }
    [[nodiscard]] double h2() const noexcept { return h2_; }
    [[nodiscard]] double x(std::size_t i) const noexcept { return x_left_ + static_cast<double>(i) * h1_; }
    [[nodiscard]] double y(std::size_t j) const noexcept { return y_left_ + static_cast<double>(j) * h2_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return (m1_ + 1) * (m2_ + 1); }
    [[nodiscard]] std::size_t interior_count() const noexcept { return (m1_ - 1) * (m2_ - 1); }
    [[nodiscard]] bool is_boundary(std::size_t i, std::size_t j) const noexcept
    {
        return i == 0 || j == 0 || i == m1_ || j == m2_;
    }
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept
    {
        return j * (m1_ + 1) + i;
    }

private:
    double x_left_;
    double x_right_;
    double y_left_;
    double y_right_;
    std::size_t m1_;
    std::size_t m2_;
    double h1_;
    double h2_;
};

/// Nodal values on all (M1+1)(M2+1) grid points, row-major in j.
class GridFunction {
public:
    explicit GridFunction(const SpatialGrid2D& grid) : nx_(grid.m1() + 1), ny_(grid.m2() + 1),
        values_(grid.node_count(), 0.0) {}

    /// Samples fn at every node; boundary values are forced to zero when
    /// homogeneous is set.
    [[nodiscard]] static GridFunction sample(const SpatialGrid2D& grid,
                                             const std::function<double(double, double)>& fn,
                                             bool homogeneous = true);

    double& operator()(std::size_t i, std::size_t j) { return values_[j * nx_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[j * nx_ + i]; }

    [[nodiscard]] std::vector<double>& data() noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return values_; }
    [[nodiscard]] std::size_t nx() const noexcept { return nx_; }
    [[nodiscard]] std::size_t ny() const noexcept { return ny_; }

private:
    std::size_t nx_;
    std::size_t ny_;
    std::vector<double> values_;
};

/// Five-point Laplacian at interior nodes; boundary entries of the result are 0.
[[nodiscard]] GridFunction laplacian(const SpatialGrid2D& grid, const GridFunction& v);

/// Mixed difference delta_x delta_y v at cell centres (i-1/2, j-1/2), i = 1..M1,
/// j = 1..M2, stored row-major in j. Diagnostic only.
[[nodiscard]] std::vector<double> mixed_difference(const SpatialGrid2D& grid, const GridFunction& v);

/// h1 h2 sum over interior nodes.
[[nodiscard]] double inner(const SpatialGrid2D& grid, const GridFunction& v, const GridFunction& w);
[[nodiscard]] double norm_l2(const SpatialGrid2D& grid, const GridFunction& v);
/// sqrt(||delta_x v||^2 + ||delta_y v||^2), including the half-points next to the boundary.
[[nodiscard]] double seminorm_h1(const SpatialGrid2D& grid, const GridFunction& v);
/// max over interior nodes.
[[nodiscard]] double norm_max(const SpatialGrid2D& grid, const GridFunction& v);

struct ShiftedSolveOptions {
    double relative_tolerance = 1e-11;
    /// 0 selects 20 max(M1, M2).
    std::size_t max_iterations = 0;
    /// Starting iterate (boundary values ignored).
    const GridFunction* initial_guess = nullptr;
};

struct ShiftedSolveResult {
    GridFunction solution;
    std::size_t iterations = 0;
    double relative_residual = 0.0;
};

/// (shift - c - Delta_h) w for w in the homogeneous space; result is zero on the boundary.
[[nodiscard]] GridFunction apply_shifted(const SpatialGrid2D& grid, double shift,
                                         const GridFunction& reaction, const GridFunction& w);

/// Solves (shift I - Delta_h - diag(reaction)) w = rhs on interior nodes with
/// Jacobi-preconditioned conjugate gradients, w = 0 on the boundary.
/// Requires shift > max interior reaction (NumericalError otherwise). Also
/// throws NumericalError on negative curvature or when the iteration cap is hit.
[[nodiscard]] ShiftedSolveResult solve_shifted(const SpatialGrid2D& grid, double shift,
                                               const GridFunction& reaction,
                                               const GridFunction& rhs,
                                               const ShiftedSolveOptions& options = {});

/// Row-major CSV, one row per j, 17 significant digits.
void write_grid_csv(std::ostream& os, const GridFunction& v);

} // namespace fastl1

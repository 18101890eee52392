#include "fastl1/spatial2d.hpp"

#include "fastl1/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fastl1 {

SpatialGrid2D::SpatialGrid2D(double x_left, double x_right, double y_left, double y_right,
                             std::size_t m1, std::size_t m2)
    : x_left_(x_left), x_right_(x_right), y_left_(y_left), y_right_(y_right), m1_(m1), m2_(m2),
      h1_(0.0), h2_(0.0)
{
    if (m1 < 2 || m2 < 2) {
        throw ValidationError("spatial grid needs M1, M2 >= 2");
    }
    if (!(x_right > x_left) || !(y_right > y_left)) {
        throw ValidationError("spatial grid needs x_r > x_l and y_r > y_l");
    }
    h1_ = (x_right - x_left) / static_cast<double>(m1);
    h2_ = (y_right - y_left) / static_cast<double>(m2);
}

SpatialGrid2D SpatialGrid2D::unit_pi_square(std::size_t m)
{
    return SpatialGrid2D(0.0, std::numbers::pi, 0.0, std::numbers::pi, m, m);
}

GridFunction GridFunction::sample(const SpatialGrid2D& grid,
                                  const std::function<double(double, double)>& fn,
                                  bool homogeneous)
{
    GridFunction v(grid);
    for (std::size_t j = 0; j <= grid.m2(); ++j) {
        for (std::size_t i = 0; i <= grid.m1(); ++i) {
            v(i, j) = homogeneous && grid.is_boundary(i, j) ? 0.0 : fn(grid.x(i), grid.y(j));
        }
    }
    return v;
}

namespace {

void check_shape(const SpatialGrid2D& grid, const GridFunction& v)
{
    if (v.nx() != grid.m1() + 1 || v.ny() != grid.m2() + 1) {
        throw ValidationError("grid function does not match the grid");
    }
}

double interior_dot(const SpatialGrid2D& grid, const std::vector<double>& a,
                    const std::vector<double>& b)
{
    const std::size_t nx = grid.m1() + 1;
    double sum = 0.0;
    for (std::size_t j = 1; j < grid.m2(); ++j) {
        const std::size_t row = j * nx;
        for (std::size_t i = 1; i < grid.m1(); ++i) {
            sum += a[row + i] * b[row + i];
        }
    }
    return sum;
}

// out = (diag - Delta_h) x at interior nodes, diag[idx] = shift - c.
void apply_operator(const SpatialGrid2D& grid, const std::vector<double>& diag,
                    const std::vector<double>& x, std::vector<double>& out)
{
    const std::size_t nx = grid.m1() + 1;
    const double cx = 1.0 / (grid.h1() * grid.h1());
    const double cy = 1.0 / (grid.h2() * grid.h2());
    const double centre = 2.0 * cx + 2.0 * cy;
    for (std::size_t j = 1; j < grid.m2(); ++j) {
        const std::size_t row = j * nx;
        for (std::size_t i = 1; i < grid.m1(); ++i) {
            const std::size_t k = row + i;
            out[k] = (diag[k] + centre) * x[k] - cx * (x[k - 1] + x[k + 1]) -
                     cy * (x[k - nx] + x[k + nx]);
        }
    }
}

} // namespace

GridFunction laplacian(const SpatialGrid2D& grid, const GridFunction& v)
{
    check_shape(grid, v);
    GridFunction out(grid);
    const double cx = 1.0 / (grid.h1() * grid.h1());
    const double cy = 1.0 / (grid.h2() * grid.h2());
    for (std::size_t j = 1; j < grid.m2(); ++j) {
        for (std::size_t i = 1; i < grid.m1(); ++i) {
            out(i, j) = cx * (v(i - 1, j) - 2.0 * v(i, j) + v(i + 1, j)) +
                        cy * (v(i, j - 1) - 2.0 * v(i, j) + v(i, j + 1));
        }
    }
    return out;
}

std::vector<double> mixed_difference(const SpatialGrid2D& grid, const GridFunction& v)
{
    check_shape(grid, v);
    std::vector<double> out(grid.m1() * grid.m2());
    const double scale = 1.0 / (grid.h1() * grid.h2());
    for (std::size_t j = 1; j <= grid.m2(); ++j) {
        for (std::size_t i = 1; i <= grid.m1(); ++i) {
            out[(j - 1) * grid.m1() + (i - 1)] =
                scale * (v(i, j) - v(i - 1, j) - v(i, j - 1) + v(i - 1, j - 1));
        }
    }
    return out;
}

double inner(const SpatialGrid2D& grid, const GridFunction& v, const GridFunction& w)
{
    check_shape(grid, v);
    check_shape(grid, w);
    return grid.h1() * grid.h2() * interior_dot(grid, v.data(), w.data());
}

double norm_l2(const SpatialGrid2D& grid, const GridFunction& v)
{
    return std::sqrt(inner(grid, v, v));
}

double seminorm_h1(const SpatialGrid2D& grid, const GridFunction& v)
{
    check_shape(grid, v);
    double sx = 0.0;
    for (std::size_t j = 1; j < grid.m2(); ++j) {
        for (std::size_t i = 1; i <= grid.m1(); ++i) {
            const double d = (v(i, j) - v(i - 1, j)) / grid.h1();
            sx += d * d;
        }
    }
    double sy = 0.0;
    for (std::size_t j = 1; j <= grid.m2(); ++j) {
        for (std::size_t i = 1; i < grid.m1(); ++i) {
            const double d = (v(i, j) - v(i, j - 1)) / grid.h2();
            sy += d * d;
        }
    }
    return std::sqrt(grid.h1() * grid.h2() * (sx + sy));
}

double norm_max(const SpatialGrid2D& grid, const GridFunction& v)
{
    check_shape(grid, v);
    double m = 0.0;
    for (std::size_t j = 1; j < grid.m2(); ++j) {
        for (std::size_t i = 1; i < grid.m1(); ++i) {
            m = std::max(m, std::fabs(v(i, j)));
        }
    }
    return m;
}

GridFunction apply_shifted(const SpatialGrid2D& grid, double shift, const GridFunction& reaction,
                           const GridFunction& w)
{
    check_shape(grid, reaction);
    check_shape(grid, w);
    std::vector<double> diag(grid.node_count());
    for (std::size_t k = 0; k < diag.size(); ++k) {
        diag[k] = shift - reaction.data()[k];
    }
    GridFunction out(grid);
    apply_operator(grid, diag, w.data(), out.data());
    return out;
}

ShiftedSolveResult solve_shifted(const SpatialGrid2D& grid, double shift,
                                 const GridFunction& reaction, const GridFunction& rhs,
                                 const ShiftedSolveOptions& options)
{
    check_shape(grid, reaction);
    check_shape(grid, rhs);
    const std::size_t count = grid.node_count();
    const std::size_t nx = grid.m1() + 1;

    double max_reaction = -INFINITY;
    for (std::size_t j = 1; j < grid.m2(); ++j) {
        for (std::size_t i = 1; i < grid.m1(); ++i) {
            max_reaction = std::max(max_reaction, reaction(i, j));
        }
    }
    if (!(shift > max_reaction)) {
        std::ostringstream msg;
        msg << "solve_shifted: shift " << shift << " does not exceed max reaction "
            << max_reaction << "; system may be indefinite";
        throw NumericalError(msg.str());
    }

    ShiftedSolveResult result{GridFunction(grid), 0, 0.0};
    const double rhs_norm = std::sqrt(interior_dot(grid, rhs.data(), rhs.data()));
    if (rhs_norm == 0.0) {
        return result;
    }

    std::vector<double> diag(count, 0.0);
    std::vector<double> inv_precond(count, 0.0);
    const double centre = 2.0 / (grid.h1() * grid.h1()) + 2.0 / (grid.h2() * grid.h2());
    for (std::size_t j = 1; j < grid.m2(); ++j) {
        for (std::size_t i = 1; i < grid.m1(); ++i) {
            const std::size_t k = j * nx + i;
            diag[k] = shift - reaction.data()[k];
            inv_precond[k] = 1.0 / (diag[k] + centre);
        }
    }

    std::vector<double>& x = result.solution.data();
    if (options.initial_guess != nullptr) {
        check_shape(grid, *options.initial_guess);
        for (std::size_t j = 1; j < grid.m2(); ++j) {
            for (std::size_t i = 1; i < grid.m1(); ++i) {
                x[j * nx + i] = (*options.initial_guess)(i, j);
            }
        }
    }
    const std::size_t cap = options.max_iterations > 0
                                ? options.max_iterations
                                : 20 * std::max(grid.m1(), grid.m2());
    const double tol = options.relative_tolerance;

    std::vector<double> r(count, 0.0);
    std::vector<double> z(count, 0.0);
    std::vector<double> p(count, 0.0);
    std::vector<double> q(count, 0.0);
    const std::vector<double>& b = rhs.data();

    auto residual = [&]() {
        apply_operator(grid, diag, x, q);
        for (std::size_t j = 1; j < grid.m2(); ++j) {
            for (std::size_t i = 1; i < grid.m1(); ++i) {
                const std::size_t k = j * nx + i;
                r[k] = b[k] - q[k];
            }
        }
        return std::sqrt(interior_dot(grid, r, r)) / rhs_norm;
    };

    double rel = residual();
    std::size_t iter = 0;
    while (rel > tol) {
        // (re)start from the true residual
        for (std::size_t k = 0; k < count; ++k) {
            z[k] = inv_precond[k] * r[k];
            p[k] = z[k];
        }
        double rz = interior_dot(grid, r, z);
        while (rel > tol) {
            if (iter >= cap) {
                std::ostringstream msg;
                msg << "solve_shifted: no convergence after " << iter
                    << " iterations (relative residual " << rel << ")";
                throw NumericalError(msg.str());
            }
            apply_operator(grid, diag, p, q);
            const double curvature = interior_dot(grid, p, q);
            if (!(curvature > 0.0)) {
                throw NumericalError("solve_shifted: negative curvature, operator is not SPD");
            }
            const double step = rz / curvature;
            for (std::size_t k = 0; k < count; ++k) {
                x[k] += step * p[k];
                r[k] -= step * q[k];
            }
            ++iter;
            rel = std::sqrt(interior_dot(grid, r, r)) / rhs_norm;
            for (std::size_t k = 0; k < count; ++k) {
                z[k] = inv_precond[k] * r[k];
            }
            const double rz_next = interior_dot(grid, r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t k = 0; k < count; ++k) {
                p[k] = z[k] + beta * p[k];
            }
        }
        rel = residual();
    }
    result.iterations = iter;
    result.relative_residual = rel;
    return result;
}

void write_grid_csv(std::ostream& os, const GridFunction& v)
{
    const auto old_flags = os.flags();
    const auto old_prec = os.precision(16);
    os.setf(std::ios::scientific, std::ios::floatfield);
    for (std::size_t j = 0; j < v.ny(); ++j) {
        for (std::size_t i = 0; i < v.nx(); ++i) {
            os << (i == 0 ? "" : ",") << v(i, j);
        }
        os << '\n';
    }
    os.flags(old_flags);
    os.precision(old_prec);
}

} // namespace fastl1

#pragma once

// Reference implementations that do not call into the library's numerics.

#include "fastl1/l1.hpp"
#include "fastl1/timemesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

/// Lanczos approximation (g = 7, 9 terms), about 15 correct digits.
inline double gamma(double x)
{
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
    }
    static constexpr double c[] = {0.99999999999980993,  676.5203681218851,
                                   -1259.1392167224028,  771.32342877765313,
                                   -176.61502916214059,  12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    x -= 1.0;
    double a = c[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) {
        a += c[i] / (x + i);
    }
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

inline double omega(double mu, double t)
{
    return std::pow(t, mu - 1.0) / gamma(mu);
}

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson with Richardson correction; f must be smooth on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14)
{
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Caputo derivative of order alpha of v = t^p / Gamma(1+p) at t, by quadrature.
/// The integral is split at t/2 and both endpoint singularities are removed by
/// the substitutions s = u^(1/p) and t - s = w^(1/(1-alpha)).
inline double caputo_power_quadrature(double p, double alpha, double t)
{
    const double half = 0.5 * t;
    const double lower = integrate(
        [&](double u) { return std::pow(t - std::pow(u, 1.0 / p), -alpha); }, 0.0,
        std::pow(half, p));
    const double upper = integrate(
        [&](double w) { return std::pow(t - std::pow(w, 1.0 / (1.0 - alpha)), p - 1.0); }, 0.0,
        std::pow(half, 1.0 - alpha));
    return (lower / p + upper / (1.0 - alpha)) / (gamma(1.0 - alpha) * gamma(p));
}

/// (1/tau) int_0^tau exp(-theta (tau - s)) ds by quadrature.
inline double local_weight_quadrature(double theta, double tau)
{
    return integrate([&](double s) { return std::exp(-theta * (tau - s)); }, 0.0, tau, 1e-16) /
           tau;
}

/// Strictly increasing mesh on [0, T] with N random steps. With sorted steps the
/// step sizes are nondecreasing, as on graded meshes.
inline fastl1::TimeMesh random_mesh(std::mt19937_64& rng, std::size_t steps, double T,
                                    bool sorted)
{
    std::uniform_real_distribution<double> size(0.02, 1.0);
    std::vector<double> tau(steps);
    for (double& x : tau) {
        x = size(rng);
    }
    if (sorted) {
        std::sort(tau.begin(), tau.end());
    }
    double total = 0.0;
    for (double x : tau) {
        total += x;
    }
    std::vector<double> pts{0.0};
    double acc = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        acc += tau[k];
        pts.push_back(k + 1 == steps ? T : T * acc / total);
    }
    return fastl1::TimeMesh(std::move(pts));
}

/// Counts violations of the two L1 kernel inequalities
///   (i)  a_{n-k-1} > omega_{1-alpha}(t_n - t_k) > a_{n-k}
///   (ii) a_{n-k-1} - a_{n-k} > (omega_{1-alpha}(t_n - t_k) - omega_{1-alpha}(t_n - t_{k-1})) / 2
/// for 1 <= k <= n-1, allowing rel_slack relative to the magnitudes involved.
inline std::size_t l1_kernel_violations(const fastl1::TimeMesh& mesh, double alpha,
                                        double rel_slack = 1e-14)
{
    const double inv_gamma = 1.0 / gamma(1.0 - alpha);
    auto w = [&](double t) { return std::pow(t, -alpha) * inv_gamma; };
    std::size_t bad = 0;
    for (std::size_t n = 2; n <= mesh.num_steps(); ++n) {
        const fastl1::L1Kernel a = fastl1::l1_coefficients(mesh, alpha, n);
        const double tn = mesh.t(n);
        for (std::size_t k = 1; k + 1 <= n; ++k) {
            const double upper = a.at_lag(n - k - 1);
            const double lower = a.at_lag(n - k);
            const double mid = w(tn - mesh.t(k));
            const double scale = std::max(upper, mid);
            if (!(upper > mid * (1.0 - rel_slack))) {
                ++bad;
            }
            if (!(mid > lower * (1.0 - rel_slack))) {
                ++bad;
            }
            const double rhs = 0.5 * (mid - w(tn - mesh.t(k - 1)));
            if (!(upper - lower > rhs - rel_slack * scale)) {
                ++bad;
            }
        }
    }
    return bad;
}

} // namespace oracle

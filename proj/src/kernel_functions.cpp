#include "fastl1/kernel_functions.hpp"

#include "fastl1/errors.hpp"

#include <cmath>

namespace fastl1 {

double omega(double mu, double t)
{
    if (!(mu > 0.0)) {
        throw ValidationError("omega: order must be positive");
    }
    if (!(t >= 0.0)) {
        throw ValidationError("omega: time must be nonnegative");
    }
    if (t == 0.0) {
        if (mu < 1.0) {
            throw ValidationError("omega: kernel is singular at t = 0");
        }
        return mu == 1.0 ? 1.0 : 0.0;
    }
    return std::pow(t, mu - 1.0) / std::tgamma(mu);
}

double caputo_power_exact(double p, double alpha, double t)
{
    if (!(p > 0.0)) {
        throw ValidationError("caputo_power_exact: exponent must be positive");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("caputo_power_exact: order must lie in (0, 1)");
    }
    if (!(t > 0.0)) {
        throw ValidationError("caputo_power_exact: time must be positive");
    }
    return omega(1.0 + p - alpha, t);
}

double local_weight_b(double theta, double tau)
{
    if (!(theta > 0.0) || !(tau > 0.0)) {
        throw ValidationError("local_weight_b: theta and tau must be positive");
    }
    const double x = theta * tau;
    if (x < 1e-6) {
        // 1 - x/2 + x^2/6 - x^3/24
        return 1.0 - x * (0.5 - x * (1.0 / 6.0 - x / 24.0));
    }
    return -std::expm1(-x) / x;
}

double power_increment(double x, double d, double beta)
{
    if (x == 0.0) {
        return std::pow(d, beta);
    }
    return std::pow(x, beta) * std::expm1(beta * std::log1p(d / x));
}

} // namespace fastl1

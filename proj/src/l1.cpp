#include "fastl1/l1.hpp"

#include "fastl1/errors.hpp"
#include "fastl1/kernel_functions.hpp"

#include <cmath>

namespace fastl1 {

void check_order(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("fractional order must lie in (0, 1)");
    }
}

L1Kernel l1_coefficients(const TimeMesh& mesh, double alpha, std::size_t n)
{
    check_order(alpha);
    if (n < 1 || n > mesh.num_steps()) {
        throw ValidationError("l1_coefficients: level out of range");
    }
    const double beta = 1.0 - alpha;
    const double inv_gamma = 1.0 / std::tgamma(2.0 - alpha);
    const double tn = mesh.t(n);

    L1Kernel kernel;
    kernel.level = n;
    kernel.coeffs.resize(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double tau = mesh.step(k);
        const double gap = k == n ? 0.0 : tn - mesh.t(k);
        kernel.coeffs[n - k] = power_increment(gap, tau, beta) * inv_gamma / tau;
    }
    return kernel;
}

double l1_apply_direct(const TimeMesh& mesh, double alpha, std::span<const double> values,
                       std::size_t n)
{
    if (values.size() < n + 1) {
        throw ValidationError("l1_apply_direct: need n + 1 values");
    }
    const L1Kernel kernel = l1_coefficients(mesh, alpha, n);
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        sum += kernel.for_step(k) * (values[k] - values[k - 1]);
    }
    return sum;
}

} // namespace fastl1

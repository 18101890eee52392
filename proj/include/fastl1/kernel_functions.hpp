#pragma once

namespace fastl1 {

/// omega_mu(t) = t^(mu-1) / Gamma(mu), the Riemann-Liouville kernel.
/// Requires mu > 0 and t >= 0; t = 0 is a domain error when mu < 1.
[[nodiscard]] double omega(double mu, double t);

/// Exact Caputo derivative of order alpha of v(t) = omega_{1+p}(t), p > 0,
/// which is omega_{1+p-alpha}(t).
[[nodiscard]] double caputo_power_exact(double p, double alpha, double t);

/// (1/tau) int_0^tau exp(-theta (tau - s)) ds = (1 - exp(-theta tau)) / (theta tau).
[[nodiscard]] double local_weight_b(double theta, double tau);

/// (x + d)^beta - x^beta for x >= 0, d > 0, without cancellation when d << x.
[[nodiscard]] double power_increment(double x, double d, double beta);

} // namespace fastl1

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fastl1 {

/// Consistency error of the fast L1 formula for v(t) = omega_{1+p}(t) on
/// one graded mesh t_k = T (k/N)^gamma.
struct ConsistencyRow {
    std::size_t steps = 0;
    /// max_n |Caputo(v)(t_n) - fast L1(v)^n|
    double max_local = 0.0;
    /// max_n sum_j P^(n)_{n-j} |Caputo(v)(t_j) - fast L1(v)^j|
    double max_global = 0.0;
    std::size_t soe_size = 0;
};

struct ConsistencyScan {
    std::vector<ConsistencyRow> rows;
    /// Least-squares slope of -log(max_global) against log N.
    double global_rate = 0.0;
    /// Same for max_local.
    double local_rate = 0.0;
};

/// Runs the fast L1 formula against the exact derivative on each N and fits
/// the decay rate. The SOE uses cutoff tau_1 and the given tolerance.
[[nodiscard]] ConsistencyScan consistency_rate_scan(double alpha, double p, double gamma,
                                                    std::span<const std::size_t> steps,
                                                    double final_time = 1.0,
                                                    double soe_tolerance = 1e-12);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace fastl1

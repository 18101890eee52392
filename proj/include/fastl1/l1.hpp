#pragma once

#include "fastl1/timemesh.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fastl1 {

/// Convolution weights of the nonuniform L1 formula at level n.
///
/// Stored by lag: at_lag(j) = a^(n)_j, the weight multiplying the increment
/// v^{n-j} - v^{n-j-1}. Units are time^(-alpha).
struct L1Kernel {
    std::size_t level = 0;
    std::vector<double> coeffs;

    [[nodiscard]] double at_lag(std::size_t j) const { return coeffs.at(j); }
    /// Weight of the increment over step k, 1 <= k <= level.
    [[nodiscard]] double for_step(std::size_t k) const { return coeffs.at(level - k); }
};

/// a^(n)_{n-k} = [omega_{2-alpha}(t_n - t_{k-1}) - omega_{2-alpha}(t_n - t_k)] / tau_k,
/// evaluated without cancellation for steps much smaller than t_n - t_k.
[[nodiscard]] L1Kernel l1_coefficients(const TimeMesh& mesh, double alpha, std::size_t n);

/// Direct O(n) L1 sum sum_k a^(n)_{n-k} (v^k - v^{k-1}); values holds v^0..v^m, m >= n.
[[nodiscard]] double l1_apply_direct(const TimeMesh& mesh, double alpha,
                                     std::span<const double> values, std::size_t n);

void check_order(double alpha);

} // namespace fastl1

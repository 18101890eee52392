#pragma once

#include "fastl1/soe.hpp"
#include "fastl1/timemesh.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fastl1 {

/// Convolution weights A^(n)_j of the fast L1 formula, stored by lag j = n-k:
/// A^(n)_0 = a^(n)_0 and, for k < n,
///     A^(n)_{n-k} = sum_l varpi_l exp(-theta_l (t_n - t_k)) b^(k,l).
[[nodiscard]] std::vector<double> discrete_kernel_A(const TimeMesh& mesh, const SoeApprox& soe,
                                                    std::size_t n);

/// Rows A^(1), ..., A^(n_max) computed together (row j-1 holds A^(j)).
[[nodiscard]] std::vector<std::vector<double>> discrete_kernel_A_rows(const TimeMesh& mesh,
                                                                      const SoeApprox& soe,
                                                                      std::size_t n_max);

/// Largest SOE tolerance for which the fast kernel stays monotone and keeps
/// A >= (2/3) a: min{omega_{1-alpha}(T)/3, alpha omega_{2-alpha}(1)}.
[[nodiscard]] double admissible_soe_tolerance(double alpha, double final_time);

/// Complementary kernel P^(n)_j, stored by lag, defined by
///     sum_{j=k}^n P^(n)_{n-j} A^(j)_{j-k} = 1,  1 <= k <= n.
struct ComplementaryKernel {
    std::size_t level = 0;
    std::vector<double> values;

    [[nodiscard]] double at_lag(std::size_t j) const { return values.at(j); }
    /// P^(n)_{n-j} for 1 <= j <= level.
    [[nodiscard]] double for_step(std::size_t j) const { return values.at(level - j); }
    [[nodiscard]] double sum() const;
};

/// P^(n) from rows A^(1..n) via
///     P_0 = 1/A^(n)_0,
///     P_{n-j} = (1/A^(j)_0) sum_{k=j+1}^n (A^(k)_{k-j-1} - A^(k)_{k-j}) P_{n-k}.
/// Throws ValidationError if a row is nonpositive or increases with lag by
/// more than 1e-14 relative.
[[nodiscard]] ComplementaryKernel complementary_kernel(std::span<const std::vector<double>> rows);

/// Same as above for every level 1..rows.size(); skips the per-call row check.
[[nodiscard]] std::vector<ComplementaryKernel>
complementary_kernels_all(std::span<const std::vector<double>> rows);

/// max_k |sum_{j=k}^n P^(n)_{n-j} A^(j)_{j-k} - 1|.
[[nodiscard]] double complementary_identity_defect(std::span<const std::vector<double>> rows,
                                                   const ComplementaryKernel& p);

} // namespace fastl1

#pragma once

#include <cstddef>
#include <vector>

namespace fastl1 {

/// Gauss rule on [-1, 1] in extended precision.
struct GaussRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

/// n-point Gauss-Legendre rule (weight 1).
[[nodiscard]] GaussRule gauss_legendre(std::size_t n);

/// n-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b, a, b > -1.
[[nodiscard]] GaussRule gauss_jacobi(std::size_t n, long double a, long double b);

} // namespace fastl1

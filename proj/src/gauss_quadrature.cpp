#include "fastl1/gauss_quadrature.hpp"

#include "fastl1/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace fastl1 {

namespace {

using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 times the squared first eigenvector components.
GaussRule golub_welsch(const VectorL& diag, const VectorL& offdiag, long double mu0)
{
    const auto n = diag.size();
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    if (n == 1) {
        rule.nodes[0] = diag(0);
        rule.weights[0] = mu0;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<MatrixL> eig;
    eig.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("Golub-Welsch eigensolve failed");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const long double v0 = eig.eigenvectors()(0, i);
        rule.nodes[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return rule;
}

} // namespace

GaussRule gauss_legendre(std::size_t n)
{
    if (n < 1) {
        throw ValidationError("gauss_legendre: need at least one node");
    }
    const auto m = static_cast<Eigen::Index>(n);
    VectorL diag = VectorL::Zero(m);
    VectorL off(m > 1 ? m - 1 : 0);
    for (Eigen::Index k = 1; k < m; ++k) {
        const long double kk = static_cast<long double>(k);
        off(k - 1) = kk / std::sqrt(4.0L * kk * kk - 1.0L);
    }
    return golub_welsch(diag, off, 2.0L);
}

GaussRule gauss_jacobi(std::size_t n, long double a, long double b)
{
    if (n < 1) {
        throw ValidationError("gauss_jacobi: need at least one node");
    }
    if (!(a > -1.0L) || !(b > -1.0L)) {
        throw ValidationError("gauss_jacobi: exponents must exceed -1");
    }
    const auto m = static_cast<Eigen::Index>(n);
    const long double ab = a + b;
    VectorL diag(m);
    VectorL off(m > 1 ? m - 1 : 0);
    for (Eigen::Index k = 0; k < m; ++k) {
        const long double kk = static_cast<long double>(k);
        const long double s = 2.0L * kk + ab;
        diag(k) = k == 0 ? (b - a) / (ab + 2.0L) : (b * b - a * a) / (s * (s + 2.0L));
    }
    for (Eigen::Index k = 1; k < m; ++k) {
        const long double kk = static_cast<long double>(k);
        const long double s = 2.0L * kk + ab;
        const long double beta =
            4.0L * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0L) * (s - 1.0L));
        off(k - 1) = std::sqrt(beta);
    }
    const long double mu0 = std::pow(2.0L, ab + 1.0L) * std::tgamma(a + 1.0L) *
                            std::tgamma(b + 1.0L) / std::tgamma(ab + 2.0L);
    return golub_welsch(diag, off, mu0);
}

} // namespace fastl1

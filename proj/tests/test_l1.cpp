#include "fastl1/errors.hpp"
#include "fastl1/kernel_functions.hpp"
#include "fastl1/l1.hpp"
#include "fastl1/timemesh.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace fastl1;

namespace {

std::vector<double> sample(const TimeMesh& m, double (*f)(double))
{
    std::vector<double> v;
    for (double t : m.points()) {
        v.push_back(f(t));
    }
    return v;
}

} // namespace

TEST(L1Coefficients, UniformUnitStep)
{
    const TimeMesh m({0.0, 1.0, 2.0, 3.0});
    const double g15 = oracle::gamma(1.5);
    EXPECT_NEAR(l1_coefficients(m, 0.5, 1).at_lag(0), 1.0 / g15, 1e-14);
    EXPECT_NEAR(l1_coefficients(m, 0.5, 1).at_lag(0), 1.1283791671, 1e-10);
    const L1Kernel k2 = l1_coefficients(m, 0.5, 2);
    EXPECT_NEAR(k2.at_lag(1), (std::sqrt(2.0) - 1.0) / g15, 1e-14);
    EXPECT_NEAR(k2.at_lag(1), 0.46738995451, 1e-10);
    EXPECT_EQ(k2.for_step(1), k2.at_lag(1));
    EXPECT_EQ(k2.for_step(2), k2.at_lag(0));
}

TEST(L1Coefficients, FirstLevelIsSingleIntervalIntegral)
{
    std::mt19937_64 rng(11);
    for (double alpha : {0.1, 0.45, 0.9}) {
        const TimeMesh m = oracle::random_mesh(rng, 5, 0.3, false);
        const double tau = m.step(1);
        const double want = std::pow(tau, -alpha) / oracle::gamma(2.0 - alpha);
        EXPECT_NEAR(l1_coefficients(m, alpha, 1).at_lag(0), want, 1e-13 * want);
    }
}

TEST(L1Coefficients, MatchesDefinitionOnWellConditionedMesh)
{
    const TimeMesh m = build_graded({1.0, 12, 2.0});
    const double alpha = 0.35;
    const std::size_t n = 9;
    const L1Kernel k = l1_coefficients(m, alpha, n);
    ASSERT_EQ(k.coeffs.size(), n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double want = (oracle::omega(2.0 - alpha, m.t(n) - m.t(j - 1)) -
                             oracle::omega(2.0 - alpha, m.t(n) - m.t(j))) /
                            m.step(j);
        EXPECT_NEAR(k.for_step(j), want, 1e-12 * want);
        EXPECT_GT(k.for_step(j), 0.0);
    }
}

TEST(L1Coefficients, RejectsBadInput)
{
    const TimeMesh m = build_graded({1.0, 4, 1.0});
    EXPECT_THROW((void)l1_coefficients(m, 0.5, 0), ValidationError);
    EXPECT_THROW((void)l1_coefficients(m, 0.5, 5), ValidationError);
    EXPECT_THROW((void)l1_coefficients(m, 0.0, 1), ValidationError);
    EXPECT_THROW((void)l1_coefficients(m, 1.0, 1), ValidationError);
}

TEST(L1KernelInequalities, InequalitiesOnRandomMeshes)
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(2, 100);
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int trial = 0; trial < 40; ++trial) {
            const TimeMesh m = oracle::random_mesh(rng, size(rng), 1.0, trial % 2 == 0);
            ASSERT_EQ(oracle::l1_kernel_violations(m, alpha), 0u)
                << "alpha=" << alpha << " trial=" << trial;
        }
    }
}

TEST(L1KernelInequalities, InequalitiesOnStronglyGradedMeshes)
{
    for (double gamma : {2.0, 4.0, 6.0}) {
        const TimeMesh m = build_graded({1.0, 100, gamma});
        for (double alpha : {0.1, 0.5, 0.9}) {
            EXPECT_EQ(oracle::l1_kernel_violations(m, alpha), 0u);
        }
    }
}

TEST(L1ApplyDirect, ConstantHasZeroDerivative)
{
    const TimeMesh m = build_graded({1.0, 30, 2.5});
    const std::vector<double> v(31, 4.2);
    for (std::size_t n = 1; n <= 30; ++n) {
        EXPECT_EQ(l1_apply_direct(m, 0.6, v, n), 0.0);
    }
}

TEST(L1ApplyDirect, ExactForLinearFunction)
{
    std::mt19937_64 rng(5);
    const TimeMesh m = oracle::random_mesh(rng, 40, 2.0, false);
    const std::vector<double> v = sample(m, [](double t) { return t; });
    for (double alpha : {0.2, 0.7}) {
        for (std::size_t n = 1; n <= 40; ++n) {
            const double want = oracle::omega(2.0 - alpha, m.t(n));
            EXPECT_NEAR(l1_apply_direct(m, alpha, v, n), want, 1e-12 * want);
        }
    }
}

TEST(L1ApplyDirect, QuadraticConvergesAtTwoMinusAlpha)
{
    const double alpha = 0.5;
    std::vector<double> errs;
    for (std::size_t n : {32u, 64u, 128u}) {
        const TimeMesh m = build_graded({1.0, n, 1.0});
        const std::vector<double> v = sample(m, [](double t) { return t * t; });
        double e = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double exact = 2.0 * oracle::omega(3.0 - alpha, m.t(k));
            e = std::max(e, std::fabs(l1_apply_direct(m, alpha, v, k) - exact));
        }
        errs.push_back(e);
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
        EXPECT_NEAR(std::log2(errs[i - 1] / errs[i]), 2.0 - alpha, 0.1);
    }
}

TEST(L1ApplyDirect, RejectsShortInput)
{
    const TimeMesh m = build_graded({1.0, 4, 1.0});
    const std::vector<double> v(3, 0.0);
    EXPECT_THROW((void)l1_apply_direct(m, 0.5, v, 3), ValidationError);
    EXPECT_THROW((void)l1_apply_direct(m, 0.5, std::vector<double>(5, 0.0), 0), ValidationError);
}

#include "fastl1/errors.hpp"
#include "fastl1/fast_history.hpp"
#include "fastl1/kernel_functions.hpp"
#include "fastl1/l1.hpp"
#include "fastl1/soe.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

using namespace fastl1;

namespace {

std::shared_ptr<const SoeApprox> make_soe(double alpha, double eps, const TimeMesh& mesh)
{
    return std::make_shared<const SoeApprox>(
        soe_build(alpha, eps, mesh.min_step(), mesh.final_time()));
}

} // namespace

TEST(FastHistory, ZeroIncrementKeepsZeroState)
{
    const TimeMesh m = build_graded({1.0, 10, 2.0});
    FastHistory h(make_soe(0.5, 1e-8, m), 3);
    const std::vector<double> zero(3, 0.0);
    h.update(1, m.step(1), zero);
    EXPECT_EQ(h.level(), 1u);
    for (std::size_t d = 0; d < 3; ++d) {
        for (std::size_t l = 0; l < h.soe().size(); ++l) {
            EXPECT_EQ(h.value(d, l), 0.0);
        }
    }
}

TEST(FastHistory, FirstUpdateIsLocalWeightTimesIncrement)
{
    const TimeMesh m = build_graded({1.0, 10, 2.0});
    FastHistory h(make_soe(0.5, 1e-8, m), 2);
    const std::vector<double> dv{0.7, -1.3};
    h.update(1, m.step(1), dv);
    for (std::size_t d = 0; d < 2; ++d) {
        for (std::size_t l = 0; l < h.soe().size(); ++l) {
            EXPECT_DOUBLE_EQ(h.value(d, l), local_weight_b(h.soe().nodes[l], m.step(1)) * dv[d]);
        }
    }
}

TEST(FastHistory, LevelAndSizeChecks)
{
    const TimeMesh m = build_graded({1.0, 10, 2.0});
    FastHistory h(make_soe(0.5, 1e-8, m), 2);
    const std::vector<double> dv(2, 1.0);
    EXPECT_THROW(h.update(2, m.step(2), dv), ValidationError);
    EXPECT_THROW(h.update(1, m.step(1), std::vector<double>(3, 1.0)), ValidationError);
    std::vector<double> out(2);
    EXPECT_THROW(h.history_term(2, m.step(2), out), ValidationError);
    h.update(1, m.step(1), dv);
    EXPECT_NO_THROW(h.history_term(2, m.step(2), out));
    EXPECT_THROW(FastHistory(nullptr, 2), ValidationError);
}

TEST(FastHistory, RecurrenceMatchesUnrolledSum)
{
    std::mt19937_64 rng(77);
    std::normal_distribution<double> noise;
    const TimeMesh m = oracle::random_mesh(rng, 100, 1.0, false);
    const auto soe = make_soe(0.6, 1e-10, m);
    const std::size_t dofs = 4;
    FastHistory h(soe, dofs);
    std::vector<std::vector<double>> inc;
    for (std::size_t k = 1; k <= 100; ++k) {
        std::vector<double> dv(dofs);
        for (double& x : dv) {
            x = noise(rng);
        }
        inc.push_back(dv);
        h.update(k, m.step(k), dv);

        if (k % 10 != 0) {
            continue;
        }
        for (std::size_t d = 0; d < dofs; ++d) {
            for (std::size_t l = 0; l < soe->size(); ++l) {
                const double theta = soe->nodes[l];
                long double sum = 0.0L;
                long double mag = 0.0L;
                for (std::size_t j = 1; j <= k; ++j) {
                    const long double term = std::exp(-static_cast<long double>(theta) *
                                                      (m.t(k) - m.t(j))) *
                                             local_weight_b(theta, m.step(j)) * inc[j - 1][d];
                    sum += term;
                    mag += std::fabs(term);
                }
                const double diff = std::fabs(h.value(d, l) - static_cast<double>(sum));
                ASSERT_LE(diff, 1e-14 * static_cast<double>(mag) + 1e-300)
                    << "k=" << k << " d=" << d << " l=" << l;
            }
        }
    }
}

TEST(FastL1Apply, FirstLevelHasNoHistory)
{
    const TimeMesh m = build_graded({1.0, 8, 3.0});
    FastHistory h(make_soe(0.3, 1e-10, m), 2);
    const std::vector<double> dv{2.0, -0.5};
    const std::vector<double> out = fast_l1_apply(h, m, 1, dv);
    const double a0 = l1_coefficients(m, 0.3, 1).at_lag(0);
    EXPECT_NEAR(out[0], a0 * 2.0, 1e-14 * a0);
    EXPECT_NEAR(out[1], a0 * -0.5, 1e-14 * a0);
}

TEST(FastL1Apply, LinearFunctionMatchesDirect)
{
    const TimeMesh m = build_graded({1.0, 50, 2.0});
    const double alpha = 0.5;
    FastHistory h(make_soe(alpha, 1e-10, m), 1);
    std::vector<double> v;
    for (double t : m.points()) {
        v.push_back(t);
    }
    for (std::size_t n = 1; n <= 50; ++n) {
        const std::vector<double> dv{v[n] - v[n - 1]};
        const double fast = fast_l1_apply(h, m, n, dv)[0];
        EXPECT_NEAR(fast, l1_apply_direct(m, alpha, v, n), 1e-8);
        h.update(n, m.step(n), dv);
    }
}

TEST(FastL1Apply, RandomSequencesWithinKernelTolerance)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> size(2, 64);
    std::normal_distribution<double> noise;
    const double eps = 1e-12;
    for (int trial = 0; trial < 12; ++trial) {
        const double alpha = 0.15 + 0.07 * trial;
        const std::size_t n_steps = size(rng);
        const TimeMesh m = oracle::random_mesh(rng, n_steps, 1.0, trial % 2 == 1);
        FastHistory h(make_soe(alpha, eps, m), 1);
        std::vector<double> v{noise(rng)};
        double total = 0.0;
        for (std::size_t n = 1; n <= n_steps; ++n) {
            v.push_back(v.back() + noise(rng));
            const std::vector<double> dv{v[n] - v[n - 1]};
            const double fast = fast_l1_apply(h, m, n, dv)[0];
            const double direct = l1_apply_direct(m, alpha, v, n);
            ASSERT_LE(std::fabs(fast - direct), eps * total + 1e-13 * std::fabs(direct))
                << "trial=" << trial << " n=" << n;
            ASSERT_LE(std::fabs(fast - direct), 1e-9 * (total + std::fabs(dv[0])));
            h.update(n, m.step(n), dv);
            total += std::fabs(dv[0]);
        }
    }
}

TEST(FastL1Apply, RejectsLevelOutOfRange)
{
    const TimeMesh m = build_graded({1.0, 4, 1.0});
    FastHistory h(make_soe(0.5, 1e-8, m), 1);
    const std::vector<double> dv{1.0};
    EXPECT_THROW((void)fast_l1_apply(h, m, 0, dv), ValidationError);
    EXPECT_THROW((void)fast_l1_apply(h, m, 5, dv), ValidationError);
    EXPECT_THROW((void)fast_l1_apply(h, m, 2, dv), ValidationError);
}

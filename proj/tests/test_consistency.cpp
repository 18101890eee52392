#include "fastl1/consistency.hpp"
#include "fastl1/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace fastl1;

TEST(LogLogSlope, RecoversPowerLaw)
{
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(3.0 * std::pow(v, -1.7));
    }
    EXPECT_NEAR(loglog_slope(x, y), -1.7, 1e-13);
    const std::vector<double> flat(4, 2.0);
    EXPECT_NEAR(loglog_slope(x, flat), 0.0, 1e-15);
}

TEST(LogLogSlope, RejectsBadInput)
{
    const std::vector<double> one{1.0};
    EXPECT_THROW((void)loglog_slope(one, one), ValidationError);
    const std::vector<double> x{1.0, 2.0};
    const std::vector<double> y{1.0, -2.0};
    EXPECT_THROW((void)loglog_slope(x, y), ValidationError);
    const std::vector<double> z{1.0, 2.0, 3.0};
    EXPECT_THROW((void)loglog_slope(x, z), ValidationError);
}

struct RateCase {
    double alpha;
    double p;
    double gamma;
};

class ConsistencyRate : public ::testing::TestWithParam<RateCase> {};

TEST_P(ConsistencyRate, MatchesTheoreticalExponent)
{
    const RateCase c = GetParam();
    const std::vector<std::size_t> steps{64, 128, 256, 512};
    const ConsistencyScan scan = consistency_rate_scan(c.alpha, c.p, c.gamma, steps);
    ASSERT_EQ(scan.rows.size(), steps.size());
    const double target = std::min(2.0 - c.alpha, c.gamma * c.p);
    EXPECT_NEAR(scan.global_rate, target, 0.2);
    for (const auto& row : scan.rows) {
        EXPECT_GT(row.soe_size, 0u);
        EXPECT_TRUE(std::isfinite(row.max_local));
        EXPECT_GT(row.max_global, 0.0);
    }
}

INSTANTIATE_TEST_SUITE_P(Cases, ConsistencyRate,
                         ::testing::Values(RateCase{0.4, 0.4, 1.0}, RateCase{0.4, 0.4, 4.0},
                                           RateCase{0.5, 1.5, 1.0}));

TEST(ConsistencyRateScan, NeedsTwoMeshes)
{
    const std::vector<std::size_t> one{64};
    EXPECT_THROW((void)consistency_rate_scan(0.5, 1.0, 1.0, one), ValidationError);
}

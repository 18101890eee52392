#include "fastl1/errors.hpp"
#include "fastl1/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace fastl1;

namespace {

std::vector<std::string> lines_of(const CsvTable& t)
{
    std::stringstream ss;
    write_csv(ss, t);
    std::vector<std::string> out;
    for (std::string line; std::getline(ss, line);) {
        out.push_back(line);
    }
    return out;
}

std::size_t commas(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), ','));
}

} // namespace

TEST(WriteCsv, Formatting)
{
    CsvTable t{{"a", "b", "c"}, {{1.5, 7LL, std::string("x")}, {-2e-300, 0LL, std::string{}}}};
    const auto lines = lines_of(t);
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "a,b,c");
    EXPECT_EQ(lines[1], "1.5000000000000000e+00,7,x");
    EXPECT_EQ(lines[2], "-2.0000000000000001e-300,0,");
}

TEST(DefaultWorkers, EnvironmentOverride)
{
    ::setenv("FASTL1_WORKERS", "3", 1);
    EXPECT_EQ(default_workers(), 3u);
    ::setenv("FASTL1_WORKERS", "zero", 1);
    EXPECT_GE(default_workers(), 1u);
    ::setenv("FASTL1_WORKERS", "-2", 1);
    EXPECT_GE(default_workers(), 1u);
    ::unsetenv("FASTL1_WORKERS");
    EXPECT_GE(default_workers(), 1u);
}

TEST(CmdConvergence, HeaderRowsAndTarget)
{
    ConvergenceSpec spec;
    spec.alpha = 0.5;
    spec.steps = {8, 16};
    spec.workers = 2;
    const CsvTable t = cmd_convergence(spec);
    const auto lines = lines_of(t);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "N,M,error,order");
    EXPECT_EQ(lines[1].substr(0, 4), "8,8,");
    EXPECT_EQ(lines[1].back(), ',');
    EXPECT_EQ(lines[2].substr(0, 6), "16,16,");
    EXPECT_EQ(lines[3], "target,,,1.5000000000000000e+00");
    for (const auto& l : lines) {
        EXPECT_EQ(commas(l), 3u);
    }
}

TEST(CmdConvergence, FixedGridAndDeterminism)
{
    ConvergenceSpec spec;
    spec.alpha = 0.4;
    spec.sigma = 0.4;
    spec.gamma = 4.0;
    spec.steps = {8, 16};
    spec.grid_cells = 10;
    spec.workers = 1;
    const auto serial = lines_of(cmd_convergence(spec));
    spec.workers = 3;
    const auto parallel = lines_of(cmd_convergence(spec));
    EXPECT_EQ(serial, parallel);
    EXPECT_EQ(serial[1].substr(0, 5), "8,10,");
    EXPECT_EQ(serial.back(), "target,,,1.6000000000000001e+00");
}

TEST(CmdConvergence, PropagatesValidationErrors)
{
    ConvergenceSpec spec;
    spec.alpha = 1.5;
    EXPECT_THROW((void)cmd_convergence(spec), ValidationError);
    spec.alpha = 0.5;
    spec.steps.clear();
    EXPECT_THROW((void)cmd_convergence(spec), ValidationError);
}

TEST(CmdSingularity, Layout)
{
    SingularityConfig c;
    c.alpha = 0.8;
    c.gamma = 2.0;
    c.grid_cells = 16;
    c.total_steps = 60;
    const auto lines = lines_of(cmd_singularity(c));
    ASSERT_EQ(lines.size(), 62u);
    EXPECT_EQ(lines[0], "t_n,q1,q2,q3");
    EXPECT_EQ(lines.back().substr(0, 6), "slope,");
    for (const auto& l : lines) {
        EXPECT_EQ(commas(l), 3u);
    }
}

TEST(CmdBenchmark, Layout)
{
    BenchmarkSpec spec;
    spec.total_steps = {64, 128};
    spec.grid_cells = 8;
    const auto lines = lines_of(cmd_benchmark(spec));
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "N_T,seconds_fast,seconds_direct");
    EXPECT_EQ(lines[1].substr(0, 3), "64,");
    EXPECT_EQ(lines[3].substr(0, 6), "slope,");
}

TEST(CmdSoeReport, DefaultSweep)
{
    SoeReportSpec spec;
    spec.workers = 2;
    const SoeReport r = cmd_soe_report(spec);
    EXPECT_EQ(r.failures, 0u);
    const auto lines = lines_of(r.table);
    ASSERT_EQ(lines.size(), 10u);
    EXPECT_EQ(lines[0], "alpha,eps,dt,T,Nq,certified_error");
    // rows: eps outer, T inner
    std::vector<std::vector<long long>> nq(3, std::vector<long long>(3));
    for (std::size_t i = 0; i < 9; ++i) {
        const auto& row = r.table.rows[i];
        const double eps = std::get<double>(row[1]);
        EXPECT_LE(std::get<double>(row[5]), eps);
        nq[i / 3][i % 3] = std::get<long long>(row[4]);
    }
    for (std::size_t e = 0; e < 3; ++e) {
        for (std::size_t t = 1; t < 3; ++t) {
            EXPECT_GE(nq[e][t], nq[e][t - 1]);
        }
    }
    for (std::size_t t = 0; t < 3; ++t) {
        EXPECT_LE(nq[0][t], nq[1][t]);
        EXPECT_LE(nq[1][t], nq[2][t]);
    }
}

TEST(CmdSoeReport, FailedRowsAreReported)
{
    SoeReportSpec spec;
    spec.alphas = {0.8};
    spec.tolerances = {1e-12};
    spec.cutoffs = {1.6e-11};
    spec.horizons = {1.0};
    const SoeReport r = cmd_soe_report(spec);
    EXPECT_EQ(r.failures, 1u);
    EXPECT_EQ(std::get<std::string>(r.table.rows[0][4]), "failed");
    EXPECT_GT(std::get<double>(r.table.rows[0][5]), 1e-12);
}

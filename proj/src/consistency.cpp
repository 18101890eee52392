#include "fastl1/consistency.hpp"

#include "fastl1/discrete_kernels.hpp"
#include "fastl1/errors.hpp"
#include "fastl1/fast_history.hpp"
#include "fastl1/kernel_functions.hpp"
#include "fastl1/soe.hpp"
#include "fastl1/timemesh.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace fastl1 {

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw ValidationError("loglog_slope: need two or more matching points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw ValidationError("loglog_slope: values must be positive");
        }
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) {
        throw ValidationError("loglog_slope: abscissae coincide");
    }
    return sxy / sxx;
}

namespace {

ConsistencyRow scan_one(double alpha, double p, double gamma, std::size_t steps, double final_time,
                        double soe_tolerance)
{
    const TimeMesh mesh = build_graded({final_time, steps, gamma});
    auto soe = std::make_shared<const SoeApprox>(
        soe_build(alpha, soe_tolerance, mesh.step(1), final_time));

    FastHistory history(soe, 1);
    std::vector<double> local(steps + 1, 0.0);
    double prev = 0.0;
    ConsistencyRow row;
    row.steps = steps;
    row.soe_size = soe->size();
    for (std::size_t n = 1; n <= steps; ++n) {
        const double v = omega(1.0 + p, mesh.t(n));
        const double dv[1] = {v - prev};
        const double approx = fast_l1_apply(history, mesh, n, dv).front();
        local[n] = std::fabs(caputo_power_exact(p, alpha, mesh.t(n)) - approx);
        history.update(n, mesh.step(n), dv);
        prev = v;
        row.max_local = std::max(row.max_local, local[n]);
    }

    const auto rows = discrete_kernel_A_rows(mesh, *soe, steps);
    const auto kernels = complementary_kernels_all(rows);
    for (const ComplementaryKernel& pk : kernels) {
        double weighted = 0.0;
        for (std::size_t j = 1; j <= pk.level; ++j) {
            weighted += pk.for_step(j) * local[j];
        }
        row.max_global = std::max(row.max_global, weighted);
    }
    return row;
}

} // namespace

ConsistencyScan consistency_rate_scan(double alpha, double p, double gamma,
                                      std::span<const std::size_t> steps, double final_time,
                                      double soe_tolerance)
{
    if (steps.size() < 2) {
        throw ValidationError("consistency_rate_scan: need at least two mesh sizes");
    }
    if (!(p > 0.0)) {
        throw ValidationError("consistency_rate_scan: exponent must be positive");
    }
    ConsistencyScan scan;
    std::vector<double> ns;
    std::vector<double> global;
    std::vector<double> local;
    for (std::size_t n : steps) {
        scan.rows.push_back(scan_one(alpha, p, gamma, n, final_time, soe_tolerance));
        ns.push_back(static_cast<double>(n));
        global.push_back(scan.rows.back().max_global);
        local.push_back(scan.rows.back().max_local);
    }
    scan.global_rate = -loglog_slope(ns, global);
    scan.local_rate = -loglog_slope(ns, local);
    return scan;
}

} // namespace fastl1

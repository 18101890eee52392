#include "fastl1/discrete_kernels.hpp"

#include "fastl1/errors.hpp"
#include "fastl1/kernel_functions.hpp"
#include "fastl1/l1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fastl1 {

namespace {

// b^(k,l) for all steps, step-major.
std::vector<double> local_weights(const TimeMesh& mesh, const SoeApprox& soe, std::size_t n_max)
{
    const std::size_t nq = soe.size();
    std::vector<double> b(n_max * nq);
    for (std::size_t k = 1; k <= n_max; ++k) {
        for (std::size_t l = 0; l < nq; ++l) {
            b[(k - 1) * nq + l] = local_weight_b(soe.nodes[l], mesh.step(k));
        }
    }
    return b;
}

std::vector<double> kernel_row(const TimeMesh& mesh, const SoeApprox& soe,
                               const std::vector<double>& b, std::size_t n)
{
    const std::size_t nq = soe.size();
    std::vector<double> row(n);
    row[0] = l1_coefficients(mesh, soe.alpha, n).coeffs.front();
    const double tn = mesh.t(n);
    for (std::size_t k = 1; k < n; ++k) {
        const double gap = tn - mesh.t(k);
        const double* bk = b.data() + (k - 1) * nq;
        double sum = 0.0;
        for (std::size_t l = 0; l < nq; ++l) {
            sum += soe.weights[l] * std::exp(-soe.nodes[l] * gap) * bk[l];
        }
        row[n - k] = sum;
    }
    return row;
}

void check_rows(std::span<const std::vector<double>> rows)
{
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto& row = rows[j];
        if (row.size() != j + 1) {
            throw ValidationError("complementary_kernel: row j must hold j entries");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!(row[i] > 0.0)) {
                throw ValidationError("complementary_kernel: kernel must be positive");
            }
            if (i > 0 && row[i] > row[i - 1] * (1.0 + 1e-14)) {
                std::ostringstream msg;
                msg << "complementary_kernel: kernel A^(" << j + 1 << ") increases at lag " << i;
                throw ValidationError(msg.str());
            }
        }
    }
}

ComplementaryKernel solve_level(std::span<const std::vector<double>> rows, std::size_t n)
{
    ComplementaryKernel p;
    p.level = n;
    p.values.assign(n, 0.0);
    // work[k] = P^(n)_{n-k}
    std::vector<double> work(n + 1, 0.0);
    work[n] = 1.0 / rows[n - 1][0];
    for (std::size_t j = n - 1; j >= 1; --j) {
        double sum = 0.0;
        for (std::size_t k = j + 1; k <= n; ++k) {
            const auto& ak = rows[k - 1];
            sum += (ak[k - j - 1] - ak[k - j]) * work[k];
        }
        work[j] = sum / rows[j - 1][0];
    }
    for (std::size_t j = 1; j <= n; ++j) {
        p.values[n - j] = work[j];
    }
    return p;
}

} // namespace

std::vector<double> discrete_kernel_A(const TimeMesh& mesh, const SoeApprox& soe, std::size_t n)
{
    if (n < 1 || n > mesh.num_steps()) {
        throw ValidationError("discrete_kernel_A: level out of range");
    }
    return kernel_row(mesh, soe, local_weights(mesh, soe, n), n);
}

std::vector<std::vector<double>> discrete_kernel_A_rows(const TimeMesh& mesh, const SoeApprox& soe,
                                                        std::size_t n_max)
{
    if (n_max < 1 || n_max > mesh.num_steps()) {
        throw ValidationError("discrete_kernel_A_rows: level out of range");
    }
    const std::vector<double> b = local_weights(mesh, soe, n_max);
    std::vector<std::vector<double>> rows;
    rows.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        rows.push_back(kernel_row(mesh, soe, b, n));
    }
    return rows;
}

double admissible_soe_tolerance(double alpha, double final_time)
{
    check_order(alpha);
    return std::min(omega(1.0 - alpha, final_time) / 3.0, alpha * omega(2.0 - alpha, 1.0));
}

double ComplementaryKernel::sum() const
{
    return std::accumulate(values.begin(), values.end(), 0.0);
}

ComplementaryKernel complementary_kernel(std::span<const std::vector<double>> rows)
{
    if (rows.empty()) {
        throw ValidationError("complementary_kernel: no kernel rows");
    }
    check_rows(rows);
    return solve_level(rows, rows.size());
}

std::vector<ComplementaryKernel> complementary_kernels_all(std::span<const std::vector<double>> rows)
{
    if (rows.empty()) {
        throw ValidationError("complementary_kernel: no kernel rows");
    }
    check_rows(rows);
    std::vector<ComplementaryKernel> out;
    out.reserve(rows.size());
    for (std::size_t n = 1; n <= rows.size(); ++n) {
        out.push_back(solve_level(rows, n));
    }
    return out;
}

double complementary_identity_defect(std::span<const std::vector<double>> rows,
                                     const ComplementaryKernel& p)
{
    const std::size_t n = p.level;
    if (rows.size() < n) {
        throw ValidationError("complementary_identity_defect: missing kernel rows");
    }
    double worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double sum = 0.0;
        for (std::size_t j = k; j <= n; ++j) {
            sum += p.for_step(j) * rows[j - 1][j - k];
        }
        worst = std::max(worst, std::fabs(sum - 1.0));
    }
    return worst;
}

} // namespace fastl1

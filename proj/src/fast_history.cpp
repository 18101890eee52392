#include "fastl1/fast_history.hpp"

#include "fastl1/errors.hpp"
#include "fastl1/kernel_functions.hpp"
#include "fastl1/l1.hpp"

#include <cmath>
#include <sstream>

namespace fastl1 {

StepFactors step_factors(const SoeApprox& soe, double tau)
{
    StepFactors f;
    f.decay.resize(soe.size());
    f.local.resize(soe.size());
    for (std::size_t l = 0; l < soe.size(); ++l) {
        f.decay[l] = std::exp(-soe.nodes[l] * tau);
        f.local[l] = local_weight_b(soe.nodes[l], tau);
    }
    return f;
}

FastHistory::FastHistory(std::shared_ptr<const SoeApprox> soe, std::size_t dofs)
    : soe_(std::move(soe)), dofs_(dofs)
{
    if (!soe_) {
        throw ValidationError("FastHistory: missing SOE");
    }
    state_.assign(dofs_ * soe_->size(), 0.0);
}

void FastHistory::check_level(std::size_t expected, const char* where) const
{
    if (expected != level_) {
        std::ostringstream msg;
        msg << where << ": history is at level " << level_ << ", caller expected " << expected;
        throw ValidationError(msg.str());
    }
}

void FastHistory::update(std::size_t expected_level, double tau, std::span<const double> increment)
{
    update(expected_level, step_factors(*soe_, tau), increment);
}

void FastHistory::update(std::size_t expected_level, const StepFactors& factors,
                         std::span<const double> increment)
{
    check_level(expected_level - 1, "FastHistory::update");
    if (increment.size() != dofs_) {
        throw ValidationError("FastHistory::update: increment size mismatch");
    }
    const std::size_t nq = soe_->size();
    const double* decay = factors.decay.data();
    const double* local = factors.local.data();
    for (std::size_t d = 0; d < dofs_; ++d) {
        double* h = state_.data() + d * nq;
        const double dv = increment[d];
        for (std::size_t l = 0; l < nq; ++l) {
            h[l] = decay[l] * h[l] + local[l] * dv;
        }
    }
    ++level_;
}

void FastHistory::history_term(std::size_t n, double tau_n, std::span<double> out) const
{
    history_term(n, step_factors(*soe_, tau_n), out);
}

void FastHistory::history_term(std::size_t n, const StepFactors& factors,
                               std::span<double> out) const
{
    check_level(n - 1, "FastHistory::history_term");
    if (out.size() != dofs_) {
        throw ValidationError("FastHistory::history_term: output size mismatch");
    }
    const std::size_t nq = soe_->size();
    std::vector<double> scaled(nq);
    for (std::size_t l = 0; l < nq; ++l) {
        scaled[l] = soe_->weights[l] * factors.decay[l];
    }
    // Four partial sums break the serial add chain.
    const std::size_t nq4 = nq - nq % 4;
    for (std::size_t d = 0; d < dofs_; ++d) {
        const double* h = state_.data() + d * nq;
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
        std::size_t l = 0;
        for (; l < nq4; l += 4) {
            s0 += scaled[l] * h[l];
            s1 += scaled[l + 1] * h[l + 1];
            s2 += scaled[l + 2] * h[l + 2];
            s3 += scaled[l + 3] * h[l + 3];
        }
        for (; l < nq; ++l) {
            s0 += scaled[l] * h[l];
        }
        out[d] = (s0 + s1) + (s2 + s3);
    }
}

std::vector<double> fast_l1_apply(const FastHistory& history, const TimeMesh& mesh, std::size_t n,
                                  std::span<const double> increment)
{
    if (n < 1 || n > mesh.num_steps()) {
        throw ValidationError("fast_l1_apply: level out of range");
    }
    if (increment.size() != history.dofs()) {
        throw ValidationError("fast_l1_apply: increment size mismatch");
    }
    const double tau = mesh.step(n);
    std::vector<double> out(history.dofs());
    history.history_term(n, tau, out);
    const double a0 = power_increment(0.0, tau, 1.0 - history.soe().alpha) /
                      (std::tgamma(2.0 - history.soe().alpha) * tau);
    for (std::size_t d = 0; d < out.size(); ++d) {
        out[d] += a0 * increment[d];
    }
    return out;
}

} // namespace fastl1

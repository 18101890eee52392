#pragma once

#include "fastl1/soe.hpp"
#include "fastl1/timemesh.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fastl1 {

/// Per-step SOE factors: decay_l = exp(-theta_l tau) and the local weight b_l.
struct StepFactors {
    std::vector<double> decay;
    std::vector<double> local;
};

[[nodiscard]] StepFactors step_factors(const SoeApprox& soe, double tau);

/// Exponential history H^l(t_k) of the fast L1 formula for a block of
/// degrees of freedom. Storage is DOF-major: the N_q values of one DOF are
/// contiguous.
///
/// H starts at zero (level 0). Each update advances the level by one:
///     H^l(t_k) = exp(-theta_l tau_k) H^l(t_{k-1}) + b^(k,l) (v^k - v^{k-1}).
/// Single writer; the per-DOF loops carry no cross-DOF dependence.
class FastHistory {
public:
    FastHistory(std::shared_ptr<const SoeApprox> soe, std::size_t dofs);

    [[nodiscard]] std::size_t level() const noexcept { return level_; }
    [[nodiscard]] std::size_t dofs() const noexcept { return dofs_; }
    [[nodiscard]] const SoeApprox& soe() const noexcept { return *soe_; }
    [[nodiscard]] double value(std::size_t dof, std::size_t node) const
    {
        return state_.at(dof * soe_->size() + node);
    }

    /// Advance from level k-1 to k. expected_level must equal k.
    void update(std::size_t expected_level, double tau, std::span<const double> increment);
    void update(std::size_t expected_level, const StepFactors& factors,
                std::span<const double> increment);

    /// out[d] = sum_l varpi_l exp(-theta_l tau_n) H^l_d(t_{n-1}); requires level == n-1.
    void history_term(std::size_t n, double tau_n, std::span<double> out) const;
    void history_term(std::size_t n, const StepFactors& factors, std::span<double> out) const;

private:
    void check_level(std::size_t expected, const char* where) const;

    std::shared_ptr<const SoeApprox> soe_;
    std::size_t dofs_;
    std::size_t level_ = 0;
    std::vector<double> state_;
};

/// Two-level fast L1 value at level n for every DOF:
///     a^(n)_0 (v^n - v^{n-1}) + sum_l varpi_l exp(-theta_l tau_n) H^l(t_{n-1}).
/// The history must sit at level n-1 and is not advanced.
[[nodiscard]] std::vector<double> fast_l1_apply(const FastHistory& history, const TimeMesh& mesh,
                                                std::size_t n, std::span<const double> increment);

} // namespace fastl1

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace fastl1 {

/// Exponential-sum approximation of the Caputo kernel,
///
///     omega_{1-alpha}(t) ~ sum_l weight_l * exp(-node_l * t),  t in [cutoff, horizon],
///
/// with absolute error at most `tolerance`. Nodes and weights are positive.
struct SoeApprox {
    double alpha = 0.5;
    double tolerance = 1e-12;
    double cutoff = 1e-6;  ///< Delta t
    double horizon = 1.0;  ///< T
    std::vector<double> nodes;   ///< theta_l, units 1/time
    std::vector<double> weights; ///< varpi_l

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
    /// sum_l weight_l exp(-node_l t), accumulated in extended precision.
    [[nodiscard]] long double evaluate(double t) const;
};

struct SoeBuildOptions {
    std::size_t certification_samples = 10000;
    /// How many times the per-panel accuracy target may be tightened.
    int max_escalations = 6;
};

/// Builds and certifies an SOE for omega_{1-alpha} on [cutoff, horizon].
///
/// The kernel is written as (sin(pi alpha)/pi) int_0^inf exp(-t s) s^(alpha-1) ds.
/// [0, s0] is integrated by Gauss-Jacobi with weight s^(alpha-1), with
/// s0 = 1 for horizon <= 1 and s0 = 2^-ceil(log2 horizon) otherwise; dyadic
/// panels [s0 2^j, s0 2^(j+1)] up to a truncation point set by the cutoff are
/// integrated by Gauss-Legendre. Each panel gets the smallest node count that
/// meets a per-panel target; the whole sum must then pass tolerance/2 on
/// log-uniform samples of [cutoff, horizon], tightening the per-panel target
/// otherwise. Throws SoeCertificationError if that never happens.
[[nodiscard]] SoeApprox soe_build(double alpha, double tolerance, double cutoff, double horizon,
                                  const SoeBuildOptions& options = {});

/// max over samples of |omega_{1-alpha}(t) - soe(t)|, computed in extended
/// precision. Every sample must lie in [cutoff, horizon].
[[nodiscard]] double soe_kernel_error(const SoeApprox& soe, std::span<const double> samples);

/// count log-uniform points spanning [lo, hi], both endpoints included.
[[nodiscard]] std::vector<double> log_uniform_samples(double lo, double hi, std::size_t count);

/// Error on the certification grid: 10^4 log-uniform points plus endpoints.
[[nodiscard]] double soe_certified_error(const SoeApprox& soe);

/// Plain text: header "alpha eps dt T Nq", then one "theta weight" per line.
void write_soe(std::ostream& os, const SoeApprox& soe);
[[nodiscard]] SoeApprox read_soe(std::istream& is);

} // namespace fastl1

#include "fastl1/soe.hpp"

#include "fastl1/errors.hpp"
#include "fastl1/gauss_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace fastl1 {

long double SoeApprox::evaluate(double t) const
{
    long double sum = 0.0L;
    const long double tl = t;
    for (std::size_t l = 0; l < nodes.size(); ++l) {
        sum += static_cast<long double>(weights[l]) *
               std::exp(-static_cast<long double>(nodes[l]) * tl);
    }
    return sum;
}

namespace {

constexpr std::size_t kReferenceNodes = 64;
constexpr std::size_t kSelectionSamples = 600;

long double kernel_exact(long double alpha, long double t)
{
    return std::pow(t, -alpha) / std::tgamma(1.0L - alpha);
}

struct Panel {
    bool singular = false; // Gauss-Jacobi on [0, hi]
    long double lo = 0.0L;
    long double hi = 0.0L;
};

struct Terms {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

class PanelRules {
public:
    explicit PanelRules(long double alpha)
        : alpha_(alpha), scale_(std::sin(std::numbers::pi_v<long double> * alpha) /
                                std::numbers::pi_v<long double>)
    {
    }

    Terms terms(const Panel& p, std::size_t n)
    {
        Terms out;
        out.nodes.reserve(n);
        out.weights.reserve(n);
        if (p.singular) {
            const GaussRule& r = jacobi(n);
            const long double half = p.hi / 2.0L;
            const long double factor = scale_ * std::pow(half, alpha_);
            for (std::size_t i = 0; i < n; ++i) {
                out.nodes.push_back(half * (1.0L + r.nodes[i]));
                out.weights.push_back(factor * r.weights[i]);
            }
        } else {
            const GaussRule& r = legendre(n);
            const long double half = (p.hi - p.lo) / 2.0L;
            for (std::size_t i = 0; i < n; ++i) {
                const long double s = p.lo + half * (1.0L + r.nodes[i]);
                out.nodes.push_back(s);
                out.weights.push_back(scale_ * half * r.weights[i] * std::pow(s, alpha_ - 1.0L));
            }
        }
        return out;
    }

private:
    const GaussRule& legendre(std::size_t n)
    {
        auto it = legendre_.find(n);
        if (it == legendre_.end()) {
            it = legendre_.emplace(n, gauss_legendre(n)).first;
        }
        return it->second;
    }

    const GaussRule& jacobi(std::size_t n)
    {
        auto it = jacobi_.find(n);
        if (it == jacobi_.end()) {
            it = jacobi_.emplace(n, gauss_jacobi(n, 0.0L, alpha_ - 1.0L)).first;
        }
        return it->second;
    }

    long double alpha_;
    long double scale_;
    std::map<std::size_t, GaussRule> legendre_;
    std::map<std::size_t, GaussRule> jacobi_;
};

std::vector<long double> evaluate_terms(const Terms& terms, std::span<const double> samples)
{
    std::vector<long double> values(samples.size(), 0.0L);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const long double t = samples[i];
        long double sum = 0.0L;
        for (std::size_t l = 0; l < terms.nodes.size(); ++l) {
            sum += terms.weights[l] * std::exp(-terms.nodes[l] * t);
        }
        values[i] = sum;
    }
    return values;
}

std::vector<Panel> make_panels(long double alpha, long double tolerance, long double cutoff,
                               long double horizon)
{
    const long double s0 =
        horizon <= 1.0L ? 1.0L : std::pow(2.0L, -std::ceil(std::log2(horizon)));
    const long double scale = std::sin(std::numbers::pi_v<long double> * alpha) /
                              std::numbers::pi_v<long double>;
    std::vector<Panel> panels{{true, 0.0L, s0}};
    long double lo = s0;
    // tail: scale * int_S^inf exp(-cutoff s) s^(alpha-1) ds <= scale S^(alpha-1) exp(-cutoff S) / cutoff
    while (scale * std::pow(lo, alpha - 1.0L) * std::exp(-cutoff * lo) / cutoff > tolerance / 8.0L) {
        panels.push_back({false, lo, 2.0L * lo});
        lo *= 2.0L;
        if (panels.size() > 400) {
            throw SoeCertificationError("soe_build: truncation point out of reach", INFINITY);
        }
    }
    return panels;
}

std::size_t smallest_count(PanelRules& rules, const Panel& panel, std::span<const double> samples,
                           const std::vector<long double>& reference, long double target,
                           std::size_t start)
{
    for (std::size_t n = start; n < kReferenceNodes; ++n) {
        const std::vector<long double> approx = evaluate_terms(rules.terms(panel, n), samples);
        long double err = 0.0L;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            err = std::max(err, std::fabs(approx[i] - reference[i]));
        }
        if (err <= target) {
            return n;
        }
    }
    return kReferenceNodes;
}

void check_soe_inputs(double alpha, double tolerance, double cutoff, double horizon)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("soe: alpha must lie in (0, 1)");
    }
    if (!(tolerance > 0.0 && tolerance < 1.0)) {
        throw ValidationError("soe: tolerance must lie in (0, 1)");
    }
    if (!(cutoff > 0.0) || !(horizon > cutoff) || !std::isfinite(horizon)) {
        throw ValidationError("soe: need 0 < cutoff < horizon");
    }
}

} // namespace

std::vector<double> log_uniform_samples(double lo, double hi, std::size_t count)
{
    if (!(lo > 0.0) || !(hi >= lo) || count < 2) {
        throw ValidationError("log_uniform_samples: need 0 < lo <= hi and count >= 2");
    }
    std::vector<double> out(count);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

double soe_kernel_error(const SoeApprox& soe, std::span<const double> samples)
{
    const double slack = 1e-14;
    const long double alpha = soe.alpha;
    long double worst = 0.0L;
    for (double t : samples) {
        if (!(t >= soe.cutoff * (1.0 - slack) && t <= soe.horizon * (1.0 + slack))) {
            std::ostringstream msg;
            msg << "soe_kernel_error: sample " << t << " outside [" << soe.cutoff << ", "
                << soe.horizon << "]";
            throw ValidationError(msg.str());
        }
        worst = std::max(worst, std::fabs(kernel_exact(alpha, t) - soe.evaluate(t)));
    }
    return static_cast<double>(worst);
}

double soe_certified_error(const SoeApprox& soe)
{
    const std::vector<double> samples = log_uniform_samples(soe.cutoff, soe.horizon, 10002);
    return soe_kernel_error(soe, samples);
}

SoeApprox soe_build(double alpha, double tolerance, double cutoff, double horizon,
                    const SoeBuildOptions& options)
{
    check_soe_inputs(alpha, tolerance, cutoff, horizon);
    const long double alpha_l = alpha;
    const std::vector<Panel> panels = make_panels(alpha_l, tolerance, cutoff, horizon);
    PanelRules rules(alpha_l);

    const std::vector<double> selection = log_uniform_samples(cutoff, horizon, kSelectionSamples);
    const std::vector<double> certification =
        log_uniform_samples(cutoff, horizon, std::max<std::size_t>(options.certification_samples, 2) + 2);

    std::vector<std::vector<long double>> reference;
    reference.reserve(panels.size());
    for (const Panel& p : panels) {
        reference.push_back(evaluate_terms(rules.terms(p, kReferenceNodes), selection));
    }

    long double target = tolerance / 8.0L;
    double best = INFINITY;
    // A tighter target never needs fewer nodes, so each attempt resumes from the last counts.
    std::vector<std::size_t> counts(panels.size(), 1);
    for (int attempt = 0; attempt <= options.max_escalations; ++attempt, target /= 4.0L) {
        bool changed = attempt == 0;
        for (std::size_t p = 0; p < panels.size(); ++p) {
            const std::size_t n =
                smallest_count(rules, panels[p], selection, reference[p], target, counts[p]);
            changed = changed || n != counts[p];
            counts[p] = n;
        }
        if (!changed) {
            continue;
        }
        SoeApprox soe{alpha, tolerance, cutoff, horizon, {}, {}};
        for (std::size_t p = 0; p < panels.size(); ++p) {
            const std::size_t n = counts[p];
            const Terms terms = rules.terms(panels[p], n);
            for (std::size_t i = 0; i < n; ++i) {
                soe.nodes.push_back(static_cast<double>(terms.nodes[i]));
                soe.weights.push_back(static_cast<double>(terms.weights[i]));
            }
        }
        const double err = soe_kernel_error(soe, certification);
        best = std::min(best, err);
        if (err <= tolerance / 2.0) {
            return soe;
        }
    }
    std::ostringstream msg;
    msg << "soe_build: certification failed for alpha=" << alpha << " eps=" << tolerance
        << " dt=" << cutoff << " T=" << horizon << " (achieved " << best << ")";
    throw SoeCertificationError(msg.str(), best);
}

void write_soe(std::ostream& os, const SoeApprox& soe)
{
    const auto old_flags = os.flags();
    const auto old_prec = os.precision(16);
    os.setf(std::ios::scientific, std::ios::floatfield);
    os << soe.alpha << ' ' << soe.tolerance << ' ' << soe.cutoff << ' ' << soe.horizon << ' '
       << soe.size() << '\n';
    for (std::size_t l = 0; l < soe.size(); ++l) {
        os << soe.nodes[l] << ' ' << soe.weights[l] << '\n';
    }
    os.flags(old_flags);
    os.precision(old_prec);
}

SoeApprox read_soe(std::istream& is)
{
    SoeApprox soe;
    std::size_t count = 0;
    if (!(is >> soe.alpha >> soe.tolerance >> soe.cutoff >> soe.horizon >> count)) {
        throw ValidationError("read_soe: malformed header");
    }
    check_soe_inputs(soe.alpha, soe.tolerance, soe.cutoff, soe.horizon);
    soe.nodes.resize(count);
    soe.weights.resize(count);
    for (std::size_t l = 0; l < count; ++l) {
        if (!(is >> soe.nodes[l] >> soe.weights[l])) {
            throw ValidationError("read_soe: truncated node list");
        }
        if (!(soe.nodes[l] > 0.0) || !(soe.weights[l] > 0.0)) {
            throw ValidationError("read_soe: nodes and weights must be positive");
        }
    }
    return soe;
}

} // namespace fastl1

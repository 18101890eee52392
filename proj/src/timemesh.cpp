#include "fastl1/timemesh.hpp"

#include "fastl1/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace fastl1 {

TimeMesh::TimeMesh(std::vector<double> points) : points_(std::move(points))
{
    if (points_.size() < 2) {
        throw ValidationError("time mesh needs at least one step");
    }
    if (points_.front() != 0.0) {
        throw ValidationError("time mesh must start at t = 0");
    }
    steps_.reserve(points_.size() - 1);
    for (std::size_t k = 1; k < points_.size(); ++k) {
        const double tau = points_[k] - points_[k - 1];
        if (!std::isfinite(points_[k]) || !(tau > 0.0)) {
            std::ostringstream msg;
            msg << "time mesh is not strictly increasing at k = " << k;
            throw ValidationError(msg.str());
        }
        steps_.push_back(tau);
    }
    max_step_ = *std::max_element(steps_.begin(), steps_.end());
    min_step_ = *std::min_element(steps_.begin(), steps_.end());
}

double TimeMesh::ratio(std::size_t k) const
{
    if (k < 1 || k + 1 > steps_.size()) {
        throw ValidationError("step ratio index out of range");
    }
    return steps_[k - 1] / steps_[k];
}

double TimeMesh::max_ratio() const noexcept
{
    double rho = 0.0;
    for (std::size_t k = 1; k < steps_.size(); ++k) {
        rho = std::max(rho, steps_[k - 1] / steps_[k]);
    }
    return rho;
}

namespace {

void check_grading(double final_time, std::size_t steps, double gamma)
{
    if (!(final_time > 0.0) || !std::isfinite(final_time)) {
        throw ValidationError("final time must be positive");
    }
    if (steps < 1) {
        throw ValidationError("number of steps must be at least 1");
    }
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
        throw ValidationError("grading exponent must satisfy gamma >= 1");
    }
}

std::vector<double> graded_points(double end, std::size_t steps, double gamma)
{
    std::vector<double> pts(steps + 1);
    const auto n = static_cast<double>(steps);
    for (std::size_t k = 0; k <= steps; ++k) {
        pts[k] = end * std::pow(static_cast<double>(k) / n, gamma);
    }
    pts.back() = end;
    return pts;
}

} // namespace

TimeMesh build_graded(const GradedSpec& spec)
{
    check_grading(spec.final_time, spec.steps, spec.gamma);
    return TimeMesh(graded_points(spec.final_time, spec.steps, spec.gamma));
}

CompositeLayout composite_layout(const CompositeSpec& spec)
{
    check_grading(spec.final_time, spec.total_steps, spec.gamma);
    const double T = spec.final_time;
    const double inv_gamma = 1.0 / spec.gamma;
    CompositeLayout layout;
    if (T <= inv_gamma) {
        layout.graded_end = T;
        layout.graded_steps = spec.total_steps;
        layout.tail_steps = 0;
        return layout;
    }
    layout.graded_end = inv_gamma;
    const double share = static_cast<double>(spec.total_steps) / (T + 1.0 - inv_gamma);
    const auto graded = static_cast<std::size_t>(std::ceil(share));
    if (graded >= spec.total_steps) {
        throw ValidationError("composite mesh: uniform tail would receive no steps");
    }
    layout.graded_steps = std::max<std::size_t>(graded, 1);
    layout.tail_steps = spec.total_steps - layout.graded_steps;
    return layout;
}

TimeMesh build_composite(const CompositeSpec& spec)
{
    const CompositeLayout layout = composite_layout(spec);
    std::vector<double> pts = graded_points(layout.graded_end, layout.graded_steps, spec.gamma);
    if (layout.tail_steps == 0) {
        return TimeMesh(std::move(pts));
    }
    const double T = spec.final_time;
    const double T0 = layout.graded_end;
    const double tail = (T - T0) / static_cast<double>(layout.tail_steps);
    pts.reserve(spec.total_steps + 1);
    for (std::size_t m = 1; m < layout.tail_steps; ++m) {
        pts.push_back(T0 + static_cast<double>(m) * tail);
    }
    pts.push_back(T);
    return TimeMesh(std::move(pts));
}

MeshDiagnostics mesh_diagnostics(const TimeMesh& mesh, double gamma)
{
    if (!(gamma >= 1.0)) {
        throw ValidationError("grading exponent must satisfy gamma >= 1");
    }
    MeshDiagnostics d;
    d.max_ratio = mesh.max_ratio();
    const double tau = mesh.max_step();
    const double expo = 1.0 - 1.0 / gamma;
    for (std::size_t k = 1; k <= mesh.num_steps(); ++k) {
        const double scale = tau * std::min(1.0, std::pow(mesh.t(k), expo));
        d.grading_constant = std::max(d.grading_constant, mesh.step(k) / scale);
        if (k >= 2) {
            d.growth_constant = std::max(d.growth_constant, mesh.t(k) / mesh.t(k - 1));
        }
    }
    return d;
}

void write_mesh_csv(std::ostream& os, const TimeMesh& mesh)
{
    const auto old_flags = os.flags();
    const auto old_prec = os.precision(16);
    os.setf(std::ios::scientific, std::ios::floatfield);
    for (double t : mesh.points()) {
        os << t << '\n';
    }
    os.flags(old_flags);
    os.precision(old_prec);
}

TimeMesh read_mesh_csv(std::istream& is)
{
    std::vector<double> pts;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        try {
            pts.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw ValidationError("mesh csv: cannot parse '" + line + "'");
        }
    }
    return TimeMesh(std::move(pts));
}

} // namespace fastl1

#include "penwcf/validity.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "penwcf/kernels.hpp"

namespace penwcf {

std::string ValidityReport::describe() const {
    std::ostringstream os;
    os << (is_valid ? "valid" : "INVALID") << " worst=" << worst_value
       << " at lambda=" << worst_lambda << " sum=" << sum_residual
       << " first_moment=" << first_moment;
    return os.str();
}

ValidityReport check_valid_1d(const std::vector<double>& coords,
                              const std::vector<double>& weights, SweepMode mode,
                              const std::vector<double>& T, double tol) {
    ValidityReport r;
    double sum = 0.0, fm = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        sum += weights[i];
        fm += coords[i] * weights[i];
    }
    r.sum_residual = sum;
    r.first_moment = fm;
    const std::vector<double> lams =
        mode == SweepMode::Dense ? kernels::dense_lambda_grid() : T;
    r.worst_value = std::numeric_limits<double>::infinity();
    for (double lam : lams) {
        double p = 0.0;
        for (std::size_t i = 0; i < coords.size(); ++i)
            p += weights[i] * kernels::profile_kernel(coords[i], lam);
        if (p < r.worst_value) {
            r.worst_value = p;
            r.worst_lambda = lam;
        }
    }
    if (lams.empty()) r.worst_value = 0.0;
    double scale = 0.0;
    for (double w : weights) scale += std::abs(w);
    const double t = tol * std::max(1.0, scale);
    r.is_valid = r.worst_value >= -t && std::abs(r.sum_residual) <= t && r.first_moment >= -t;
    return r;
}

const ValidityReport* LineReports::worst_line() const {
    const ValidityReport* worst = nullptr;
    for (const auto& [c, rep] : lines)
        if (!worst || rep.worst_value < worst->worst_value) worst = &rep;
    return worst;
}

namespace {

LineReports check_lines(const Move& m, Axis axis, SweepMode mode, const std::vector<double>& T,
                        double tol) {
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> lines;
    for (const auto& [k, w] : m.points()) {
        const double fixed = axis == Axis::Horizontal ? k.second : k.first;
        const double moving = axis == Axis::Horizontal ? k.first : k.second;
        lines[fixed].first.push_back(moving);
        lines[fixed].second.push_back(w);
    }
    LineReports out;
    out.worst_value = std::numeric_limits<double>::infinity();
    for (const auto& [fixed, cw] : lines) {
        ValidityReport rep = check_valid_1d(cw.first, cw.second, mode, T, tol);
        out.all_valid = out.all_valid && rep.is_valid;
        out.worst_value = std::min(out.worst_value, rep.worst_value);
        out.worst_sum = std::max(out.worst_sum, std::abs(rep.sum_residual));
        out.worst_first_moment = std::min(out.worst_first_moment, rep.first_moment);
        out.lines.emplace(fixed, rep);
    }
    if (out.lines.empty()) out.worst_value = 0.0;
    return out;
}

}  // namespace

LineReports check_h_valid(const Move& m, SweepMode mode, const std::vector<double>& T,
                          double tol) {
    return check_lines(m, Axis::Horizontal, mode, T, tol);
}

LineReports check_v_valid(const Move& m, SweepMode mode, const std::vector<double>& T,
                          double tol) {
    return check_lines(m, Axis::Vertical, mode, T, tol);
}

bool check_eta_valid(const std::vector<double>& coords, const std::vector<double>& weights,
                     double eta) {
    if (eta <= 0.0) return false;
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (sum + eta < 0.0) return false;
    for (double lam : kernels::dense_lambda_grid()) {
        double p = 0.0;
        for (std::size_t i = 0; i < coords.size(); ++i)
            p += weights[i] * kernels::profile_kernel(coords[i], lam);
        if (p + eta < 0.0) return false;
    }
    return true;
}

ValidityReport check_transition(const Configuration& g, const Configuration& h, Axis axis,
                                double tol) {
    Move diff = h - g;
    diff.canonicalize();
    LineReports lr = check_lines(diff, axis, SweepMode::Dense, {}, tol);
    ValidityReport agg;
    agg.is_valid = lr.all_valid;
    agg.worst_value = lr.lines.empty() ? 0.0 : lr.worst_value;
    agg.sum_residual = lr.worst_sum;
    agg.first_moment = lr.lines.empty() ? 0.0 : lr.worst_first_moment;
    if (const ValidityReport* w = lr.worst_line()) agg.worst_lambda = w->worst_lambda;
    return agg;
}

bool split_feasible(double z, const std::vector<std::pair<double, double>>& targets) {
    if (z <= 0.0) return false;
    double acc = 0.0;
    for (const auto& [x, frac] : targets) {
        if (x <= 0.0) return false;
        acc += frac / x;
    }
    return acc <= 1.0 / z + 1e-12 * std::max(1.0, acc);
}

}  // namespace penwcf

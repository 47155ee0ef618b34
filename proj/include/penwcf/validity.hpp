#pragma once

#include <map>
#include <string>
#include <vector>

#include "penwcf/core.hpp"

namespace penwcf {

// Default tolerance tiers: published matrices are trusted to their print
// precision, self-produced solutions to solver precision.
inline constexpr double kGoldenTol = 5e-6;
inline constexpr double kSelfTol = 1e-10;

struct ValidityReport {
    bool is_valid = true;
    double worst_lambda = 0.0;  // argmin of the profile over the checked set
    double worst_value = 0.0;   // min profile value
    double sum_residual = 0.0;
    double first_moment = 0.0;

    std::string describe() const;
};

enum class SweepMode { Grid, Dense };

// One-dimensional validity: zero sum, nonnegative profile on the lambda
// set (T for Grid, the 601-point log sweep for Dense), nonnegative first
// moment. Reports, never throws.
ValidityReport check_valid_1d(const std::vector<double>& coords,
                              const std::vector<double>& weights, SweepMode mode,
                              const std::vector<double>& T, double tol = kSelfTol);

struct LineReports {
    bool all_valid = true;
    double worst_value = 0.0;
    double worst_sum = 0.0;
    double worst_first_moment = 0.0;
    std::map<double, ValidityReport> lines;  // keyed by the fixed coordinate

    const ValidityReport* worst_line() const;
};

// Horizontal validity: every fixed-y line of m, as a function of x, is valid.
LineReports check_h_valid(const Move& m, SweepMode mode, const std::vector<double>& T,
                          double tol = kSelfTol);
// Vertical validity: every fixed-x line of m, as a function of y, is valid.
LineReports check_v_valid(const Move& m, SweepMode mode, const std::vector<double>& T,
                          double tol = kSelfTol);

// Approximate validity: sum + eta >= 0 and profile + eta >= 0 on the sweep.
bool check_eta_valid(const std::vector<double>& coords, const std::vector<double>& weights,
                     double eta);

enum class Axis { Horizontal, Vertical };

// g -> h is valid iff h - g is horizontally (resp. vertically) valid.
ValidityReport check_transition(const Configuration& g, const Configuration& h, Axis axis,
                                double tol = kSelfTol);

// Split condition from one source coordinate: sum_i frac_i / x_i <= 1 / z.
bool split_feasible(double z, const std::vector<std::pair<double, double>>& targets);

}  // namespace penwcf

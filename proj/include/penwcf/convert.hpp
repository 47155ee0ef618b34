#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "penwcf/core.hpp"
#include "penwcf/validity.hpp"

namespace penwcf {

// Split of the actual start/end configurations (the sign parts of h + v)
// against the ideal boundary: s = (1-eps1) s_ideal + eps1 s_error, likewise
// for the end configuration.
struct BoundaryDecomposition {
    double eps1 = 0.0;
    double eps2 = 0.0;
    Configuration s_error;   // unit L1 norm, or empty when eps1 = 0
    Configuration e_error;
    Configuration s_actual;  // negative part of h + v
    Configuration e_actual;  // positive part of h + v
    double mass = 1.0;       // L1 mass of s_actual (= e_actual); the
                             // decomposition shares are taken after
                             // normalising by it
    double beta = 0.0;       // ideal final point (beta, alpha)
    double alpha = 0.0;
};

BoundaryDecomposition decompose_boundary(const Move& h_star, const Move& v_star, double lambda,
                                         double beta, double alpha);

// How the small split coordinate m1 is chosen.
enum class M1Mode {
    Auto,           // largest split-feasible coordinate, capped just below lambda
    Lemma,          // min-of-max over supp(h^-) u supp(s_error)
    Theorem,        // min-of-max over supp(h) u supp(v)
    MinCoordinate,  // plain minimum coordinate over supp(h^-) u supp(s_error)
};

struct ConversionParams {
    double m1 = 0.0;
    double c1 = 0.0;
    double c3 = 0.0;          // 1/c1 - 1
    double delta = 0.0;
    double delta_min = 0.0;
    double w1_plus = 0.0;     // theorem-form roots, documentation fields
    double w1_minus = 0.0;
    double w1 = 0.0;          // construction weights; c1 = w1 * w2
    double w2 = 0.0;
    double m2_tilde = 0.0;
    double m2 = 0.0;
    double delta_clyst = 0.0;
    double delta_sfix = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
    double hminus_norm = 0.0;
    bool m1_below_lambda = false;  // flagged per the theorem's absolute-value form
};

// Paper interval (0, m1^2 / ((lambda+1) lambda)).
std::pair<double, double> admissible_c1(double m1, double lambda);

// Largest split-feasible source coordinate for the two-step split from
// [[z, z]] onto the normalised target configuration.
double harmonic_split_bound(const Configuration& target);

// delta: either an absolute value in (delta_min, 1) or delta_min + offset.
struct DeltaChoice {
    std::optional<double> value;
    std::optional<double> offset;
    static DeltaChoice absolute(double v) { return {v, std::nullopt}; }
    static DeltaChoice above_min(double o) { return {std::nullopt, o}; }
};

ConversionParams conversion_params(const BoundaryDecomposition& d, const Move& h_star,
                                   double lambda, std::optional<double> c1, DeltaChoice delta,
                                   M1Mode m1_mode = M1Mode::Auto);

struct ConversionReport {
    double err = 0.0;            // sqrt(delta (m2-alpha)(m2-beta))
    double n_steps = 0.0;        // 10 + 2/eta2
    double rc = 0.0;             // rounds = 2 * ceil(n_steps)
    std::size_t mu = 0;          // point-count bound
    int sc = 0;                  // qubits = 3 * ceil(log2(2 mu + 1))
    double protocol_bias = 0.0;  // max(alpha, beta) + err - lambda - 1/2
    double alpha = 0.0;
    double beta = 0.0;
    ConversionParams params;

    double delta_max(double eps_target) const;  // eps^2/((m2-alpha)(m2-beta))
};

ConversionReport conversion_report(const BoundaryDecomposition& d, const Move& h_star,
                                   const Move& v_star, double lambda,
                                   const ConversionParams& params);

struct TradeoffRow {
    double delta = 0.0;
    double err = 0.0;
    double rc = 0.0;
    double bias = 0.0;
};

std::vector<TradeoffRow> tradeoff_curve(const BoundaryDecomposition& d, const Move& h_star,
                                        const Move& v_star, double lambda,
                                        std::optional<double> c1,
                                        const std::vector<double>& deltas,
                                        M1Mode m1_mode = M1Mode::Auto);

int qubits_for_points(std::size_t mu);  // 3 * ceil(log2(2 mu + 1))

}  // namespace penwcf

#include "penwcf/convert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace penwcf {

BoundaryDecomposition decompose_boundary(const Move& h_star, const Move& v_star, double lambda,
                                         double beta, double alpha) {
    Move hv = h_star + v_star;
    hv.canonicalize();
    auto [e_act, s_act] = split_signs(hv);

    BoundaryDecomposition d;
    d.beta = beta;
    d.alpha = alpha;
    d.s_actual = s_act;
    d.e_actual = e_act;

    const Move::Key sk1{lambda, lambda + 1.0}, sk2{lambda + 1.0, lambda};
    const Move::Key ek{beta, alpha};
    Configuration s_err, e_err;
    double off_s = 0.0, on_s = 0.0;
    for (const auto& [k, w] : s_act.points()) {
        if (k == sk1 || k == sk2)
            on_s += w;
        else {
            off_s += w;
            s_err.add(k.first, k.second, w);
        }
    }
    double off_e = 0.0, on_e = 0.0;
    for (const auto& [k, w] : e_act.points()) {
        if (k == ek)
            on_e += w;
        else {
            off_e += w;
            e_err.add(k.first, k.second, w);
        }
    }
    // The sign parts of h + v share one L1 mass (both moves have zero line
    // sums); the theorem's shares refer to the mass-1 normalisation.
    const double Ws = on_s + off_s, We = on_e + off_e;
    if (Ws <= 0.0 || We <= 0.0)
        throw std::runtime_error("decompose_boundary: degenerate game with no boundary mass");
    if (std::abs(Ws - We) > 1e-9 * std::max(Ws, We))
        throw std::runtime_error("decompose_boundary: start and end masses differ");
    d.mass = Ws;
    d.eps1 = off_s / Ws;
    d.eps2 = off_e / We;
    if (d.eps1 >= 1.0 || d.eps2 >= 1.0)
        throw std::runtime_error("decompose_boundary: error mass >= 1, approximation too coarse");
    if (on_s / Ws < 0.5 || on_e / We < 0.5)
        throw std::runtime_error("decompose_boundary: mass missing at an ideal support point");
    if (d.eps1 > 0.0) {
        s_err *= 1.0 / off_s;
        d.s_error = s_err;
    }
    if (d.eps2 > 0.0) {
        e_err *= 1.0 / off_e;
        d.e_error = e_err;
    }
    return d;
}

std::pair<double, double> admissible_c1(double m1, double lambda) {
    if (m1 <= 0.0) throw std::invalid_argument("admissible_c1: m1 must be > 0");
    if (lambda <= 0.0) throw std::invalid_argument("admissible_c1: lambda must be > 0");
    return {0.0, m1 * m1 / ((lambda + 1.0) * lambda)};
}

double harmonic_split_bound(const Configuration& target) {
    const double tot = total_weight(target);
    if (tot <= 0.0) return std::numeric_limits<double>::infinity();
    std::map<double, double> xmass;
    for (const auto& [k, w] : target.points()) xmass[k.first] += w;
    double H = 0.0;
    for (const auto& [x, w] : xmass) H += (w / tot) / x;
    double bound = 1.0 / H;
    for (const auto& [x0, wx] : xmass) {
        double Hy = 0.0;
        for (const auto& [k, w] : target.points())
            if (k.first == x0) Hy += (w / wx) / k.second;
        bound = std::min(bound, 1.0 / Hy);
    }
    return bound;
}

namespace {

// Construction weights for the two-step boundary split with both start
// points mirrored: c1 = w1 * w2 and m2' = m2'' = m2_tilde. Uses the
// closed form when m2 is prescribed and the quadratic otherwise.
struct SplitWeights {
    double w1, w2, m2_tilde;
};

std::optional<SplitWeights> split_weights_for_c1(double m1, double lambda, double c1) {
    // Quadratic in w1 with the half-weight convention c_half = c1 / 2; the
    // discriminant is kept in factored form and the near-cancelling root is
    // computed through it so tiny c1 stays accurate.
    const double ch = 0.5 * c1;
    const double factored = 8 * ch * lambda * (lambda + 1) * (lambda - m1) * (lambda + 1 - m1);
    const double disc = m1 * m1 + factored;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double w_big = (root + m1) / (2 * (lambda + 1) * (m1 - lambda));
    const double w_small = 4 * ch * lambda * (lambda + 1 - m1) / (m1 + root);
    std::optional<SplitWeights> best;
    for (double w1 : {w_big, w_small}) {
        if (!(w1 > 0.0 && w1 < m1 / (lambda + 1.0))) continue;
        const double w2 = c1 / w1;
        if (!(w2 > 0.0 && w2 < std::min(1.0, m1 / lambda))) continue;
        const double m2p = (1.0 - w1) / (1.0 / (lambda + 1.0) - w1 / m1);
        const double m2pp = (1.0 - w2) / (1.0 / lambda - w2 / m1);
        if (m2p <= 0.0 || m2pp <= 0.0) continue;
        if (!best || m2p < best->m2_tilde) best = SplitWeights{w1, w2, m2p};
    }
    return best;
}

std::optional<SplitWeights> split_weights_for_m2(double m1, double lambda, double M) {
    const double w1 = (1.0 - M / (lambda + 1.0)) / (1.0 - M / m1);
    const double w2 = (1.0 - M / lambda) / (1.0 - M / m1);
    if (!(w1 > 0.0 && w1 < m1 / (lambda + 1.0))) return std::nullopt;
    if (!(w2 > 0.0 && w2 < std::min(1.0, m1 / lambda))) return std::nullopt;
    return SplitWeights{w1, w2, M};
}

}  // namespace

ConversionParams conversion_params(const BoundaryDecomposition& d, const Move& h_star,
                                   double lambda, std::optional<double> c1_in, DeltaChoice delta,
                                   M1Mode m1_mode) {
    if (lambda <= 0.0)
        throw std::invalid_argument("conversion_params: requires lambda > 0");
    ConversionParams p;
    auto [h_plus, h_minus] = split_signs(h_star);
    if (h_minus.empty())
        throw std::runtime_error("conversion_params: h has no negative part");
    // Norm of the catalyst in the mass-1 normalisation of the game.
    p.hminus_norm = l1_norm(h_minus) / d.mass;

    switch (m1_mode) {
        case M1Mode::Lemma:
            p.m1 = min_coordinate(h_minus);
            if (d.eps1 > 0.0) p.m1 = std::min(p.m1, min_coordinate(d.s_error));
            break;
        case M1Mode::Theorem:
            p.m1 = min_coordinate(h_star);
            break;
        case M1Mode::MinCoordinate:
            p.m1 = min_plain_coordinate(h_minus);
            if (d.eps1 > 0.0) p.m1 = std::min(p.m1, min_plain_coordinate(d.s_error));
            break;
        case M1Mode::Auto: {
            Configuration unit_hminus = h_minus;
            unit_hminus *= 1.0 / p.hminus_norm;
            double b = harmonic_split_bound(unit_hminus);
            if (d.eps1 > 0.0) b = std::min(b, harmonic_split_bound(d.s_error));
            p.m1 = std::min(b, (1.0 - 1e-6) * lambda);
            break;
        }
    }
    if (p.m1 == lambda)
        throw std::runtime_error("conversion_params: m1 equals lambda, split weights singular");
    p.m1_below_lambda = p.m1 < lambda;

    const double maxcoord = max_coordinate(h_star);
    const auto [c_lo, c_hi] = admissible_c1(p.m1, lambda);
    if (c1_in) {
        p.c1 = *c1_in;
        if (!(p.c1 > c_lo && p.c1 < c_hi))
            throw std::invalid_argument("conversion_params: c1 outside the admissible interval");
    } else {
        // Largest c1 that keeps the residual parking coordinate within the
        // game: m2_tilde pinned to maxcoordinate(h).
        auto sw = split_weights_for_m2(p.m1, lambda, maxcoord);
        if (!sw) {
            // Fall back to the midpoint of the feasible construction range.
            p.c1 = 0.25 * c_hi;
            sw = split_weights_for_c1(p.m1, lambda, p.c1);
            if (!sw) throw std::runtime_error("conversion_params: no feasible split weights");
        }
        p.c1 = sw->w1 * sw->w2;
    }
    const auto sw = split_weights_for_c1(p.m1, lambda, p.c1);
    if (!sw)
        throw std::runtime_error("conversion_params: no feasible split weights for this c1");
    p.w1 = sw->w1;
    p.w2 = sw->w2;
    p.m2_tilde = sw->m2_tilde;
    p.m2 = std::max(maxcoord, p.m2_tilde);

    // Theorem-form roots at the printed c1 convention (documentation only).
    {
        const double disc = 8 * p.c1 * lambda * lambda * (lambda + 1) * (lambda + 1) +
                            p.m1 * p.m1 * (8 * p.c1 * lambda * (lambda + 1) + 1) -
                            8 * p.c1 * lambda * (2 * lambda * lambda + 3 * lambda + 1) * p.m1;
        const double root = disc >= 0.0 ? std::sqrt(disc) : std::nan("");
        p.w1_plus = (root + p.m1) / (2 * (lambda + 1) * (p.m1 - lambda));
        p.w1_minus = (-root + p.m1) / (2 * (lambda + 1) * (p.m1 - lambda));
    }

    p.c3 = 1.0 / p.c1 - 1.0;
    p.delta_min = (1.0 - d.eps2) * p.c3 * d.eps1 / (1.0 + p.c3 * d.eps1) + d.eps2;
    if (delta.value) {
        p.delta = *delta.value;
    } else if (delta.offset) {
        p.delta = p.delta_min + *delta.offset;
    } else {
        throw std::invalid_argument("conversion_params: no delta given");
    }
    if (!(p.delta > p.delta_min && p.delta < 1.0)) {
        throw std::invalid_argument("conversion_params: delta outside (delta_min, 1), delta_min = " +
                                    std::to_string(p.delta_min));
    }

    const double ratio = (1.0 - d.eps1) + (d.eps1 > 0.0 ? d.eps1 / p.c1 : 0.0);
    p.delta_clyst = 1.0 - ratio * (1.0 - p.delta) / (1.0 - d.eps2);
    if (!(p.delta_clyst > 0.0 && p.delta_clyst < 1.0))
        throw std::runtime_error("conversion_params: delta_clyst outside (0, 1)");
    p.delta_sfix = d.eps1 > 0.0
                       ? d.eps1 * (1.0 - p.delta_clyst) / (p.c1 * (1.0 - d.eps1) + d.eps1)
                       : 0.0;
    p.eta1 = 1.0 - p.c1 * (1.0 - p.delta_clyst) / (p.c1 * (1.0 - d.eps1) + d.eps1);
    p.eta2 = p.delta_clyst / p.hminus_norm * (p.c1 * (1.0 - d.eps1) + d.eps1) /
             (1.0 - p.delta_clyst);
    p.eta3 = 1.0 - (1.0 - p.eta1) * (1.0 + p.eta2 * p.hminus_norm);
    return p;
}

double ConversionReport::delta_max(double eps_target) const {
    return eps_target * eps_target / ((params.m2 - alpha) * (params.m2 - beta));
}

ConversionReport conversion_report(const BoundaryDecomposition& d, const Move& h_star,
                                   const Move& v_star, double lambda,
                                   const ConversionParams& params) {
    ConversionReport r;
    r.params = params;
    r.alpha = d.alpha;
    r.beta = d.beta;
    r.err = std::sqrt(params.delta * (params.m2 - d.alpha) * (params.m2 - d.beta));
    r.n_steps = 10.0 + 2.0 / params.eta2;
    r.rc = 2.0 * std::ceil(r.n_steps);
    r.mu = support_count_union(h_star, v_star);
    r.sc = qubits_for_points(r.mu);
    r.protocol_bias = std::max(d.alpha, d.beta) + r.err - lambda - 0.5;
    return r;
}

std::vector<TradeoffRow> tradeoff_curve(const BoundaryDecomposition& d, const Move& h_star,
                                        const Move& v_star, double lambda,
                                        std::optional<double> c1,
                                        const std::vector<double>& deltas, M1Mode m1_mode) {
    std::vector<TradeoffRow> rows;
    rows.reserve(deltas.size());
    for (double delta : deltas) {
        const ConversionParams p =
            conversion_params(d, h_star, lambda, c1, DeltaChoice::absolute(delta), m1_mode);
        const ConversionReport rep = conversion_report(d, h_star, v_star, lambda, p);
        rows.push_back({delta, rep.err, rep.rc, rep.protocol_bias});
    }
    return rows;
}

int qubits_for_points(std::size_t mu) {
    return 3 * static_cast<int>(std::ceil(std::log2(2.0 * static_cast<double>(mu) + 1.0)));
}

}  // namespace penwcf

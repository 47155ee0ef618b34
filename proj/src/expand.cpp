#include "penwcf/expand.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace penwcf {

namespace {

struct Builder {
    TdpgExpansion out;
    double tol;
    std::int64_t index = 0;
    Move current;

    void start(Move frame) {
        current = std::move(frame);
        current.canonicalize();
        out.frames.push_back(current);
        note_frame(current);
    }

    void note_frame(const Move& f) {
        out.max_support = std::max(out.max_support, support_count(f));
        const double mass = total_weight(f);
        out.worst_mass_error = std::max(out.worst_mass_error, std::abs(mass - 1.0));
    }

    // Applies a move as the next transition and records the validity check.
    void step(const Move& delta, Axis axis, const char* stage, bool store = true) {
        Move next = current + delta;
        next.canonicalize();
        TransitionCheck c;
        c.index = index++;
        c.axis = axis;
        c.stage = stage;
        c.report = check_transition(current, next, axis, tol);
        c.frame_nonneg = next.nonnegative(tol);
        c.frame_mass = total_weight(next);
        out.all_valid = out.all_valid && c.report.is_valid && c.frame_nonneg;
        out.checks.push_back(std::move(c));
        current = std::move(next);
        if (store) out.frames.push_back(current);
        note_frame(current);
    }

    // Advances the frame without materialising intermediate transitions
    // (used to jump across certified loop iterations in sampled mode).
    void jump(const Move& delta, std::int64_t transitions) {
        current = current + delta;
        current.canonicalize();
        index += transitions;
    }
};

Move raise_to(const Move& frame, const std::set<Move::Key>& keep, double m2, Axis axis) {
    // Move every kept-out point's x (horizontal) or y (vertical) coordinate
    // up to m2; returns the transition difference.
    Move diff;
    for (const auto& [k, w] : frame.points()) {
        if (w <= 0.0 || keep.count(k)) continue;
        if (axis == Axis::Horizontal) {
            if (k.first >= m2) continue;
            diff.add(k.first, k.second, -w);
            diff.add(m2, k.second, w);
        } else {
            if (k.second >= m2) continue;
            diff.add(k.first, k.second, -w);
            diff.add(k.first, m2, w);
        }
    }
    return diff;
}

}  // namespace

TdpgExpansion expand_tdpg(const Move& h_star, const Move& v_star,
                          const BoundaryDecomposition& d, const ConversionParams& p,
                          double lambda, Materialize mode,
                          const std::vector<std::int64_t>& sample_ks, std::int64_t loop_cap,
                          double tol) {
    Builder b;
    b.tol = tol;
    b.out.sampled = (mode == Materialize::Sampled);
    b.out.support_bound = support_count_union(h_star, v_star);
    b.out.gamma = p.eta2;
    b.out.scale = 1.0 - p.eta1;

    const double m1 = p.m1, m2 = p.m2, w1 = p.w1, w2 = p.w2;
    const double dt = p.delta_sfix + p.delta_clyst;
    const Boundary bdy = Boundary::symmetric(lambda, 0.0);  // epsilon folded into (beta, alpha)
    const double L = lambda, L1 = lambda + 1.0;

    auto [h_plus, h_minus] = split_signs(h_star);
    Configuration catalyst = h_minus;
    catalyst *= 1.0 / l1_norm(h_minus);

    // Combined conversion target created from the (m1, m1) pile.
    Configuration tgt;
    if (d.eps1 > 0.0) {
        Configuration se = d.s_error;
        se *= p.delta_sfix * p.c1;
        tgt += se;
    }
    {
        Configuration hc = catalyst;
        hc *= p.delta_clyst * p.c1;
        tgt += hc;
    }
    const double tgt_mass = total_weight(tgt);  // = dt * c1

    // --- prologue: six alternating transitions ---
    Move s_ideal;
    s_ideal.add(L, L1, 0.5);
    s_ideal.add(L1, L, 0.5);
    b.start(s_ideal);

    const double half = 0.5 * dt;
    Move t1;
    t1.add(L1, L, -half);
    t1.add(m1, L, half * w1);
    t1.add(m2, L, half * (1.0 - w1));
    b.step(t1, Axis::Horizontal, "prologue/split-x");

    Move t2;
    t2.add(m1, L, -half * w1);
    t2.add(m1, m1, half * w1 * w2);
    t2.add(m1, m2, half * w1 * (1.0 - w2));
    t2.add(m2, L, -half * (1.0 - w1));
    t2.add(m2, m2, half * (1.0 - w1));
    t2.add(L, L1, -half);
    t2.add(L, m1, half * w1);
    t2.add(L, m2, half * (1.0 - w1));
    b.step(t2, Axis::Vertical, "prologue/split-y");

    Move t3;
    t3.add(L, m1, -half * w1);
    t3.add(m1, m1, half * w1 * w2);
    t3.add(m2, m1, half * w1 * (1.0 - w2));
    t3.add(L, m2, -half * (1.0 - w1));
    t3.add(m2, m2, half * (1.0 - w1));
    t3.add(m1, m2, -half * w1 * (1.0 - w2));
    t3.add(m2, m2, half * w1 * (1.0 - w2));
    b.step(t3, Axis::Horizontal, "prologue/split-x-mirror");

    Move t4;
    t4.add(m2, m1, -half * w1 * (1.0 - w2));
    t4.add(m2, m2, half * w1 * (1.0 - w2));
    b.step(t4, Axis::Vertical, "prologue/raise");

    // Conversion of the (m1, m1) pile into s_error and the catalyst.
    std::map<double, double> xmass;
    for (const auto& [k, w] : tgt.points()) xmass[k.first] += w;
    Move t5;
    t5.add(m1, m1, -tgt_mass);
    for (const auto& [x, w] : xmass) t5.add(x, m1, w);
    b.step(t5, Axis::Horizontal, "prologue/convert-x");

    Move t6;
    for (const auto& [x, w] : xmass) t6.add(x, m1, -w);
    t6 += tgt;
    b.step(t6, Axis::Vertical, "prologue/convert-y");

    // --- catalyst loop ---
    const double gamma = p.eta2;
    const double scl = 1.0 - p.eta1;
    const std::int64_t m = static_cast<std::int64_t>(std::floor(1.0 / gamma));
    b.out.loop_iterations = m;
    b.out.delta1 = 1.0 - static_cast<double>(m) * gamma;
    if (mode == Materialize::All && 2 * m > loop_cap)
        throw std::runtime_error("expand_tdpg: loop length exceeds the materialisation cap");

    // Loop moves in the mass-1 normalisation of the game.
    Move h_move = h_star;
    h_move *= gamma * scl / d.mass;
    Move v_move = v_star;
    v_move *= gamma * scl / d.mass;
    Move es = d.e_actual - d.s_actual;  // equals h + v entrywise
    es *= gamma * scl / d.mass;

    if (mode == Materialize::All) {
        for (std::int64_t k = 0; k < m; ++k) {
            const bool store = k < 2 || k >= m - 2;
            b.step(h_move, Axis::Horizontal, "loop/h", store);
            b.step(v_move, Axis::Vertical, "loop/v", store);
        }
    } else {
        std::set<std::int64_t> ks = {0, 1, m - 1};
        for (std::int64_t k : sample_ks) ks.insert(k);
        std::int64_t done = 0;
        for (std::int64_t k : ks) {
            if (k < 0 || k >= m || k < done) continue;
            if (k > done) {
                Move skip = es;
                skip *= static_cast<double>(k - done);
                b.jump(skip, 2 * (k - done));
            }
            b.step(h_move, Axis::Horizontal, "loop/h");
            b.step(v_move, Axis::Vertical, "loop/v");
            done = k + 1;
        }
        if (done < m) {
            Move skip = es;
            skip *= static_cast<double>(m - done);
            b.jump(skip, 2 * (m - done));
            b.out.frames.push_back(b.current);
            b.note_frame(b.current);
        }
    }

    // --- endgame: raises to (m2, m2), then the four-step final merge ---
    const double beta = d.beta, alpha = d.alpha;
    const std::set<Move::Key> keep = {{beta, alpha}, {m2, m2}};
    b.step(raise_to(b.current, keep, m2, Axis::Horizontal), Axis::Horizontal, "endgame/raise-x");
    b.step(raise_to(b.current, keep, m2, Axis::Vertical), Axis::Vertical, "endgame/raise-y");

    const double delta_eff = std::max(0.0, 1.0 - b.current.at(beta, alpha));
    b.out.delta_eff = delta_eff;
    const double err = std::sqrt(delta_eff * (m2 - alpha) * (m2 - beta));
    b.out.err = err;
    const double dp = err / (m2 - beta) * (1.0 - err / (m2 - alpha));

    Move e3;
    e3.add(beta, alpha, -dp);
    e3.add(m2, alpha, dp);
    b.step(e3, Axis::Horizontal, "endgame/merge-raise");

    // Merge weights are read off the live frame so the averages are exact.
    {
        const double dpv = b.current.at(m2, alpha);
        const double q = b.current.at(m2, m2);
        const double rest = b.current.at(beta, alpha);
        const double merged_y = q > 0.0 ? (dpv * alpha + q * m2) / (dpv + q) : alpha;
        Move e4;
        e4.add(m2, alpha, -dpv);
        e4.add(m2, m2, -q);
        e4.add(m2, merged_y, dpv + q);
        e4.add(beta, alpha, -rest);
        e4.add(beta, merged_y, rest);
        b.step(e4, Axis::Vertical, "endgame/merge-1");

        const double a_m2 = b.current.at(m2, merged_y);
        const double a_beta = b.current.at(beta, merged_y);
        const double merged_x =
            a_m2 > 0.0 ? (a_m2 * m2 + a_beta * beta) / (a_m2 + a_beta) : beta;
        Move e5;
        e5.add(m2, merged_y, -a_m2);
        e5.add(beta, merged_y, -a_beta);
        e5.add(merged_x, merged_y, a_m2 + a_beta);
        b.step(e5, Axis::Horizontal, "endgame/merge-2");

        b.out.final_x = merged_x;
        b.out.final_y = merged_y;
    }

    b.out.total_transitions = 6 + 2 * m + 5;

    // Final frame must collapse to the single merged point.
    std::size_t fin_support = 0;
    for (const auto& [k, w] : b.current.points())
        if (std::abs(w) > tol) ++fin_support;
    if (fin_support != 1) b.out.all_valid = false;
    return b.out;
}

}  // namespace penwcf

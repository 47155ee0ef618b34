#include "penwcf/qp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>
#include <limits>

namespace penwcf {

namespace {

// Exact solve on an active set seeded from the ADMM iterate, refined by
// adding violated rows and dropping wrong-sign multipliers. Returns true
// when the polished point satisfies the KKT conditions to tol.
bool polish(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
            const Eigen::VectorXd& lb, const Eigen::VectorXd& ub, const Eigen::VectorXd& z,
            const Eigen::VectorXd& y, double tol, QpResult& out) {
    const Eigen::Index n = Q.rows(), m = A.rows();
    // side: 0 equality (always active), -1 active at lb, +1 active at ub,
    // anything else inactive.
    std::vector<int> side(m, 2);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (lb(i) == ub(i))
            side[i] = 0;
        else if (std::abs(z(i) - lb(i)) < 1e-6 * std::max(1.0, std::abs(lb(i))) && y(i) < 0.0)
            side[i] = -1;
        else if (std::isfinite(ub(i)) &&
                 std::abs(z(i) - ub(i)) < 1e-6 * std::max(1.0, std::abs(ub(i))) && y(i) > 0.0)
            side[i] = +1;
    }
    // Mini active-set refinement: single most-violated add, then single
    // worst wrong-sign drop, until the KKT conditions hold or the cap.
    for (int round = 0; round < 64; ++round) {
        std::vector<Eigen::Index> act;
        for (Eigen::Index i = 0; i < m; ++i)
            if (side[i] != 2) act.push_back(i);
        const Eigen::Index k = static_cast<Eigen::Index>(act.size());
        Eigen::MatrixXd KKT = Eigen::MatrixXd::Zero(n + k, n + k);
        KKT.topLeftCorner(n, n) = Q;
        Eigen::VectorXd rhs(n + k);
        rhs.head(n) = -c;
        for (Eigen::Index i = 0; i < k; ++i) {
            KKT.block(n + i, 0, 1, n) = A.row(act[i]);
            KKT.block(0, n + i, n, 1) = A.row(act[i]).transpose();
            rhs(n + i) = side[act[i]] == +1 ? ub(act[i]) : lb(act[i]);
        }
        const Eigen::VectorXd sol = KKT.fullPivLu().solve(rhs);
        const Eigen::VectorXd x = sol.head(n);
        Eigen::VectorXd ypol = Eigen::VectorXd::Zero(m);
        for (Eigen::Index i = 0; i < k; ++i) ypol(act[i]) = sol(n + i);
        const Eigen::VectorXd Ax = A * x;

        // Largest-violation selection, falling back to Bland's smallest
        // index after many rounds to break degenerate cycles.
        const bool bland = round >= 40;
        Eigen::Index pick_violated = -1;
        int violated_side = 0;
        double worst_violation = 0.25 * tol;
        Eigen::Index pick_wrong = -1;
        double worst_wrong = 1e-11;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (side[i] == 0) continue;
            const double s = std::max(1.0, std::abs(lb(i)) +
                                               (std::isfinite(ub(i)) ? std::abs(ub(i)) : 0.0));
            if (side[i] == 2) {
                const double v_lo = (lb(i) - Ax(i)) / s;
                const double v_hi = std::isfinite(ub(i)) ? (Ax(i) - ub(i)) / s : -1.0;
                const int this_side = v_lo >= v_hi ? -1 : +1;
                const double v = std::max(v_lo, v_hi);
                const bool better = bland ? (v > 0.25 * tol && pick_violated < 0)
                                          : (v > worst_violation);
                if (better) {
                    worst_violation = v;
                    pick_violated = i;
                    violated_side = this_side;
                }
            } else {
                const double w = side[i] == -1 ? ypol(i) : -ypol(i);
                const bool better = bland ? (w > 1e-11 && pick_wrong < 0) : (w > worst_wrong);
                if (better) {
                    worst_wrong = w;
                    pick_wrong = i;
                }
            }
        }
        if (pick_violated >= 0) {
            side[pick_violated] = violated_side;
            continue;
        }
        if (pick_wrong >= 0) {
            side[pick_wrong] = 2;
            continue;
        }
        const double rd = (Q * x + c + A.transpose() * ypol).lpNorm<Eigen::Infinity>();
        double rp = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double v = Ax(i);
            rp = std::max(rp, std::max(lb(i) - v, std::isfinite(ub(i)) ? v - ub(i) : 0.0));
        }
        if (rp > tol || rd > tol) return false;
        out.x = x;
        out.dual = ypol;
        out.primal_residual = rp;
        out.dual_residual = rd;
        out.converged = true;
        return true;
    }
    return false;
}

}  // namespace

QpResult qp_solve(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& lb, const Eigen::VectorXd& ub, const QpSettings& st,
                  const std::optional<Eigen::VectorXd>& warm_start) {
    const Eigen::Index n = Q.rows();
    const Eigen::Index m = A.rows();
    if (Q.cols() != n || c.size() != n || (m > 0 && A.cols() != n) || lb.size() != m ||
        ub.size() != m)
        throw std::invalid_argument("qp_solve: dimension mismatch");

    if (m == 0) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(Q);
        QpResult r;
        if (ldlt.info() == Eigen::Success) {
            r.x = ldlt.solve(-c);
        } else {
            Eigen::LDLT<Eigen::MatrixXd> reg(Q + st.sigma * Eigen::MatrixXd::Identity(n, n));
            r.x = reg.solve(-c);
        }
        r.converged = true;
        return r;
    }

    double rho_base = st.rho;
    auto rho_of = [&](Eigen::Index i) {
        return (lb(i) == ub(i)) ? rho_base * st.rho_eq_scale : rho_base;
    };
    Eigen::VectorXd rho(m);
    for (Eigen::Index i = 0; i < m; ++i) rho(i) = rho_of(i);

    auto factor = [&]() {
        Eigen::MatrixXd KKT = Q + st.sigma * Eigen::MatrixXd::Identity(n, n);
        KKT.noalias() += A.transpose() * rho.asDiagonal() * A;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(KKT);
        if (ldlt.info() != Eigen::Success)
            throw std::invalid_argument("qp_solve: KKT factorisation failed (Q not PSD?)");
        return ldlt;
    };
    Eigen::LDLT<Eigen::MatrixXd> ldlt = factor();

    Eigen::VectorXd x = warm_start ? *warm_start : Eigen::VectorXd::Zero(n);
    Eigen::VectorXd z = (A * x).cwiseMax(lb).cwiseMin(ub);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

    QpResult r;
    for (int it = 1; it <= st.max_iterations; ++it) {
        const Eigen::VectorXd rhs =
            st.sigma * x - c + A.transpose() * (rho.asDiagonal() * z - y);
        x = ldlt.solve(rhs);
        const Eigen::VectorXd Ax = A * x;
        const Eigen::VectorXd Ax_rel = st.alpha * Ax + (1.0 - st.alpha) * z;
        z = (Ax_rel + rho.cwiseInverse().cwiseProduct(y)).cwiseMax(lb).cwiseMin(ub);
        y += rho.asDiagonal() * (Ax_rel - z);

        if (it % 25 == 0 || it == st.max_iterations) {
            const double rp = (Ax - z).lpNorm<Eigen::Infinity>();
            const double rd = (Q * x + c + A.transpose() * y).lpNorm<Eigen::Infinity>();
            const double sp = std::max(Ax.lpNorm<Eigen::Infinity>(), z.lpNorm<Eigen::Infinity>());
            const double sd = std::max({(Q * x).lpNorm<Eigen::Infinity>(),
                                        c.lpNorm<Eigen::Infinity>(),
                                        (A.transpose() * y).lpNorm<Eigen::Infinity>()});
            if (rp <= st.eps_primal + st.eps_rel * sp && rd <= st.eps_dual + st.eps_rel * sd) {
                r.x = x;
                r.dual = y;
                r.iterations = it;
                r.primal_residual = rp;
                r.dual_residual = rd;
                r.converged = true;
                return r;
            }
            // once the iterate is roughly settled, try the exact solve on
            // the guessed active set, then from the equality-only seed
            if (rp <= 1e-4 && rd <= 1e-4 * std::max(1.0, sd)) {
                QpResult pol;
                if (polish(Q, c, A, lb, ub, z, y, std::max(st.eps_primal, st.eps_dual), pol)) {
                    pol.iterations = it;
                    return pol;
                }
                const Eigen::VectorXd z0 = lb.array() - 1.0;  // seeds nothing active
                if (polish(Q, c, A, lb, ub, z0, Eigen::VectorXd::Zero(m),
                           std::max(st.eps_primal, st.eps_dual), pol)) {
                    pol.iterations = it;
                    return pol;
                }
            }
            // adaptive penalty, OSQP style
            if (it % 200 == 0 && rd > 0.0 && rp > 0.0) {
                const double ratio = std::sqrt(rp / rd);
                if (ratio > 5.0 || ratio < 0.2) {
                    rho_base = std::clamp(rho_base * ratio, 1e-6, 1e6);
                    for (Eigen::Index i = 0; i < m; ++i) rho(i) = rho_of(i);
                    ldlt = factor();
                }
            }
        }
    }
    r.x = x;
    r.dual = y;
    r.iterations = st.max_iterations;
    r.primal_residual = (A * x - z).lpNorm<Eigen::Infinity>();
    r.dual_residual = (Q * x + c + A.transpose() * y).lpNorm<Eigen::Infinity>();
    r.converged = false;
    throw QpError("qp_solve: no convergence after max_iterations", r);
}

QpResult qp_solve_nonneg(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                         const Eigen::MatrixXd& A, const QpSettings& settings) {
    const double inf = std::numeric_limits<double>::infinity();
    const Eigen::VectorXd lb = Eigen::VectorXd::Zero(A.rows());
    const Eigen::VectorXd ub = Eigen::VectorXd::Constant(A.rows(), inf);
    return qp_solve(Q, c, A, lb, ub, settings);
}

}  // namespace penwcf

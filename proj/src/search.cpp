#include "penwcf/search.hpp"
#include <algorithm>

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "penwcf/kernels.hpp"

namespace penwcf {

void SearchConfig::validate() const {
    grid.validate();
    if (boundary.lambda != grid.lambda)
        throw std::invalid_argument("SearchConfig: boundary and grid lambda differ");
    const Move both = boundary.start + boundary.end;
    for (const auto& [k, w] : both.points()) {
        if (grid.index_of(k.first) < 0 || grid.index_of(k.second) < 0)
            throw std::invalid_argument("SearchConfig: boundary coordinate not in S");
    }
    if (norm_penalty < 0.0) throw std::invalid_argument("SearchConfig: norm_penalty < 0");
}

namespace {

Eigen::MatrixXd boundary_matrix(const SearchConfig& cfg) {
    return to_matrix(cfg.boundary.end_minus_start(), cfg.grid);
}

}  // namespace

ProfileMatchResult profile_match(const SearchConfig& cfg, const TruncatedBasis& basis) {
    const GridSpec& g = cfg.grid;
    const Eigen::Index n = g.size();
    const int k = basis.rank;
    const Eigen::MatrixXd E = boundary_matrix(cfg);

    ProfileMatchResult out;
    if (k == 0) {
        out.h = Eigen::MatrixXd::Zero(n, n);
        const Eigen::MatrixXd HT = profile_matrix(g);
        out.objective = (HT * E * HT.transpose()).norm();
        return out;
    }

    // Objective grid includes -1 so that the profile residual also matches
    // the marginal sums (the kernel at -1 is identically 1).
    std::vector<double> Tobj;
    Tobj.reserve(g.T.size() + 1);
    Tobj.push_back(-1.0);
    Tobj.insert(Tobj.end(), g.T.begin(), g.T.end());
    const Eigen::MatrixXd Ho = profile_matrix(g.S, Tobj);
    const Eigen::MatrixXd H = profile_matrix(g);
    const Eigen::MatrixXd& B = basis.zero_sum_basis;  // n x k
    const Eigen::MatrixXd HoB = Ho * B;
    const Eigen::MatrixXd HB = H * B;
    const Eigen::MatrixXd Ehat = Ho * E * Ho.transpose();

    const Eigen::Index m = Ho.rows();
    const Eigen::Index nu = static_cast<Eigen::Index>(k) * n;  // unknowns: U (k x n), u = vec(U)

    // Linear maps u -> vec(P + P^T) and u -> vec(h), built column by column.
    Eigen::MatrixXd L(m * m, nu);
    Eigen::MatrixXd N(n * n, nu);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (int a = 0; a < k; ++a) {
            const Eigen::Index col = j * k + a;
            Eigen::MatrixXd P = HoB.col(a) * Ho.col(j).transpose();  // m x m outer product
            Eigen::MatrixXd R = P + P.transpose();
            L.col(col) = Eigen::Map<Eigen::VectorXd>(R.data(), m * m);
            Eigen::MatrixXd Hm = Eigen::MatrixXd::Zero(n, n);
            Hm.col(j) = B.col(a);
            N.col(col) = Eigen::Map<Eigen::VectorXd>(Hm.data(), n * n);
        }
    }
    const Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(Ehat.data(), m * m);

    Eigen::MatrixXd Q = 2.0 * (L.transpose() * L + cfg.norm_penalty * N.transpose() * N);
    Eigen::VectorXd c = -2.0 * L.transpose() * e;

    // T-validity of every fixed-y line plus the optional weight box.
    const Eigen::Index nt = HB.rows();
    const Eigen::Index box_rows = cfg.weight_bound ? n * n : 0;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n * nt + box_rows, nu);
    const double inf = std::numeric_limits<double>::infinity();
    Eigen::VectorXd lb = Eigen::VectorXd::Constant(A.rows(), 0.0);
    Eigen::VectorXd ub = Eigen::VectorXd::Constant(A.rows(), inf);
    for (Eigen::Index j = 0; j < n; ++j)
        A.block(j * nt, j * k, nt, k) = HB;
    if (cfg.weight_bound) {
        A.block(n * nt, 0, n * n, nu) = N;
        lb.segment(n * nt, n * n).setConstant(-*cfg.weight_bound);
        ub.segment(n * nt, n * n).setConstant(*cfg.weight_bound);
    }

    const QpResult sol = qp_solve(Q, c, A, lb, ub, cfg.qp);
    Eigen::MatrixXd U(k, n);
    for (Eigen::Index j = 0; j < n; ++j) U.col(j) = sol.x.segment(j * k, k);
    out.h = B * U;

    const Eigen::MatrixXd HT = profile_matrix(g);
    const Eigen::MatrixXd Ph = HT * out.h * HT.transpose();
    out.objective = (Ph + Ph.transpose() - HT * E * HT.transpose()).norm();
    return out;
}

Eigen::MatrixXd residual_decompose(const Eigen::MatrixXd& t, const GridSpec& grid) {
    const Eigen::MatrixXd H = profile_matrix(grid);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeFullV);
    const Eigen::MatrixXd& W = svd.matrixV();  // n x n, descending singular values
    const Eigen::MatrixXd C = W.transpose() * t * W;
    Eigen::MatrixXd half = C.triangularView<Eigen::StrictlyLower>();
    half += 0.5 * C.diagonal().asDiagonal();
    return W * half * W.transpose();
}

Eigen::MatrixXd project_valid(const Eigen::MatrixXd& h_prime, const GridSpec& grid,
                              const QpSettings& qp, const std::vector<double>& extra_lambdas) {
    const Eigen::Index n = grid.size();
    std::vector<double> lams = grid.T;
    for (double lam : extra_lambdas)
        if (std::find(lams.begin(), lams.end(), lam) == lams.end()) lams.push_back(lam);
    Eigen::MatrixXd K(lams.size() + 1, n);
    K.topRows(lams.size()) = profile_matrix(grid.S, lams);
    // first-moment row: the lambda -> infinity limit of the profile
    for (Eigen::Index i = 0; i < n; ++i) K(K.rows() - 1, i) = grid.S[i];
    const Eigen::MatrixXd D = diff_operator(grid);
    const Eigen::MatrixXd KD = K * D;
    const Eigen::MatrixXd Q = 2.0 * D.transpose() * D;

    Eigen::MatrixXd Y(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::VectorXd c = -2.0 * D.transpose() * h_prime.col(j);
        const QpResult sol = qp_solve_nonneg(Q, c, KD, qp);
        Y.col(j) = D * sol.x;
    }
    return Y;
}

PenTipg run_search(const SearchConfig& cfg) {
    cfg.validate();
    const GridSpec& g = cfg.grid;
    const TruncatedBasis basis = svd_primed(g);
    const Eigen::MatrixXd E = boundary_matrix(cfg);

    if (basis.rank == 0) {
        // No search directions: the empty game with the full boundary gap.
        PenTipg trivial;
        trivial.lambda = g.lambda;
        trivial.beta = cfg.boundary.end_coordinate();
        trivial.alpha = trivial.beta;
        trivial.eps_approx = l1_norm(cfg.boundary.end_minus_start());
        return trivial;
    }

    auto staged = [](const char* stage, auto&& fn) {
        try {
            return fn();
        } catch (const QpError&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string(stage) + ": " + e.what());
        }
    };

    // Step 2
    const ProfileMatchResult pm =
        staged("profile-match", [&] { return profile_match(cfg, basis); });

    // Step 3: exact configuration matching
    const Eigen::MatrixXd t = E - (pm.h + pm.h.transpose());
    const Eigen::MatrixXd p =
        staged("residual-decompose", [&] { return residual_decompose(t, g); });
    const Eigen::MatrixXd h_prime = pm.h + p;

    // Step 4: projection onto the valid cone, with cutting planes over the
    // dense sweep when requested.
    std::vector<double> cuts;
    Eigen::MatrixXd Y =
        staged("project-valid", [&] { return project_valid(h_prime, g, cfg.qp, cuts); });
    bool dense_ok = false;
    if (cfg.ensure_dense_valid) {
        const std::vector<double> sweep = kernels::dense_lambda_grid();
        const Eigen::MatrixXd K = kernels::kernel_matrix(g.S, sweep);
        for (int round = 0; round < cfg.max_cut_rounds; ++round) {
            Eigen::MatrixXd prof;
            kernels::profile_sweep(K, Y, prof);
            double worst = prof.minCoeff();
            if (worst >= -cfg.cut_tolerance) {
                dense_ok = true;
                break;
            }
            for (Eigen::Index j = 0; j < prof.cols(); ++j) {
                Eigen::Index at;
                if (prof.col(j).minCoeff(&at) < -cfg.cut_tolerance) {
                    const double lam = sweep[at];
                    if (std::find(cuts.begin(), cuts.end(), lam) == cuts.end())
                        cuts.push_back(lam);
                }
            }
            Y = staged("project-valid/cuts",
                       [&] { return project_valid(h_prime, g, cfg.qp, cuts); });
        }
        if (!dense_ok) {
            Eigen::MatrixXd prof;
            kernels::profile_sweep(K, Y, prof);
            dense_ok = prof.minCoeff() >= -cfg.cut_tolerance;
        }
    }

    PenTipg game;
    game.h_star = from_matrix(Y, g);
    game.v_star = transpose(game.h_star);
    game.lambda = g.lambda;
    game.beta = cfg.boundary.end_coordinate();
    game.alpha = cfg.boundary.end_coordinate();
    Move resid = (game.h_star + game.v_star) - cfg.boundary.end_minus_start();
    resid.canonicalize();
    game.eps_approx = l1_norm(resid);
    game.norm = std::max(l1_norm(game.h_star), l1_norm(game.v_star));
    game.point_count = support_count_union(game.h_star, game.v_star);
    game.h_report = check_h_valid(game.h_star, SweepMode::Dense, g.T);
    game.v_report = check_v_valid(game.v_star, SweepMode::Dense, g.T);
    game.t_valid_only = cfg.ensure_dense_valid ? !dense_ok : !game.h_report.all_valid;
    return game;
}

}  // namespace penwcf

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "penwcf/core.hpp"
#include "penwcf/profile.hpp"
#include "penwcf/qp.hpp"
#include "penwcf/validity.hpp"

namespace penwcf {

struct SearchConfig {
    GridSpec grid;
    Boundary boundary;
    QpSettings qp;
    std::optional<double> weight_bound;  // box |h(x,y)| <= M in the profile match
    double norm_penalty = 0.1;           // ridge on the move entries, see profile_match
    bool ensure_dense_valid = true;      // cutting planes until the dense sweep passes
    int max_cut_rounds = 40;
    double cut_tolerance = 1e-11;

    void validate() const;
};

// A solved point game. h_star is horizontally valid, v_star = h_star^T.
struct PenTipg {
    Move h_star;
    Move v_star;
    double lambda = 0.0;
    double eps_approx = 0.0;   // || (h*+v*) - (e-s) ||_1
    double beta = 0.0;         // final point (beta, alpha)
    double alpha = 0.0;
    double norm = 0.0;         // max(||h||_1, ||v||_1)
    std::size_t point_count = 0;
    bool t_valid_only = false;  // dense sweep not certified, T-grid passed
    LineReports h_report;       // dense-sweep horizontal report for h_star
    LineReports v_report;       // dense-sweep vertical report for v_star
};

struct ProfileMatchResult {
    Eigen::MatrixXd h;      // h(i, j) = h(S[i], S[j]); fixed-y lines are columns
    double objective = 0.0; // ||(h^+v^)-(e^-s^)||_{TxT} at the solution
};

// Step 2: minimise the T x T profile residual of h + h^T against e - s over
// moves whose fixed-y lines lie in the truncated zero-sum basis and are
// T-valid. A ridge on the move entries (norm_penalty) and the lambda = -1
// marginal row keep the nearly-unobserved directions from inflating the
// move norm.
ProfileMatchResult profile_match(const SearchConfig& cfg, const TruncatedBasis& basis);

// Step 3: split t = (e-s) - (h+v) into p + q along the singular basis of H;
// p goes to h (row-closeable part), q = t - p to v. Returns p.
Eigen::MatrixXd residual_decompose(const Eigen::MatrixXd& t, const GridSpec& grid);

// Step 4: project each fixed-y line onto the T-valid cone (zero sum enforced
// structurally through the difference basis). extra_lambdas extends the
// profile constraint set (cutting planes).
Eigen::MatrixXd project_valid(const Eigen::MatrixXd& h_prime, const GridSpec& grid,
                              const QpSettings& qp,
                              const std::vector<double>& extra_lambdas = {});

PenTipg run_search(const SearchConfig& cfg);

}  // namespace penwcf

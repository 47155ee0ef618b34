#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>

namespace penwcf {

struct QpSettings {
    int max_iterations = 100000;
    double eps_primal = 1e-12;   // absolute tolerances
    double eps_dual = 1e-12;
    double eps_rel = 1e-12;      // relative part, scaled by the iterate
    double rho = 1.0;            // penalty on inequality rows
    double rho_eq_scale = 1e3;   // equality rows get rho * rho_eq_scale
    double sigma = 1e-6;         // proximal regularisation
    double alpha = 1.6;          // over-relaxation
};

struct QpResult {
    Eigen::VectorXd x;
    Eigen::VectorXd dual;        // multipliers for the constraint rows
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = false;
};

// Thrown on non-convergence; carries the last iterate and residuals.
class QpError : public std::runtime_error {
  public:
    QpError(std::string msg, QpResult last)
        : std::runtime_error(std::move(msg)), last_result(std::move(last)) {}
    QpResult last_result;
};

// Solves  min 1/2 x^T Q x + c^T x   s.t.  lb <= A x <= ub
// with an over-relaxed ADMM splitting (prefactorised KKT solve per
// iteration). Q must be positive semidefinite; equality rows use lb = ub.
QpResult qp_solve(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& lb, const Eigen::VectorXd& ub,
                  const QpSettings& settings = {},
                  const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

// Convenience wrapper for the pure cone form A x >= 0.
QpResult qp_solve_nonneg(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                         const Eigen::MatrixXd& A, const QpSettings& settings = {});

}  // namespace penwcf

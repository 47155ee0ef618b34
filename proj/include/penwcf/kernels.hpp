#pragma once

#include <Eigen/Dense>
#include <vector>

// Hot inner loops shared by the validity sweeps and the QP solver.
// Each kernel has a serial reference implementation and an OpenMP variant
// that writes disjoint outputs, so both are bitwise deterministic.

namespace penwcf::kernels {

// Profile kernel P_x(lambda):
//   x > 0 : lambda*x/(lambda+x) for lambda > 0, else 1
//   x = 0 : 0 for lambda >= 0, else 1
inline double profile_kernel(double x, double lambda) {
    if (x > 0.0) return lambda > 0.0 ? lambda * x / (lambda + x) : 1.0;
    return lambda >= 0.0 ? 0.0 : 1.0;
}

// Logarithmic lambda grid used by the dense validity sweep.
std::vector<double> dense_lambda_grid(double lo = 1e-6, double hi = 1e6, int n = 601);

// K(t, i) = P_{S[i]}(lambdas[t])
Eigen::MatrixXd kernel_matrix(const std::vector<double>& S, const std::vector<double>& lambdas);

// out(t, j) = sum_i K(t, i) * lines(i, j): profile of every column of
// `lines` at every lambda of the grid. Columns are independent 1-d moves.
void profile_sweep_serial(const Eigen::MatrixXd& K, const Eigen::MatrixXd& lines,
                          Eigen::MatrixXd& out);
void profile_sweep_parallel(const Eigen::MatrixXd& K, const Eigen::MatrixXd& lines,
                            Eigen::MatrixXd& out);

// y = A*x with the parallel loop over output rows.
void matvec_serial(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y);
void matvec_parallel(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y);

// Dispatches to the parallel variant when OpenMP is enabled and the problem
// is large enough to amortise the fork.
void profile_sweep(const Eigen::MatrixXd& K, const Eigen::MatrixXd& lines, Eigen::MatrixXd& out);

}  // namespace penwcf::kernels

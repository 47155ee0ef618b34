#include "penwcf/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace penwcf::kernels {

std::vector<double> dense_lambda_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        g[i] = std::pow(10.0, llo + (lhi - llo) * i / double(n - 1));
    return g;
}

Eigen::MatrixXd kernel_matrix(const std::vector<double>& S, const std::vector<double>& lambdas) {
    Eigen::MatrixXd K(lambdas.size(), S.size());
    for (Eigen::Index t = 0; t < K.rows(); ++t)
        for (Eigen::Index i = 0; i < K.cols(); ++i)
            K(t, i) = profile_kernel(S[i], lambdas[t]);
    return K;
}

void profile_sweep_serial(const Eigen::MatrixXd& K, const Eigen::MatrixXd& lines,
                          Eigen::MatrixXd& out) {
    out.resize(K.rows(), lines.cols());
    for (Eigen::Index t = 0; t < K.rows(); ++t)
        for (Eigen::Index j = 0; j < lines.cols(); ++j) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < K.cols(); ++i) acc += K(t, i) * lines(i, j);
            out(t, j) = acc;
        }
}

void profile_sweep_parallel(const Eigen::MatrixXd& K, const Eigen::MatrixXd& lines,
                            Eigen::MatrixXd& out) {
    out.resize(K.rows(), lines.cols());
    const Eigen::Index T = K.rows(), n = K.cols(), m = lines.cols();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (Eigen::Index t = 0; t < T; ++t)
        for (Eigen::Index j = 0; j < m; ++j) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) acc += K(t, i) * lines(i, j);
            out(t, j) = acc;
        }
}

void matvec_serial(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.resize(A.rows());
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < A.cols(); ++c) acc += A(r, c) * x(c);
        y(r) = acc;
    }
}

void matvec_parallel(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.resize(A.rows());
    const Eigen::Index R = A.rows(), C = A.cols();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (Eigen::Index r = 0; r < R; ++r) {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < C; ++c) acc += A(r, c) * x(c);
        y(r) = acc;
    }
}

void profile_sweep(const Eigen::MatrixXd& K, const Eigen::MatrixXd& lines, Eigen::MatrixXd& out) {
#ifdef _OPENMP
    if (K.rows() * lines.cols() >= 4096) {
        profile_sweep_parallel(K, lines, out);
        return;
    }
#endif
    profile_sweep_serial(K, lines, out);
}

}  // namespace penwcf::kernels

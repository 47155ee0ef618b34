// Times the serial reference kernels against the OpenMP variants on the
// shapes the library actually runs: dense validity sweeps over many lines
// and the QP matrix products.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "penwcf/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace penwcf;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 20;
#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled\n");
#endif

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    // Sweep shape: 601 lambdas x 64 grid points, 128 lines.
    std::vector<double> S(64);
    for (int i = 0; i < 64; ++i) S[i] = 0.05 * (i + 1);
    const auto lambdas = kernels::dense_lambda_grid();
    const Eigen::MatrixXd K = kernels::kernel_matrix(S, lambdas);
    Eigen::MatrixXd lines(64, 128);
    for (int i = 0; i < lines.size(); ++i) lines.data()[i] = uni(rng);

    Eigen::MatrixXd out_s, out_p;
    const double t_serial =
        time_ms([&] { kernels::profile_sweep_serial(K, lines, out_s); }, reps);
    const double t_par =
        time_ms([&] { kernels::profile_sweep_parallel(K, lines, out_p); }, reps);
    const double sweep_diff = (out_s - out_p).cwiseAbs().maxCoeff();
    std::printf("profile_sweep  601x64x128 : serial %8.3f ms | parallel %8.3f ms | "
                "speedup %.2fx | max diff %.1e\n",
                t_serial, t_par, t_serial / t_par, sweep_diff);

    // Matvec shape: 700 x 120 (projection QP constraint block).
    Eigen::MatrixXd A(700, 120);
    for (int i = 0; i < A.size(); ++i) A.data()[i] = uni(rng);
    Eigen::VectorXd x(120);
    for (int i = 0; i < x.size(); ++i) x(i) = uni(rng);
    Eigen::VectorXd ys, yp;
    const double mv_serial = time_ms([&] { kernels::matvec_serial(A, x, ys); }, reps * 10);
    const double mv_par = time_ms([&] { kernels::matvec_parallel(A, x, yp); }, reps * 10);
    const double mv_diff = (ys - yp).cwiseAbs().maxCoeff();
    std::printf("matvec         700x120    : serial %8.3f ms | parallel %8.3f ms | "
                "speedup %.2fx | max diff %.1e\n",
                mv_serial, mv_par, mv_serial / mv_par, mv_diff);
    return 0;
}

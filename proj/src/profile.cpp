#include "penwcf/profile.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

#include "penwcf/kernels.hpp"

namespace penwcf {

void GridSpec::validate() const {
    if (S.size() < 2) throw std::invalid_argument("GridSpec: |S| must be >= 2");
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (S[i] < 0.0) throw std::invalid_argument("GridSpec: negative coordinate in S");
        if (i > 0 && S[i] <= S[i - 1])
            throw std::invalid_argument("GridSpec: S must be strictly increasing");
    }
    if (delta <= 0.0) throw std::invalid_argument("GridSpec: delta must be > 0");
    if (truncation && (*truncation < 0 || *truncation > static_cast<int>(S.size()) - 1))
        throw std::invalid_argument("GridSpec: truncation out of range");
    if (lambda < 0.0) throw std::invalid_argument("GridSpec: lambda must be >= 0");
}

int GridSpec::index_of(double coord) const {
    for (std::size_t i = 0; i < S.size(); ++i)
        if (S[i] == coord) return static_cast<int>(i);
    return -1;
}

double profile_kernel(double x, double lambda) { return kernels::profile_kernel(x, lambda); }

double profile_1d(const std::vector<double>& coords, const std::vector<double>& weights,
                  double lambda) {
    double acc = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i)
        acc += weights[i] * kernels::profile_kernel(coords[i], lambda);
    return acc;
}

double profile_2d(const Move& m, double a, double b) {
    double acc = 0.0;
    for (const auto& [k, w] : m.points())
        acc += w * kernels::profile_kernel(k.first, a) * kernels::profile_kernel(k.second, b);
    return acc;
}

Eigen::MatrixXd to_matrix(const Move& m, const GridSpec& g) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(g.size(), g.size());
    for (const auto& [k, w] : m.points()) {
        const int i = g.index_of(k.first);
        const int j = g.index_of(k.second);
        if (i < 0 || j < 0) throw std::invalid_argument("to_matrix: point off the grid");
        M(i, j) += w;
    }
    return M;
}

Move from_matrix(const Eigen::MatrixXd& M, const GridSpec& g, double drop_below) {
    Move m;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (std::abs(M(i, j)) > drop_below) m.add(g.S[i], g.S[j], M(i, j));
    m.canonicalize();
    return m;
}

Eigen::MatrixXd diff_operator(const GridSpec& g) {
    const Eigen::Index n = g.size();
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n - 1);
    D(0, 0) = 1.0;
    for (Eigen::Index j = 1; j < n - 1; ++j) {
        D(j, j) = 1.0;
        D(j, j - 1) = -1.0;
    }
    D(n - 1, n - 2) = -1.0;
    return D;
}

Eigen::MatrixXd profile_matrix(const std::vector<double>& S, const std::vector<double>& T) {
    return kernels::kernel_matrix(S, T);
}

Eigen::MatrixXd profile_matrix(const GridSpec& g) { return profile_matrix(g.S, g.T); }

TruncatedBasis svd_primed(const GridSpec& g) {
    g.validate();
    const Eigen::MatrixXd H = profile_matrix(g);
    const Eigen::MatrixXd D = diff_operator(g);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(H * D, Eigen::ComputeThinU | Eigen::ComputeThinV);
    TruncatedBasis out;
    out.singular_values = svd.singularValues();
    out.right_vectors = svd.matrixV();
    if (g.truncation) {
        out.rank = *g.truncation;
    } else {
        int k = 0;
        while (k < out.singular_values.size() && out.singular_values(k) >= g.delta) ++k;
        out.rank = k;
    }
    out.zero_sum_basis = D * out.right_vectors.leftCols(out.rank);
    return out;
}

}  // namespace penwcf

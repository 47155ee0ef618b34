#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "penwcf/core.hpp"

namespace penwcf {

// Search discretisation: coordinate grid S, profile-parameter set T,
// SVD truncation, and the cheat penalty.
struct GridSpec {
    std::vector<double> S;             // strictly increasing, >= 0
    std::vector<double> T;             // profile parameters (without -1)
    double delta = 1e-6;               // singular-value threshold
    std::optional<int> truncation;     // explicit rank override
    double lambda = 0.0;               // cheat penalty

    void validate() const;
    int index_of(double coord) const;  // exact match; -1 if absent
    Eigen::Index size() const { return static_cast<Eigen::Index>(S.size()); }
};

double profile_kernel(double x, double lambda);
double profile_1d(const std::vector<double>& coords, const std::vector<double>& weights,
                  double lambda);
double profile_2d(const Move& m, double a, double b);

// Matrix view of a move on S x S with M(i, j) = f(S[i], S[j]).
Eigen::MatrixXd to_matrix(const Move& m, const GridSpec& g);
Move from_matrix(const Eigen::MatrixXd& M, const GridSpec& g, double drop_below = 0.0);

// D : R^(S \ {s_l}) -> R^S, cumulative-difference map whose image is the
// zero-sum subspace:
//   D_f(s_1) = f(s_1), D_f(s_j) = f(s_j) - f(s_{j-1}), D_f(s_l) = -f(s_{l-1}).
Eigen::MatrixXd diff_operator(const GridSpec& g);

// H : R^S -> R^T, H(t, i) = P_{S[i]}(T[t]).
Eigen::MatrixXd profile_matrix(const GridSpec& g);
Eigen::MatrixXd profile_matrix(const std::vector<double>& S, const std::vector<double>& T);

struct TruncatedBasis {
    Eigen::VectorXd singular_values;  // of H' = H*D, descending
    Eigen::MatrixXd right_vectors;    // right singular vectors of H', columns
    int rank = 0;                     // retained count
    Eigen::MatrixXd zero_sum_basis;   // D * right_vectors.leftCols(rank), n x rank
};

// SVD of H' = H o D truncated at delta (or at the explicit rank).
TruncatedBasis svd_primed(const GridSpec& g);

}  // namespace penwcf

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "penwcf/kernels.hpp"
#include "penwcf/validity.hpp"
#include "test_support.hpp"

using namespace penwcf;
using namespace testsupport;

TEST_SUITE_BEGIN("validity");

namespace {

// Independent oracle for 1-d validity of a zero-sum move: g(lam) =
// -sum f(x)/(lam+x) is rational with poles only at lam = -x <= 0, so on
// (0, inf) its sign can only change at real roots of the numerator
// polynomial P(lam) = -sum_i f_i prod_{j != i} (lam + x_j). The oracle
// finds the roots via the companion matrix and tests g between them.
bool brute_force_valid(const std::vector<double>& xs, const std::vector<double>& ws) {
    const int n = static_cast<int>(xs.size());
    double sum = 0.0, fm = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += ws[i];
        fm += ws[i] * xs[i];
    }
    if (std::abs(sum) > 1e-12) return false;
    if (fm < -1e-12) return false;
    // numerator coefficients, ascending degree
    std::vector<double> poly(n, 0.0);
    for (int i = 0; i < n; ++i) {
        std::vector<double> term = {1.0};
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<double> next(term.size() + 1, 0.0);
            for (std::size_t k = 0; k < term.size(); ++k) {
                next[k] += term[k] * xs[j];
                next[k + 1] += term[k];
            }
            term = next;
        }
        for (std::size_t k = 0; k < term.size(); ++k) poly[k] -= ws[i] * term[k];
    }
    while (poly.size() > 1 && std::abs(poly.back()) < 1e-14) poly.pop_back();
    std::vector<double> probes = {1e-9, 1e-3, 1.0, 1e3, 1e9};
    const int deg = static_cast<int>(poly.size()) - 1;
    if (deg >= 1) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -poly[i] / poly[deg];
        for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
        const Eigen::VectorXcd roots = companion.eigenvalues();
        std::vector<double> real_pos;
        for (int i = 0; i < roots.size(); ++i)
            if (std::abs(roots(i).imag()) < 1e-9 && roots(i).real() > 0.0)
                real_pos.push_back(roots(i).real());
        std::sort(real_pos.begin(), real_pos.end());
        for (std::size_t i = 0; i + 1 < real_pos.size(); ++i)
            probes.push_back(0.5 * (real_pos[i] + real_pos[i + 1]));
        for (double r : real_pos) {
            probes.push_back(r * 0.5);
            probes.push_back(r * 2.0);
        }
    }
    for (double lam : probes) {
        double g = 0.0;
        for (int i = 0; i < n; ++i) g += -ws[i] / (lam + xs[i]);
        if (g < -1e-10) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("one-dimensional checks") {
    CHECK(check_valid_1d({}, {}, SweepMode::Dense, {}).is_valid);

    // merge move: always valid
    ValidityReport merge =
        check_valid_1d({1.0, 0.0, 2.0}, {1.0, -0.5, -0.5}, SweepMode::Dense, {});
    CHECK(merge.is_valid);

    // reverse split: invalid, profile at lambda = 1 is -1/6
    ValidityReport rev =
        check_valid_1d({0.0, 2.0, 1.0}, {0.5, 0.5, -1.0}, SweepMode::Dense, {});
    CHECK_FALSE(rev.is_valid);
    CHECK(rev.worst_value <= -1.0 / 6 + 1e-3);
}

TEST_CASE("eta-approximate validity") {
    const double eta = 1e-3;
    // any valid move stays eta-valid
    CHECK(check_eta_valid({1.0, 0.0, 2.0}, {1.0, -0.5, -0.5}, eta));
    // f = -eta/2 [[1]] is eta-valid but not valid
    CHECK(check_eta_valid({1.0}, {-eta / 2}, eta));
    CHECK_FALSE(check_valid_1d({1.0}, {-eta / 2}, SweepMode::Dense, {}, 1e-10).is_valid);
    // f = -2 eta [[1]] is not eta-valid
    CHECK_FALSE(check_eta_valid({1.0}, {-2 * eta}, eta));
}

TEST_CASE("transition checks") {
    Configuration g = point(1.0, 1.0, 0.5) + point(3.0, 1.0, 0.5);
    SUBCASE("identity") {
        CHECK(check_transition(g, g, Axis::Horizontal).is_valid);
        CHECK(check_transition(g, g, Axis::Vertical).is_valid);
    }
    SUBCASE("merge to the weighted average") {
        Configuration h = point(2.0, 1.0, 1.0);
        CHECK(check_transition(g, h, Axis::Horizontal).is_valid);
        // the same merge read vertically moves mass across x-lines: invalid
        CHECK_FALSE(check_transition(g, h, Axis::Vertical).is_valid);
    }
    SUBCASE("raise") {
        Configuration h = point(1.0, 1.0, 0.5) + point(5.0, 1.0, 0.5);
        CHECK(check_transition(g, h, Axis::Horizontal).is_valid);
    }
    SUBCASE("lowering is invalid") {
        Configuration h = point(0.5, 1.0, 0.5) + point(3.0, 1.0, 0.5);
        CHECK_FALSE(check_transition(g, h, Axis::Horizontal).is_valid);
    }
}

TEST_CASE("split feasibility") {
    CHECK(split_feasible(1.0, {{2.0 / 3.0, 0.5}, {2.0, 0.5}}));  // boundary case
    CHECK(split_feasible(1.0, {{1.0, 1.0}}));
    CHECK_FALSE(split_feasible(1.0, {{0.5, 0.5}, {2.0, 0.5}}));
}

TEST_CASE("golden matrices: columns nearly valid at print precision only") {
    // The printed matrices are the pre-projection moves: their lines are
    // approximately valid at the 1e-2 scale, far outside the golden tier.
    const Move v1 = golden_v(kGame1);
    LineReports rep = check_v_valid(v1, SweepMode::Grid, kGame1.T, kGoldenTol);
    CHECK(rep.worst_value == doctest::Approx(-0.002170561).epsilon(1e-3));
    CHECK(rep.worst_sum == doctest::Approx(0.011292).epsilon(1e-3));
    CHECK_FALSE(rep.all_valid);
}

TEST_CASE("transpose duality") {
    Rng rng(23);
    for (int rep = 0; rep < 30; ++rep) {
        Move m;
        for (int i = 0; i < 8; ++i)
            m.add(rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0), rng.uniform(-1.0, 1.0));
        const LineReports h = check_h_valid(m, SweepMode::Dense, {});
        const LineReports v = check_v_valid(transpose(m), SweepMode::Dense, {});
        CHECK(h.all_valid == v.all_valid);
        CHECK(h.worst_value == doctest::Approx(v.worst_value).epsilon(1e-12));
    }
}

TEST_CASE("scaling and background invariance") {
    Rng rng(29);
    int checked = 0;
    for (int rep = 0; rep < 300; ++rep) {
        // random zero-sum move on a random horizontal line
        const int n = rng.uniform_int(2, 5);
        Move m;
        double sum = 0.0;
        const double y = rng.uniform(0.1, 2.0);
        std::vector<double> xs;
        for (int i = 0; i < n - 1; ++i) {
            const double x = rng.uniform(0.1, 4.0);
            const double w = rng.uniform(-0.5, 0.5);
            m.add(x, y, w);
            sum += w;
            xs.push_back(x);
        }
        double xl = rng.uniform(0.1, 4.0);
        m.add(xl, y, -sum);
        const bool valid = check_h_valid(m, SweepMode::Dense, {}).all_valid;
        // scaling by c > 0 never changes validity
        Move scaled = m;
        scaled *= rng.uniform(0.1, 10.0);
        CHECK(check_h_valid(scaled, SweepMode::Dense, {}).all_valid == valid);
        if (!valid) continue;
        ++checked;
        // adding a nonnegative background preserves transition validity
        Configuration zeta;
        for (int i = 0; i < 3; ++i)
            zeta.add(rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0), rng.uniform(0.0, 1.0));
        auto [pos, neg] = split_signs(m);
        Configuration from = neg + zeta;
        Configuration to = pos + zeta;
        CHECK(check_transition(from, to, Axis::Horizontal).is_valid);
    }
    CHECK(checked > 10);
}

TEST_CASE("dense sweep agrees with the pole-interval oracle") {
    Rng rng(31);
    int disagreements = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = rng.uniform_int(2, 5);
        std::vector<double> xs(n), ws(n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            xs[i] = rng.uniform(0.05, 5.0);
            ws[i] = rng.uniform(-1.0, 1.0);
            sum += ws[i];
        }
        ws[n - 1] -= sum;
        const bool sweep = check_valid_1d(xs, ws, SweepMode::Dense, {}, 1e-9).is_valid;
        const bool oracle = brute_force_valid(xs, ws);
        if (sweep != oracle) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_SUITE_END();

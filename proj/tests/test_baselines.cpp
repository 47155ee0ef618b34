#include <doctest.h>

#include <cmath>

#include "penwcf/baselines.hpp"
#include "test_support.hpp"

using namespace penwcf;

TEST_SUITE_BEGIN("baselines");

namespace {
double H_L(double z, double L) { return L * (L - 2 * z) + 2 * z * z * std::log1p(L / z); }
}  // namespace

TEST_CASE("spekkens-rudolph at lambda = 0 recovers the classic bias") {
    const BaselineResult r = sr_solve(0.0);
    CHECK(r.bias == doctest::Approx(1.0 / std::sqrt(2.0) - 0.5).epsilon(1e-3));
    CHECK(r.rounds == 8);
    CHECK(r.qubits == 6);
}

TEST_CASE("spekkens-rudolph chain replays through the oracle") {
    // sr_solve throws if any of the four transitions fails the oracle
    for (double L : {0.0, 0.5, 1.0, 6.0}) CHECK_NOTHROW(sr_solve(L));
}

TEST_CASE("spekkens-rudolph bias falls with the penalty") {
    double prev = 1.0;
    for (double L : {0.0, 1.0, 3.0, 6.0, 10.0}) {
        const double b = sr_solve(L).bias;
        CHECK(b < prev + 1e-12);
        prev = b;
    }
}

TEST_CASE("dip-dip-boom root residual") {
    for (double L : {0.5, 1.0, 6.0, 100.0, 1e4}) {
        const double R = ddb_reward(L);
        const double target = L * L * L / (L + 1.0);
        CHECK(std::abs(H_L(R, L) - target) <= 1e-10 * target);
    }
}

TEST_CASE("dip-dip-boom bracketing endpoints") {
    // H_L(0+) = L^2 above the target, H_L -> 0 below it
    for (double L : {0.5, 2.0, 50.0}) {
        const double target = L * L * L / (L + 1.0);
        CHECK(H_L(1e-12, L) > target);
        CHECK(H_L(1e9 * L, L) < target);
    }
}

TEST_CASE("asymptotic series ordering and accuracy") {
    // order 2 beats order 1 once the expansion applies
    CHECK(std::abs(ddb_reward(1e4) - ddb_asymptotic(1e4, 2)) <
          std::abs(ddb_reward(1e4) - ddb_asymptotic(1e4, 1)));
    // at lambda = 1e8 the order-2 series matches to double precision
    CHECK(std::abs(ddb_reward(1e8) - ddb_asymptotic(1e8, 2)) < 1e-12);
    // fitted constant of the order-2 remainder stays small at lambda = 1e6
    const double model = std::pow(std::log(1e6), 3) / 1e18;
    CHECK(std::abs(ddb_reward(1e6) - ddb_asymptotic(1e6, 2)) <= 10.0 * model);
}

TEST_CASE("dip-dip-boom bias decreases over the decades") {
    double prev = 1.0;
    for (int k = 1; k <= 8; ++k) {
        const double b = ddb_reward(std::pow(10.0, k)) - 0.5;
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("abdr closed form") {
    CHECK_THROWS_AS(abdr_reward(3.9), std::domain_error);
    CHECK(abdr_reward(4.0).bias == doctest::Approx(0.5));
    CHECK(abdr_reward(100.0).bias == doctest::Approx(0.1));
    CHECK(abdr_reward(1e8).bias == doctest::Approx(1e-4));
    CHECK(abdr_reward(100.0).rounds == 3);
    CHECK(abdr_reward(100.0).qubits == 4);
}

TEST_CASE("comparison table shape") {
    const auto rows = compare_table({6.0}, {});
    REQUIRE(rows.size() == 3);  // sr, ddb, abdr at lambda = 6
    CHECK(rows[0].protocol == "spekkens-rudolph");
    const auto with_game = compare_table({6.0}, {{"toy", 1.0, 0.1, 1e6, 24}});
    CHECK(with_game.size() == 4);
    CHECK(with_game.back().sc == 24);
}

TEST_SUITE_END();

#include <doctest.h>

#include "penwcf/expand.hpp"
#include "test_support.hpp"
#include "toy_game.hpp"

using namespace penwcf;
using namespace testsupport;

TEST_SUITE_BEGIN("expand");

TEST_CASE("the hand-built chain itself is valid") {
    const ToyGame toy = build_toy_game();
    for (std::size_t i = 0; i + 1 < toy.frames.size(); ++i) {
        const ValidityReport r =
            check_transition(toy.frames[i], toy.frames[i + 1], toy.axes[i], 1e-10);
        CAPTURE(i);
        CHECK(r.is_valid);
    }
    // the induced pair is an exact game
    const Move resid = (toy.h + toy.v) -
                       (point(toy.beta, toy.alpha) - Boundary::symmetric(1.0, 0.0).start);
    Move r = resid;
    r.canonicalize();
    CHECK(r.empty());
    CHECK(check_h_valid(toy.h, SweepMode::Dense, {}).all_valid);
    CHECK(check_v_valid(toy.v, SweepMode::Dense, {}).all_valid);
}

TEST_CASE("full materialisation of the toy game") {
    const ToyGame toy = build_toy_game();
    const BoundaryDecomposition d =
        decompose_boundary(toy.h, toy.v, toy.lambda, toy.beta, toy.alpha);
    const ConversionParams p = conversion_params(d, toy.h, toy.lambda, std::nullopt,
                                                 DeltaChoice::absolute(0.0272), M1Mode::Auto);
    const TdpgExpansion x = expand_tdpg(toy.h, toy.v, d, p, toy.lambda, Materialize::All);
    CHECK(x.all_valid);
    CHECK(x.worst_mass_error < 1e-10);
    CHECK(x.max_support <= x.support_bound);
    CHECK(x.final_x == doctest::Approx(toy.beta + x.err).epsilon(1e-9));
    CHECK(x.final_y == doctest::Approx(toy.alpha + x.err).epsilon(1e-9));
    CHECK(x.err >= std::sqrt(p.delta * (p.m2 - toy.alpha) * (p.m2 - toy.beta)) - 1e-9);
    CHECK(x.checks.size() == static_cast<std::size_t>(x.total_transitions));
}

TEST_CASE("sampled materialisation agrees with the loop template") {
    const ToyGame toy = build_toy_game();
    const BoundaryDecomposition d =
        decompose_boundary(toy.h, toy.v, toy.lambda, toy.beta, toy.alpha);
    const ConversionParams p = conversion_params(d, toy.h, toy.lambda, std::nullopt,
                                                 DeltaChoice::absolute(0.0272), M1Mode::Auto);
    const TdpgExpansion all = expand_tdpg(toy.h, toy.v, d, p, toy.lambda, Materialize::All);
    const TdpgExpansion sam =
        expand_tdpg(toy.h, toy.v, d, p, toy.lambda, Materialize::Sampled, {5, 17});
    CHECK(sam.all_valid);
    CHECK(sam.loop_iterations == all.loop_iterations);
    CHECK(sam.err == doctest::Approx(all.err).epsilon(1e-12));
    CHECK(sam.final_x == doctest::Approx(all.final_x).epsilon(1e-12));
    CHECK(sam.checks.size() < all.checks.size());
}

TEST_CASE("loop cap rejects overlong materialisation") {
    const ToyGame toy = build_toy_game();
    const BoundaryDecomposition d =
        decompose_boundary(toy.h, toy.v, toy.lambda, toy.beta, toy.alpha);
    const ConversionParams p = conversion_params(d, toy.h, toy.lambda, std::nullopt,
                                                 DeltaChoice::absolute(1e-4), M1Mode::Auto);
    CHECK_THROWS(expand_tdpg(toy.h, toy.v, d, p, toy.lambda, Materialize::All, {}, 1000));
    // sampled mode handles the same delta fine
    const TdpgExpansion x =
        expand_tdpg(toy.h, toy.v, d, p, toy.lambda, Materialize::Sampled);
    CHECK(x.all_valid);
}

TEST_CASE("merge conditions of the final chain hold by construction") {
    // delta' alpha + delta m = (delta + delta') (alpha + err)
    const ToyGame toy = build_toy_game();
    const BoundaryDecomposition d =
        decompose_boundary(toy.h, toy.v, toy.lambda, toy.beta, toy.alpha);
    const ConversionParams p = conversion_params(d, toy.h, toy.lambda, std::nullopt,
                                                 DeltaChoice::absolute(0.05), M1Mode::Auto);
    const TdpgExpansion x = expand_tdpg(toy.h, toy.v, d, p, toy.lambda, Materialize::Sampled);
    const double err = x.err, deff = x.delta_eff;
    const double dp = err / (p.m2 - toy.beta) * (1.0 - err / (p.m2 - toy.alpha));
    CHECK(dp * toy.alpha + deff * p.m2 ==
          doctest::Approx((dp + deff) * (toy.alpha + err)).epsilon(1e-10));
}

TEST_SUITE_END();

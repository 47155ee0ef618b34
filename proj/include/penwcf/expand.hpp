#pragma once

#include <cstdint>
#include <vector>

#include "penwcf/convert.hpp"
#include "penwcf/core.hpp"
#include "penwcf/validity.hpp"

namespace penwcf {

enum class Materialize { All, Sampled };

struct TransitionCheck {
    std::int64_t index = 0;  // transition number within the full TDPG
    Axis axis = Axis::Horizontal;
    ValidityReport report;
    bool frame_nonneg = true;
    double frame_mass = 0.0;
    std::string stage;
};

// An explicit time-dependent point game produced from a (possibly
// approximate) time-independent game: boundary splits, catalyst loop,
// raises and the final merge chain.
struct TdpgExpansion {
    std::vector<Move> frames;  // materialized frames, in order
    std::vector<TransitionCheck> checks;
    double gamma = 0.0;        // loop weight (= eta2)
    double scale = 0.0;        // 1 - eta1
    double delta1 = 0.0;       // 1 - floor(1/gamma) * gamma
    double delta_eff = 0.0;    // residual weight entering the final merge
    double err = 0.0;          // final-point offset achieved by the merge
    std::int64_t loop_iterations = 0;
    std::int64_t total_transitions = 0;
    std::size_t max_support = 0;
    std::size_t support_bound = 0;  // |supp(h) u supp(v)|
    bool all_valid = true;
    bool sampled = false;
    double final_x = 0.0;
    double final_y = 0.0;
    double worst_mass_error = 0.0;
};

// Materialises the TDPG for the game (h, v) with conversion parameters p.
// With Materialize::All every loop iteration is expanded (the iteration
// count must stay under loop_cap); with Materialize::Sampled the loop is
// verified through its affine frame template at k in {0, 1, last} plus
// sample_ks, which certifies every iteration since the in-loop transition
// differences do not depend on k.
TdpgExpansion expand_tdpg(const Move& h_star, const Move& v_star,
                          const BoundaryDecomposition& d, const ConversionParams& p,
                          double lambda, Materialize mode,
                          const std::vector<std::int64_t>& sample_ks = {},
                          std::int64_t loop_cap = 100000, double tol = kSelfTol);

}  // namespace penwcf

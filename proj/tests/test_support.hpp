#pragma once

// Shared fixtures: the three published game matrices, a small deterministic
// RNG for property tests, and helpers to assemble grids.

#include <array>
#include <cstdint>
#include <vector>

#include "penwcf/core.hpp"
#include "penwcf/profile.hpp"

namespace testsupport {

struct GoldenGame {
    double lambda;
    double epsilon;
    std::vector<double> S;
    std::vector<double> T;
    int truncation;
    // Printed matrix; columns are the (nearly) valid lines: entry [i][j]
    // is v*(x = S[j], y = S[i]).
    std::array<std::array<double, 8>, 8> M;
};

inline const std::vector<double> kT10 = {0.1, 0.3, 0.5, 1, 1.5, 2, 3, 4, 10, 1000};

inline const GoldenGame kGame1{
    1.0,
    5e-6,
    {0.3, 0.7, 1, 1.25, 1.500005, 1.75, 2, 3},
    kT10,
    6,
    {{{{0.000000, -0.012549, 0.000867, 0.002990, -0.005655, 0.000098, 0.001934, 0.002993}},
      {{0.012549, 0.000000, -0.027156, -0.021163, 0.007004, 0.005266, 0.025788, -0.007110}},
      {{-0.000867, 0.027156, 0.000000, -0.035587, -0.014383, -0.147784, -0.304895, -0.028092}},
      {{-0.002990, 0.021163, 0.035587, 0.000000, -0.196252, 0.006301, 0.165097, -0.031862}},
      {{0.005655, -0.007004, 0.014383, 0.196252, 0.500000, 0.227074, 0.092193, -0.028695}},
      {{-0.000098, -0.005266, 0.147784, -0.006301, -0.227074, 0.000000, 0.077654, 0.016646}},
      {{-0.001934, -0.025788, -0.195105, -0.165097, -0.092193, -0.077654, 0.000000, 0.064828}},
      {{-0.002993, 0.007110, 0.028092, 0.031862, 0.028695, -0.016646, -0.064828, 0.000000}}}}};

inline const GoldenGame kGame2{
    1.0,
    5e-3,
    {0.6, 0.8, 1, 1.225, 1.505, 1.75, 2, 2.5},
    kT10,
    6,
    {{{{0.000000, -0.022240, -0.010330, 0.001572, 0.017053, 0.012344, -0.008076, -0.002015}},
      {{0.022240, 0.000000, -0.032154, -0.023705, -0.041653, 0.014959, 0.091371, -0.039714}},
      {{0.010330, 0.032154, 0.000000, -0.059100, -0.005204, -0.150847, -0.293117, -0.041182}},
      {{-0.001572, 0.023705, 0.059100, 0.000000, -0.210070, -0.008831, 0.155849, -0.023644}},
      {{-0.017053, 0.041653, 0.005204, 0.210070, 0.500000, 0.212440, 0.038713, 0.006219}},
      {{-0.012344, -0.014959, 0.150847, 0.008831, -0.212440, 0.000000, 0.055970, 0.025358}},
      {{0.008076, -0.091371, -0.206883, -0.155849, -0.038713, -0.055970, 0.000000, 0.048148}},
      {{0.002015, 0.039714, 0.041182, 0.023644, -0.006219, -0.025358, -0.048148, 0.000000}}}}};

inline const GoldenGame kGame3{
    0.01,
    1e-14,
    {0.005, 0.007, 0.01, 0.125, 0.51000000000001, 0.75, 1.01, 1.02},
    kT10,
    6,
    {{{{0.000000, -0.011971, -0.006441, 0.006342, -0.062810, 0.058173, 0.025592, -0.029527}},
      {{0.011971, 0.000000, -0.010990, -0.001980, -0.012568, -0.046571, 0.105927, -0.059991}},
      {{0.006441, 0.010990, 0.000000, -0.017410, 0.036784, -0.126314, -0.342226, -0.079367}},
      {{-0.006342, 0.001980, 0.017410, 0.000000, -0.104147, 0.024187, 0.066522, -0.025626}},
      {{0.062810, 0.012568, -0.036784, 0.104147, 0.500000, 0.243379, 0.068062, 0.013066}},
      {{-0.058173, 0.046571, 0.126314, -0.024187, -0.243379, 0.000000, 0.145096, -0.017206}},
      {{-0.025592, -0.105927, -0.157774, -0.066522, -0.068062, -0.145096, 0.000000, 0.118873}},
      {{0.029527, 0.059991, 0.079367, 0.025626, -0.013066, 0.017206, -0.118873, 0.000000}}}}};

// v* as a Move: entry [i][j] of the printed matrix is v*(S[j], S[i]).
inline penwcf::Move golden_v(const GoldenGame& g) {
    penwcf::Move m;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (g.M[i][j] != 0.0) m.add(g.S[j], g.S[i], g.M[i][j]);
    m.canonicalize();
    return m;
}

inline penwcf::Move golden_h(const GoldenGame& g) { return penwcf::transpose(golden_v(g)); }

inline penwcf::GridSpec golden_grid(const GoldenGame& g) {
    penwcf::GridSpec grid;
    grid.S = g.S;
    grid.T = g.T;
    grid.lambda = g.lambda;
    grid.truncation = g.truncation;
    return grid;
}

inline penwcf::Boundary golden_boundary(const GoldenGame& g) {
    // End coordinate lives on the grid (S[4]); build the boundary from it
    // so coordinate comparisons stay exact.
    penwcf::Boundary b;
    b.lambda = g.lambda;
    b.epsilon = g.S[4] - g.lambda - 0.5;
    b.start.add(g.lambda, g.lambda + 1.0, 0.5);
    b.start.add(g.lambda + 1.0, g.lambda, 0.5);
    b.end.add(g.S[4], g.S[4], 1.0);
    return b;
}

// xorshift128+ with a splitmix seeding: deterministic, no <random> needed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        auto mix = [](std::uint64_t& z) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t x = z;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        };
        s0_ = mix(seed);
        s1_ = mix(seed);
    }
    std::uint64_t next() {
        std::uint64_t x = s0_, y = s1_;
        s0_ = y;
        x ^= x << 23;
        s1_ = x ^ y ^ (x >> 17) ^ (y >> 26);
        return s1_ + y;
    }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53;
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t s0_, s1_;
};

}  // namespace testsupport

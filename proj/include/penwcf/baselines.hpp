#pragma once

#include <map>
#include <string>
#include <vector>

#include "penwcf/core.hpp"

namespace penwcf {

// Reference protocol result. `reward` is in the protocol's own scoring
// convention, recorded in `convention`; bias is always reward minus the
// honest baseline of that convention.
struct BaselineResult {
    std::string name;
    double lambda = 0.0;
    double bias = 0.0;
    double reward = 0.0;
    long long rounds = 0;   // -1 encodes the infinite-round limit
    int qubits = 0;
    std::string convention;
    std::map<std::string, double> aux;
};

// Cheat-penalised Spekkens-Rudolph point game: minimises the symmetric
// reward max(z1, (1-p)w + pv) over the split weight p with the split
// inequality tight; every transition of the chain is replayed through the
// validity oracle.
BaselineResult sr_solve(double lambda);

// Dip-Dip-Boom: unique root of H_L(z) = L^3/(L+1) with
// H_L(z) = L(L-2z) + 2 z^2 log(1 + L/z). Mochon's scoring (win 1 / lose 0 /
// caught -L); bias = R* - 1/2. Solved in the excess coordinate z - 1/2.
double ddb_reward(double lambda);
BaselineResult ddb_result(double lambda);

// Asymptotic expansions of the Dip-Dip-Boom reward.
double ddb_asymptotic(double lambda, int order);

// ABDR04 three-message protocol, needs lambda >= 4: reward 1/2 + 1/sqrt(L).
BaselineResult abdr_reward(double lambda);

struct CompareRow {
    std::string protocol;
    double lambda = 0.0;
    double bias = 0.0;
    double rc = 0.0;
    int sc = 0;
};

struct GameSummary {
    std::string name;
    double lambda = 0.0;
    double bias = 0.0;
    double rc = 0.0;
    int sc = 0;
};

std::vector<CompareRow> compare_table(const std::vector<double>& lambdas,
                                      const std::vector<GameSummary>& games);

}  // namespace penwcf

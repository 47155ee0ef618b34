#pragma once

#include <optional>
#include <string>
#include <vector>

#include "penwcf/core.hpp"
#include "penwcf/profile.hpp"
#include "penwcf/search.hpp"

namespace penwcf {

// On-disk representation of a solved (or transcribed) point game.
// orientation fixes the matrix reading:
//   "row=x": M[i][j] = v*(x = S[i], y = S[j])
//   "row=y": M[i][j] = v*(x = S[j], y = S[i])
// Both are accepted on load; files written by this library use "row=y",
// under which the columns of the stored matrix are the vertical lines of
// v* (the lines that must be valid).
struct GameFile {
    int schema_version = 1;
    double lambda = 0.0;
    double epsilon = 0.0;  // final-point offset; end coordinate = lambda + 1/2 + epsilon
    std::vector<double> S;
    std::vector<double> T;
    std::optional<int> truncation;
    std::optional<double> delta;
    std::string orientation = "row=y";
    std::vector<std::vector<double>> v_star;            // |S| x |S|
    std::optional<std::vector<std::vector<double>>> h_star;
    std::string provenance_source;                       // "golden" | "search" | ...
    std::optional<double> provenance_eps_approx;
    std::string provenance_note;

    GridSpec grid() const;
    Boundary boundary() const;           // end coordinate snapped to the grid
    Move v_move() const;                 // canonical v*
    Move h_move() const;                 // stored h* or transpose(v*)
    double golden_tier_tol() const;      // 5e-6 for golden provenance, 1e-10 otherwise

    static GameFile from_pen_tipg(const PenTipg& game, const SearchConfig& cfg);
};

GameFile load_game(const std::string& path);
// Canonical serialisation: alphabetically ordered keys, shortest
// round-trip decimals, newline-terminated; written atomically.
void save_game(const GameFile& g, const std::string& path);
std::string serialize_game(const GameFile& g);

}  // namespace penwcf

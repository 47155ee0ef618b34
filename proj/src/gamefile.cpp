#include "penwcf/gamefile.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace penwcf {

namespace {

std::string shortest(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in game file");
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    std::string s(buf, ptr);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

void emit_array(std::ostringstream& os, const std::vector<double>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << shortest(v[i]);
    }
    os << ']';
}

void emit_matrix(std::ostringstream& os, const std::vector<std::vector<double>>& m) {
    os << '[';
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) os << ',';
        emit_array(os, m[i]);
    }
    os << ']';
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

GridSpec GameFile::grid() const {
    GridSpec g;
    g.S = S;
    g.T = T;
    g.lambda = lambda;
    if (truncation) g.truncation = truncation;
    if (delta) g.delta = *delta;
    g.validate();
    return g;
}

Boundary GameFile::boundary() const {
    Boundary b = Boundary::symmetric(lambda, epsilon);
    // The end coordinate must be a grid point; snap to it so coordinate
    // comparisons stay exact.
    const double want = lambda + 0.5 + epsilon;
    double best = S.empty() ? want : S[0];
    for (double s : S)
        if (std::abs(s - want) < std::abs(best - want)) best = s;
    if (std::abs(best - want) > 1e-9 * std::max(1.0, std::abs(want)))
        throw std::runtime_error("GameFile: end coordinate not on the grid");
    if (best != want) {
        b = Boundary();
        b.lambda = lambda;
        b.epsilon = best - lambda - 0.5;
        b.start.add(lambda, lambda + 1.0, 0.5);
        b.start.add(lambda + 1.0, lambda, 0.5);
        b.end.add(best, best, 1.0);
    }
    return b;
}

Move GameFile::v_move() const {
    Move m;
    const std::size_t n = S.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double w = v_star[i][j];
            if (w == 0.0) continue;
            if (orientation == "row=x")
                m.add(S[i], S[j], w);
            else
                m.add(S[j], S[i], w);
        }
    m.canonicalize();
    return m;
}

Move GameFile::h_move() const {
    if (!h_star) return transpose(v_move());
    Move m;
    const std::size_t n = S.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double w = (*h_star)[i][j];
            if (w == 0.0) continue;
            if (orientation == "row=x")
                m.add(S[i], S[j], w);
            else
                m.add(S[j], S[i], w);
        }
    m.canonicalize();
    return m;
}

double GameFile::golden_tier_tol() const {
    return provenance_source == "golden" ? kGoldenTol : kSelfTol;
}

GameFile GameFile::from_pen_tipg(const PenTipg& game, const SearchConfig& cfg) {
    GameFile f;
    f.lambda = game.lambda;
    f.epsilon = cfg.boundary.epsilon;
    f.S = cfg.grid.S;
    f.T = cfg.grid.T;
    f.truncation = cfg.grid.truncation;
    if (!cfg.grid.truncation) f.delta = cfg.grid.delta;
    f.orientation = "row=y";
    const std::size_t n = f.S.size();
    f.v_star.assign(n, std::vector<double>(n, 0.0));
    GridSpec g = cfg.grid;
    // row=y: M[i][j] = v*(S[j], S[i])
    for (const auto& [k, w] : game.v_star.points()) {
        const int jx = g.index_of(k.first);
        const int iy = g.index_of(k.second);
        if (jx < 0 || iy < 0) throw std::runtime_error("from_pen_tipg: point off the grid");
        f.v_star[iy][jx] = w;
    }
    f.provenance_source = "search";
    f.provenance_eps_approx = game.eps_approx;
    return f;
}

std::string serialize_game(const GameFile& g) {
    std::ostringstream os;
    os << "{\"S\":";
    emit_array(os, g.S);
    os << ",\"T\":";
    emit_array(os, g.T);
    if (g.delta) os << ",\"delta\":" << shortest(*g.delta);
    os << ",\"epsilon\":" << shortest(g.epsilon);
    if (g.h_star) {
        os << ",\"h_star\":";
        emit_matrix(os, *g.h_star);
    }
    os << ",\"lambda\":" << shortest(g.lambda);
    os << ",\"orientation\":\"" << escape(g.orientation) << "\"";
    if (!g.provenance_source.empty() || g.provenance_eps_approx || !g.provenance_note.empty()) {
        os << ",\"provenance\":{";
        bool first = true;
        if (g.provenance_eps_approx) {
            os << "\"eps_approx\":" << shortest(*g.provenance_eps_approx);
            first = false;
        }
        if (!g.provenance_note.empty()) {
            if (!first) os << ',';
            os << "\"note\":\"" << escape(g.provenance_note) << "\"";
            first = false;
        }
        if (!g.provenance_source.empty()) {
            if (!first) os << ',';
            os << "\"source\":\"" << escape(g.provenance_source) << "\"";
        }
        os << '}';
    }
    os << ",\"schema_version\":" << g.schema_version;
    if (g.truncation) os << ",\"truncation\":" << *g.truncation;
    os << ",\"v_star\":";
    emit_matrix(os, g.v_star);
    os << "}\n";
    return os.str();
}

void save_game(const GameFile& g, const std::string& path) {
    const std::string body = serialize_game(g);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("save_game: cannot open " + tmp);
        out << body;
        if (!out) throw std::runtime_error("save_game: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("save_game: rename failed for " + path);
}

GameFile load_game(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_game: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("load_game: parse error: ") + e.what());
    }
    GameFile g;
    try {
        g.schema_version = j.at("schema_version").get<int>();
        g.lambda = j.at("lambda").get<double>();
        g.epsilon = j.at("epsilon").get<double>();
        g.S = j.at("S").get<std::vector<double>>();
        g.T = j.at("T").get<std::vector<double>>();
        if (j.contains("truncation")) g.truncation = j["truncation"].get<int>();
        if (j.contains("delta")) g.delta = j["delta"].get<double>();
        g.orientation = j.at("orientation").get<std::string>();
        if (g.orientation != "row=x" && g.orientation != "row=y")
            throw std::runtime_error("load_game: unknown orientation flag");
        g.v_star = j.at("v_star").get<std::vector<std::vector<double>>>();
        if (j.contains("h_star"))
            g.h_star = j["h_star"].get<std::vector<std::vector<double>>>();
        if (j.contains("provenance")) {
            const auto& p = j["provenance"];
            if (p.contains("source")) g.provenance_source = p["source"].get<std::string>();
            if (p.contains("eps_approx"))
                g.provenance_eps_approx = p["eps_approx"].get<double>();
            if (p.contains("note")) g.provenance_note = p["note"].get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("load_game: schema error: ") + e.what());
    }
    const std::size_t n = g.S.size();
    if (g.v_star.size() != n)
        throw std::runtime_error("load_game: v_star row count != |S|");
    for (const auto& row : g.v_star)
        if (row.size() != n) throw std::runtime_error("load_game: v_star is not |S| x |S|");
    if (g.h_star) {
        if (g.h_star->size() != n) throw std::runtime_error("load_game: h_star row count != |S|");
        for (const auto& row : *g.h_star)
            if (row.size() != n) throw std::runtime_error("load_game: h_star is not |S| x |S|");
    }
    g.grid();  // validates S, T, truncation and lambda
    return g;
}

}  // namespace penwcf

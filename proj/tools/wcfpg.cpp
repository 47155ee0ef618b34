// Command-line front end: search for penalised point games, verify game
// files, convert them to protocol resource estimates, expand them into
// explicit time-dependent games, and tabulate baseline protocols.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "penwcf/baselines.hpp"
#include "penwcf/convert.hpp"
#include "penwcf/core.hpp"
#include "penwcf/expand.hpp"
#include "penwcf/gamefile.hpp"
#include "penwcf/kernels.hpp"
#include "penwcf/search.hpp"
#include "penwcf/validity.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace penwcf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

M1Mode parse_m1_mode(const std::string& s) {
    if (s == "auto") return M1Mode::Auto;
    if (s == "lemma") return M1Mode::Lemma;
    if (s == "theorem") return M1Mode::Theorem;
    if (s == "mincoord") return M1Mode::MinCoordinate;
    throw CLI::ValidationError("--m1-mode", "unknown mode " + s);
}

SearchConfig config_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    nlohmann::json j;
    in >> j;
    SearchConfig cfg;
    cfg.grid.lambda = j.at("lambda").get<double>();
    cfg.grid.S = j.at("S").get<std::vector<double>>();
    cfg.grid.T = j.at("T").get<std::vector<double>>();
    if (j.contains("truncation")) cfg.grid.truncation = j["truncation"].get<int>();
    if (j.contains("delta")) cfg.grid.delta = j["delta"].get<double>();
    cfg.boundary = Boundary::symmetric(cfg.grid.lambda, j.at("epsilon").get<double>());
    if (j.contains("norm_penalty")) cfg.norm_penalty = j["norm_penalty"].get<double>();
    if (j.contains("weight_bound")) cfg.weight_bound = j["weight_bound"].get<double>();
    if (j.contains("qp")) {
        const auto& q = j["qp"];
        if (q.contains("max_iterations")) cfg.qp.max_iterations = q["max_iterations"].get<int>();
        if (q.contains("eps_primal")) cfg.qp.eps_primal = q["eps_primal"].get<double>();
        if (q.contains("eps_dual")) cfg.qp.eps_dual = q["eps_dual"].get<double>();
    }
    cfg.validate();
    return cfg;
}

struct LoadedGame {
    GameFile file;
    Move v;
    Move h;
    Boundary bdy;
};

LoadedGame load(const std::string& path) {
    LoadedGame g;
    g.file = load_game(path);
    g.v = g.file.v_move();
    g.h = g.file.h_move();
    g.bdy = g.file.boundary();
    return g;
}

BoundaryDecomposition decomp_of(const LoadedGame& g) {
    const double end = g.bdy.end_coordinate();
    return decompose_boundary(g.h, g.v, g.file.lambda, end, end);
}

int cmd_verify(const std::string& path, int dense_points, const std::string& tier) {
    LoadedGame g;
    try {
        g = load(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    const double tol = tier == "golden" ? kGoldenTol
                       : tier == "self" ? kSelfTol
                                        : g.file.golden_tier_tol();
    if (g.v.empty()) {
        std::cout << "warning: empty game, trivially valid\n";
        return kExitOk;
    }
    // Per-line reports on the printed T set plus the dense sweep.
    LineReports grid_rep = check_v_valid(g.v, SweepMode::Grid, g.file.T, tol);
    const std::vector<double> sweep =
        kernels::dense_lambda_grid(1e-6, 1e6, std::max(2, dense_points));
    LineReports dense_rep = check_v_valid(g.v, SweepMode::Grid, sweep, tol);

    Move resid = (g.h + g.v) - g.bdy.end_minus_start();
    resid.canonicalize();
    const double eps_approx = l1_norm(resid);
    Move sym = g.h - transpose(g.v);
    sym.canonicalize();
    const double sym_resid = l1_norm(sym);

    std::printf("game: %s  (lambda=%g, tier=%.0e)\n", path.c_str(), g.file.lambda, tol);
    std::printf("lines (vertical, fixed x): worst T-profile  dense-profile  |sum|\n");
    for (const auto& [x, rep] : grid_rep.lines) {
        const auto& drep = dense_rep.lines.at(x);
        std::printf("  x=%-16.10g %14.3e %14.3e %11.3e\n", x, rep.worst_value, drep.worst_value,
                    std::abs(rep.sum_residual));
    }
    std::printf("worst T-profile      : %.6e\n", grid_rep.worst_value);
    std::printf("worst dense profile  : %.6e\n", dense_rep.worst_value);
    std::printf("worst |line sum|     : %.6e\n", grid_rep.worst_sum);
    std::printf("eps_approx (L1)      : %.6e\n", eps_approx);
    std::printf("h = v^T residual (L1): %.6e\n", sym_resid);

    // A declared approximation level is allowed; otherwise the boundary
    // identity must hold at the tier (print precision for golden data).
    const double eps_bound =
        g.file.provenance_eps_approx ? *g.file.provenance_eps_approx + tol : tol;
    const bool pass = grid_rep.worst_value >= -tol && grid_rep.worst_sum <= tol &&
                      eps_approx <= eps_bound && sym_resid <= tol;
    std::printf("verdict: %s\n", pass ? "PASS" : "FAIL");
    return pass ? kExitOk : kExitNumerical;
}

int cmd_search(const std::string& config_path, const std::string& out_path) {
    SearchConfig cfg;
    try {
        cfg = config_from_json(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: bad config: " << e.what() << "\n";
        return kExitInput;
    }
    PenTipg game;
    try {
        game = run_search(cfg);
    } catch (const QpError& e) {
        std::cerr << "error: solver failed: " << e.what()
                  << " (primal " << e.last_result.primal_residual << ", dual "
                  << e.last_result.dual_residual << ")\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    GameFile f = GameFile::from_pen_tipg(game, cfg);
    try {
        save_game(f, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    std::printf("eps_approx  : %.6e\n", game.eps_approx);
    std::printf("norm        : %.6f\n", game.norm);
    std::printf("points      : %zu\n", game.point_count);
    std::printf("h valid     : %s (dense worst %.3e)\n", game.h_report.all_valid ? "yes" : "no",
                game.h_report.worst_value);
    std::printf("v valid     : %s (dense worst %.3e)\n", game.v_report.all_valid ? "yes" : "no",
                game.v_report.worst_value);
    if (game.t_valid_only) std::printf("note        : T-valid only\n");
    std::printf("wrote %s\n", out_path.c_str());
    return kExitOk;
}

void print_report(const ConversionReport& r, double lambda) {
    const ConversionParams& p = r.params;
    std::printf("m1          : %.12g%s\n", p.m1, p.m1_below_lambda ? "  (below lambda)" : "");
    std::printf("c1          : %.12g  (admissible sup %.12g)\n", p.c1,
                admissible_c1(p.m1, lambda).second);
    std::printf("c3          : %.12g\n", p.c3);
    std::printf("delta_min   : %.12g\n", p.delta_min);
    std::printf("delta       : %.12g\n", p.delta);
    std::printf("w1+/w1-     : %.12g / %.12g (theorem form)\n", p.w1_plus, p.w1_minus);
    std::printf("w1, w2      : %.12g, %.12g (construction)\n", p.w1, p.w2);
    std::printf("m2~, m2     : %.12g, %.12g\n", p.m2_tilde, p.m2);
    std::printf("delta_clyst : %.12g\n", p.delta_clyst);
    std::printf("delta_sfix  : %.12g\n", p.delta_sfix);
    std::printf("eta1/2/3    : %.12g / %.12g / %.12g\n", p.eta1, p.eta2, p.eta3);
    std::printf("err         : %.6e\n", r.err);
    std::printf("n           : %.6e\n", r.n_steps);
    std::printf("rc          : %.6e\n", r.rc);
    std::printf("mu, sc      : %zu, %d\n", r.mu, r.sc);
    std::printf("bias        : %.6e\n", r.protocol_bias);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cheat-penalised weak coin-flipping point games"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker thread count (default: OMP_NUM_THREADS)");

    // search
    auto* search = app.add_subcommand("search", "run the four-step point game search");
    std::string cfg_path, out_path;
    search->add_option("config", cfg_path, "search config (JSON)")->required();
    search->add_option("out", out_path, "output game file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "validity checks for a game file");
    std::string game_path, tier = "auto";
    int dense_n = 601;
    verify->add_option("game", game_path, "game file")->required();
    verify->add_option("--dense", dense_n, "dense sweep point count");
    verify->add_option("--tier", tier, "tolerance tier: golden|self|auto");

    // convert
    auto* convert = app.add_subcommand("convert", "protocol resource estimates");
    std::string c_game, c1_str = "auto", m1_mode_str = "auto";
    double delta_offset = -1.0, delta_value = -1.0;
    convert->add_option("game", c_game, "game file")->required();
    convert->add_option("--c1", c1_str, "c1 value or 'auto'");
    convert->add_option("--delta-offset", delta_offset, "delta = delta_min + offset");
    convert->add_option("--delta", delta_value, "absolute delta");
    convert->add_option("--m1-mode", m1_mode_str, "auto|lemma|theorem|mincoord");

    // tradeoff
    auto* tradeoff = app.add_subcommand("tradeoff", "err/rounds trade-off curve");
    std::string t_game, t_out;
    std::vector<double> t_deltas, t_offsets;
    std::string t_c1 = "auto", t_m1 = "auto";
    tradeoff->add_option("game", t_game)->required();
    tradeoff->add_option("--deltas", t_deltas, "absolute delta values")->delimiter(',');
    tradeoff->add_option("--offsets", t_offsets, "offsets above delta_min")->delimiter(',');
    tradeoff->add_option("--c1", t_c1);
    tradeoff->add_option("--m1-mode", t_m1);
    tradeoff->add_option("-o,--out", t_out, "CSV output path (default: stdout)");

    // expand
    auto* expand = app.add_subcommand("expand", "materialise the time-dependent game");
    std::string e_game, e_sample = "0,1,last", e_c1 = "auto", e_m1 = "auto";
    double e_doff = -1.0, e_dval = -1.0;
    bool e_all = false;
    long long e_cap = 100000;
    expand->add_option("game", e_game)->required();
    expand->add_option("--sample", e_sample, "loop iterations to materialise");
    expand->add_flag("--all", e_all, "materialise every loop iteration");
    expand->add_option("--cap", e_cap, "materialisation cap");
    expand->add_option("--delta-offset", e_doff);
    expand->add_option("--delta", e_dval);
    expand->add_option("--c1", e_c1);
    expand->add_option("--m1-mode", e_m1);

    // baseline
    auto* baseline = app.add_subcommand("baseline", "reference protocols");
    std::string b_which;
    double b_lambda = 1.0;
    baseline->add_option("which", b_which, "sr|ddb|abdr")->required();
    baseline->add_option("--lambda", b_lambda)->required();

    // compare
    auto* compare = app.add_subcommand("compare", "comparison table");
    std::vector<double> cmp_lambdas;
    std::vector<std::string> cmp_games;
    std::string cmp_out, cmp_c1 = "auto", cmp_m1 = "auto";
    double cmp_doff = 1e-5;
    compare->add_option("--lambdas", cmp_lambdas)->delimiter(',')->required();
    compare->add_option("--game", cmp_games, "game files to include");
    compare->add_option("--delta-offset", cmp_doff, "delta choice for the games");
    compare->add_option("--c1", cmp_c1);
    compare->add_option("--m1-mode", cmp_m1);
    compare->add_option("-o,--out", cmp_out, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*search) return cmd_search(cfg_path, out_path);
        if (*verify) return cmd_verify(game_path, dense_n, tier);

        if (*convert) {
            LoadedGame g = load(c_game);
            const BoundaryDecomposition d = decomp_of(g);
            std::optional<double> c1;
            if (c1_str != "auto") c1 = std::stod(c1_str);
            DeltaChoice dc = delta_value >= 0.0 ? DeltaChoice::absolute(delta_value)
                                                : DeltaChoice::above_min(delta_offset >= 0.0
                                                                             ? delta_offset
                                                                             : 1e-5);
            ConversionParams p;
            try {
                p = conversion_params(d, g.h, g.file.lambda, c1, dc, parse_m1_mode(m1_mode_str));
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitNumerical;
            }
            print_report(conversion_report(d, g.h, g.v, g.file.lambda, p), g.file.lambda);
            return kExitOk;
        }

        if (*tradeoff) {
            LoadedGame g = load(t_game);
            const BoundaryDecomposition d = decomp_of(g);
            std::optional<double> c1;
            if (t_c1 != "auto") c1 = std::stod(t_c1);
            const M1Mode mode = parse_m1_mode(t_m1);
            std::vector<double> deltas = t_deltas;
            if (!t_offsets.empty()) {
                ConversionParams p0 = conversion_params(d, g.h, g.file.lambda, c1,
                                                        DeltaChoice::above_min(1e-6), mode);
                for (double o : t_offsets) deltas.push_back(p0.delta_min + o);
            }
            if (deltas.empty()) {
                std::cerr << "error: no deltas given\n";
                return kExitInput;
            }
            const auto rows = tradeoff_curve(d, g.h, g.v, g.file.lambda, c1, deltas, mode);
            std::ostringstream csv;
            csv << "delta,err,rc,bias\n";
            for (const auto& r : rows)
                csv << r.delta << ',' << r.err << ',' << r.rc << ',' << r.bias << '\n';
            if (t_out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(t_out);
                if (!out) return kExitIo;
                out << csv.str();
            }
            return kExitOk;
        }

        if (*expand) {
            LoadedGame g = load(e_game);
            const BoundaryDecomposition d = decomp_of(g);
            std::optional<double> c1;
            if (e_c1 != "auto") c1 = std::stod(e_c1);
            DeltaChoice dc = e_dval >= 0.0 ? DeltaChoice::absolute(e_dval)
                                           : DeltaChoice::above_min(e_doff >= 0.0 ? e_doff : 0.01);
            const ConversionParams p =
                conversion_params(d, g.h, g.file.lambda, c1, dc, parse_m1_mode(e_m1));
            std::vector<std::int64_t> ks;
            if (!e_all) {
                std::stringstream ss(e_sample);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    if (tok == "last") continue;  // always included
                    ks.push_back(std::stoll(tok));
                }
            }
            const TdpgExpansion x =
                expand_tdpg(g.h, g.v, d, p, g.file.lambda,
                            e_all ? Materialize::All : Materialize::Sampled, ks, e_cap);
            std::printf("loop iterations : %lld (gamma %.6e)\n",
                        static_cast<long long>(x.loop_iterations), x.gamma);
            std::printf("transitions     : %lld (%zu checked)\n",
                        static_cast<long long>(x.total_transitions), x.checks.size());
            std::printf("max support     : %zu (bound %zu)\n", x.max_support, x.support_bound);
            std::printf("mass error      : %.3e\n", x.worst_mass_error);
            std::printf("err             : %.6e\n", x.err);
            std::printf("final point     : (%.12g, %.12g)\n", x.final_x, x.final_y);
            for (const auto& c : x.checks)
                if (!c.report.is_valid || !c.frame_nonneg)
                    std::printf("  transition %lld (%s): %s\n", static_cast<long long>(c.index),
                                c.stage.c_str(), c.report.describe().c_str());
            std::printf("%s\n", x.all_valid ? "all transitions valid"
                                            : "INVALID transitions present");
            return x.all_valid ? kExitOk : kExitNumerical;
        }

        if (*baseline) {
            BaselineResult r;
            if (b_which == "sr")
                r = sr_solve(b_lambda);
            else if (b_which == "ddb")
                r = ddb_result(b_lambda);
            else if (b_which == "abdr")
                r = abdr_reward(b_lambda);
            else {
                std::cerr << "error: unknown baseline " << b_which << "\n";
                return kExitInput;
            }
            std::printf("%s  lambda=%g\n", r.name.c_str(), r.lambda);
            std::printf("reward : %.12f (%s convention)\n", r.reward, r.convention.c_str());
            std::printf("bias   : %.12f\n", r.bias);
            std::printf("rounds : %lld%s\n", r.rounds, r.rounds < 0 ? " (infinite limit)" : "");
            std::printf("qubits : %d\n", r.qubits);
            if (b_which == "ddb") {
                std::printf("order-1 series: %.12f\n", ddb_asymptotic(b_lambda, 1));
                std::printf("order-2 series: %.12f\n", ddb_asymptotic(b_lambda, 2));
            }
            for (const auto& [k, v] : r.aux) std::printf("   %s = %.12g\n", k.c_str(), v);
            return kExitOk;
        }

        if (*compare) {
            std::vector<GameSummary> sums;
            for (const std::string& path : cmp_games) {
                LoadedGame g = load(path);
                const BoundaryDecomposition d = decomp_of(g);
                std::optional<double> c1;
                if (cmp_c1 != "auto") c1 = std::stod(cmp_c1);
                const ConversionParams p =
                    conversion_params(d, g.h, g.file.lambda, c1,
                                      DeltaChoice::above_min(cmp_doff), parse_m1_mode(cmp_m1));
                const ConversionReport rep = conversion_report(d, g.h, g.v, g.file.lambda, p);
                sums.push_back({path, g.file.lambda, rep.protocol_bias, rep.rc, rep.sc});
            }
            const auto rows = compare_table(cmp_lambdas, sums);
            std::ostringstream csv;
            csv << "protocol,lambda,bias,rc,sc\n";
            for (const auto& r : rows)
                csv << r.protocol << ',' << r.lambda << ',' << r.bias << ',' << r.rc << ','
                    << r.sc << '\n';
            if (cmp_out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(cmp_out);
                if (!out) return kExitIo;
                out << csv.str();
            }
            return kExitOk;
        }
    } catch (const QpError& e) {
        std::cerr << "error: solver failed: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

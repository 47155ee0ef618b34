#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "penwcf/gamefile.hpp"
#include "test_support.hpp"

using namespace penwcf;
using namespace testsupport;

TEST_SUITE_BEGIN("gamefile");

namespace {

std::string data_path(const char* name) {
    return std::string(PENWCF_DATA_DIR) + "/" + name;
}

GameFile sample_file() {
    GameFile g;
    g.lambda = 1.0;
    g.epsilon = 0.005;
    g.S = {0.6, 0.8, 1.0, 1.225, 1.505, 1.75, 2.0, 2.5};
    g.T = kT10;
    g.truncation = 6;
    g.orientation = "row=y";
    g.v_star.assign(8, std::vector<double>(8, 0.0));
    g.v_star[2][5] = -0.25;
    g.v_star[4][4] = 0.5;
    g.provenance_source = "search";
    g.provenance_eps_approx = 1.25e-3;
    return g;
}

}  // namespace

TEST_CASE("round trip is byte-identical") {
    const GameFile g = sample_file();
    const std::string path = "/tmp/penwcf_roundtrip.game.json";
    save_game(g, path);
    const GameFile g2 = load_game(path);
    const std::string again = serialize_game(g2);
    std::ifstream in(path, std::ios::binary);
    std::string original((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    CHECK(again == original);
    CHECK(original.back() == '\n');
    std::remove(path.c_str());
}

TEST_CASE("both orientations load to the same move family") {
    GameFile a = sample_file();
    GameFile b = sample_file();
    b.orientation = "row=x";
    // transpose the stored matrix: the loaded moves must then agree
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) b.v_star[i][j] = a.v_star[j][i];
    Move diff = a.v_move() - b.v_move();
    diff.canonicalize();
    CHECK(diff.empty());
}

TEST_CASE("golden files load with the published values") {
    const GameFile g1 = load_game(data_path("pentipg1.game.json"));
    CHECK(g1.lambda == 1.0);
    CHECK(g1.S.size() == 8);
    CHECK(g1.truncation.value() == 6);
    CHECK(g1.provenance_source == "golden");
    const Move v = g1.v_move();
    CHECK(l1_norm(v) == doctest::Approx(3.506042));
    // orientation makes the end-point weight sit on the diagonal
    CHECK(v.at(1.500005, 1.500005) == 0.5);

    const GameFile g3 = load_game(data_path("pentipg3.game.json"));
    CHECK(g3.lambda == 0.01);
    CHECK(g3.boundary().end_coordinate() == doctest::Approx(0.51).epsilon(1e-10));
}

TEST_CASE("schema errors are reported") {
    const std::string path = "/tmp/penwcf_bad.game.json";
    {
        std::ofstream out(path);
        out << "{\"lambda\": 1.0}\n";
    }
    CHECK_THROWS(load_game(path));
    {
        std::ofstream out(path);
        out << "not json\n";
    }
    CHECK_THROWS(load_game(path));
    CHECK_THROWS(load_game("/nonexistent/path.json"));
    std::remove(path.c_str());
}

TEST_CASE("tier selection follows provenance") {
    GameFile g = sample_file();
    CHECK(g.golden_tier_tol() == kSelfTol);
    g.provenance_source = "golden";
    CHECK(g.golden_tier_tol() == kGoldenTol);
}

TEST_SUITE_END();

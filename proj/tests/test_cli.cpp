#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

// Spawns the installed CLI binary and checks the documented exit-code
// mapping and report determinism.

namespace {

struct RunResult {
    int exit_code;
    std::string output_file;
};

std::string tmp_path(const std::string& stem) {
    return std::string("/tmp/psgauss_test_") + stem;
}

int run_cli(const std::string& args, const std::string& stdout_file) {
    const std::string cmd =
        std::string(PSGAUSS_CLI_PATH) + " " + args + " > " + stdout_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_wall_time(const std::string& body) {
    std::string out;
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line))
        if (line.find("wall_time_ms") == std::string::npos) out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("verify exit codes") {
    SUBCASE("catalog surface matching its expectation exits 0") {
        CHECK(run_cli("verify clifford --grid 7x7", tmp_path("ok.json")) == 0);
    }
    SUBCASE("explicit wrong expectation exits 1") {
        CHECK(run_cli("verify clifford --grid 7x7 --expect harmonic", tmp_path("mm.json")) == 1);
    }
    SUBCASE("negative control matches its catalog expectation") {
        CHECK(run_cli("verify small_sphere --grid 7x7", tmp_path("neg.json")) == 0);
    }
    SUBCASE("unknown surface exits 2") {
        CHECK(run_cli("verify not_a_surface", tmp_path("unk.json")) == 2);
    }
    SUBCASE("malformed surface file exits 2") {
        const std::string bad = tmp_path("bad.surface");
        std::ofstream(bad) << "dim = 3\nindex = 0\ndomain = u in [0,1], v in [0,1]\n"
                           << "x1 = u + * v\nx2 = v\nx3 = 1\n";
        CHECK(run_cli("verify " + bad, tmp_path("bad.json")) == 2);
    }
    SUBCASE("degenerate surface exits 3") {
        const std::string degenerate = tmp_path("deg.surface");
        std::ofstream(degenerate) << "dim = 4\nindex = 0\ndomain = u in [0,1], v in [0,1]\n"
                                  << "x1 = cos(u)\nx2 = sin(u)\nx3 = 0\nx4 = 0\n";
        CHECK(run_cli("verify " + degenerate, tmp_path("deg.json")) == 3);
    }
    SUBCASE("bad flags exit 2") {
        CHECK(run_cli("verify clifford --grid nonsense", tmp_path("flag.json")) == 2);
    }
}

TEST_CASE("reports are deterministic modulo wall time") {
    const std::string a = tmp_path("det_a.json"), b = tmp_path("det_b.json");
    REQUIRE(run_cli("verify clifford --grid 9x9", a) == 0);
    REQUIRE(run_cli("verify clifford --grid 9x9", b) == 0);
    const std::string body_a = slurp(a), body_b = slurp(b);
    CHECK(body_a != "");
    CHECK(strip_wall_time(body_a) == strip_wall_time(body_b));
    // and the only differing line is the wall time
    CHECK(body_a.find("wall_time_ms") != std::string::npos);
}

TEST_CASE("catalog commands") {
    SUBCASE("list names all six entries") {
        const std::string out = tmp_path("list.txt");
        REQUIRE(run_cli("catalog list", out) == 0);
        const std::string body = slurp(out);
        int lines = 0;
        for (char ch : body) lines += (ch == '\n');
        CHECK(lines == 6);
        CHECK(body.find("clifford") != std::string::npos);
        CHECK(body.find("small_sphere") != std::string::npos);
    }
    SUBCASE("export round-trips through verify") {
        const std::string surf = tmp_path("clifford.surface");
        REQUIRE(run_cli("catalog export clifford --out " + surf, tmp_path("exp.json")) == 0);
        CHECK(run_cli("verify " + surf + " --grid 7x7 --expect one_type",
                      tmp_path("rt.json")) == 0);
    }
    SUBCASE("unknown export exits 2") {
        CHECK(run_cli("catalog export nosuch", tmp_path("noex.json")) == 2);
    }
}

TEST_CASE("verify honors explicit sample ranges") {
    CHECK(run_cli("verify lightcone_example --grid 7x7 --u 0.2:0.9 --v 0.2:0.9",
                  tmp_path("rng.json")) == 0);
    const std::string body = slurp(tmp_path("rng.json"));
    CHECK(body.find("\"u0\": 0.2") != std::string::npos);
    CHECK(body.find("\"verdict\": \"harmonic\"") != std::string::npos);
}

TEST_CASE("construct subcommands produce matching artifacts") {
    SUBCASE("lemma2 writes a surface that re-verifies") {
        const std::string surf = tmp_path("lemma2.surface");
        const std::string rep = tmp_path("lemma2.json");
        REQUIRE(run_cli("construct lemma2 --branch index2 --a 2 --out " + surf +
                            " --report " + rep,
                        tmp_path("l2out.txt")) == 0);
        const std::string body = slurp(rep);
        CHECK(body.find("\"verdict\": \"one_type\"") != std::string::npos);
        CHECK(run_cli("verify " + surf + " --grid 7x7 --expect one_type",
                      tmp_path("l2rt.json")) == 0);
    }
    SUBCASE("lightcone example emits CSV with the right header") {
        const std::string csv = tmp_path("lc.csv");
        REQUIRE(run_cli("construct lightcone --curve example --grid 5x5 --csv " + csv,
                        tmp_path("lc.json")) == 0);
        const std::string body = slurp(csv);
        CHECK(body.rfind("u,v,x1,x2,x3,x4\n", 0) == 0);
    }
    SUBCASE("invalid curve exits 2") {
        const std::string curve = tmp_path("bad.curve");
        std::ofstream(curve) << "dim = 4\nindex = 1\ndomain = u in [0,1]\n"
                             << "z1 = cos(2*u)\nz2 = sin(2*u)\nz3 = 0\nz4 = 1\n";
        CHECK(run_cli("construct lightcone --curve " + curve, tmp_path("badc.json")) == 2);
    }
    SUBCASE("frobenius reports the drift and classifies harmonic") {
        const std::string rep = tmp_path("fro.json");
        REQUIRE(run_cli("construct frobenius --step 2e-3 --to 0.3,0.3 --grid 4x4 --report " +
                            rep,
                        tmp_path("fro.txt")) == 0);
        const std::string body = slurp(rep);
        CHECK(body.find("\"path_drift\"") != std::string::npos);
        CHECK(body.find("\"verdict\": \"harmonic\"") != std::string::npos);
    }
    SUBCASE("liouville emits the w grid as CSV") {
        const std::string csv = tmp_path("liouville.csv");
        REQUIRE(run_cli("construct liouville --n 17 --refine 1 --out " + csv,
                        tmp_path("lio.json")) == 0);
        CHECK(slurp(csv).rfind("u,v,w,residual\n", 0) == 0);
        const std::string body = slurp(tmp_path("lio.json"));
        CHECK(body.find("\"newton_iterations\"") != std::string::npos);
    }
}

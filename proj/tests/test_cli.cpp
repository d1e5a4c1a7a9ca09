#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "refgap/cli.hpp"

using namespace refgap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("refgap_test_" + std::to_string(SplitMix64(std::random_device{}()).next()));
        fs::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string file(const std::string& name, const std::string& content) {
        fs::path p = dir / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    std::string slurp(const std::string& name) const {
        std::ifstream in(dir / name);
        return std::string(std::istreambuf_iterator<char>(in), {});
    }
};

int run(std::vector<std::string> args) { return cli::cli_main(std::move(args)); }

} // namespace

TEST_CASE("cli check-proof exit codes") {
    TempDir td;
    std::string cnf = td.file("f.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    std::string good = td.file("good.rtrace", "1 | 1 | ax 1\n2 | -1 | ax 2\n3 |  | res 1 2 1\n");
    std::string bad = td.file("bad.rtrace", "1 | 1 | ax 1\n2 | -1 | ax 2\n3 |  | res 1 1 1\n");

    CHECK(run({"check-proof", "--cnf", cnf, "--proof", good, "--refutation"}) == 0);
    std::string rep = td.path("r.json");
    CHECK(run({"--report", rep, "check-proof", "--cnf", cnf, "--proof", bad}) == 1);
    auto body = nlohmann::json::parse(td.slurp("r.json"));
    CHECK(body["schema"] == 1);
    CHECK(body["outcome"] == "rejected");
    CHECK(body["params"]["reason"] == "bad-pivot");
    CHECK(body["params"]["line"] == 3);

    CHECK(run({"check-proof", "--cnf", cnf}) == 2);            // missing --proof
    CHECK(run({"check-proof", "--bogus-flag"}) == 2);          // unknown flag
    CHECK(run({"nonsense"}) == 2);                             // unknown subcommand
    CHECK(run({"check-proof", "--cnf", td.path("absent.cnf"), "--proof", good}) == 2);
}

TEST_CASE("cli fulltree, check-struct, encode round trip") {
    TempDir td;
    std::string cnf = td.file("f.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    std::string st = td.path("f.struct");
    CHECK(run({"fulltree", "--cnf", cnf, "-o", st}) == 0);
    CHECK(run({"check-struct", "--cnf", cnf, "--struct", st}) == 0);

    // a satisfiable input yields a model and exit 1
    std::string sat = td.file("sat.cnf", "p cnf 1 1\n1 0\n");
    std::string model = td.path("m.assign");
    CHECK(run({"fulltree", "--cnf", sat, "-o", td.path("unused.struct"), "--model", model}) == 1);
    CHECK(td.slurp("m.assign") == "1 1\n");

    // corrupt one structure entry: validation fails with exit 1
    std::string bad = td.file("bad.struct", [&] {
        std::string text = td.slurp("f.struct");
        size_t sec = text.find("L:\n");
        REQUIRE(sec != std::string::npos);
        size_t pos = text.find("3 1\n", sec);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 4, "3 2\n");
        return text;
    }());
    std::string rep = td.path("cs.json");
    CHECK(run({"--report", rep, "check-struct", "--cnf", cnf, "--struct", bad}) == 1);
    auto body = nlohmann::json::parse(td.slurp("cs.json"));
    CHECK(body["outcome"] == "violation");

    std::string out = td.path("ref.cnf");
    std::string map = td.path("ref.map");
    std::string tags = td.path("ref.tags");
    CHECK(run({"encode", "ref", "--cnf", cnf, "-s", "3", "-o", out, "--map", map, "--tags",
               tags}) == 0);
    std::ifstream enc(out);
    Cnf ref = parse_dimacs(enc);
    CHECK(ref == encode_ref(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"), 3).cnf);
    CHECK(td.slurp("ref.tags").find("1 A1\n") == 0);
    CHECK(td.slurp("ref.map").find("c n=1 m=2 s=3 kind=ref") == 0);
}

TEST_CASE("cli solve and witness") {
    TempDir td;
    std::string cnf = td.file("f.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
    std::string model = td.path("m.assign");
    CHECK(run({"solve", "--cnf", cnf, "--model", model}) == 0);

    std::string unsat = td.file("u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    CHECK(run({"solve", "--cnf", unsat}) == 1);

    std::string proof = td.path("w.rtrace");
    std::string rep = td.path("w.json");
    CHECK(run({"--report", rep, "witness", "--cnf", cnf, "--model", model, "-s", "2", "-o",
               proof}) == 0);
    auto body = nlohmann::json::parse(td.slurp("w.json"));
    CHECK(body["params"]["resolvent_lines"] == body["params"]["cut_count"]);

    // the emitted trace checks out against the encoded premises
    std::string prem = td.path("rref.cnf");
    CHECK(run({"encode", "rref", "--cnf", cnf, "-s", "2", "-o", prem}) == 0);
    CHECK(run({"check-proof", "--cnf", prem, "--proof", proof, "--refutation"}) == 0);

    // and the primed variant against the primed premises
    std::string proofp = td.path("wp.rtrace");
    std::string premp = td.path("rrefp.cnf");
    CHECK(run({"witness", "--cnf", cnf, "--model", model, "-s", "2", "-o", proofp,
               "--rref-prime"}) == 0);
    CHECK(run({"encode", "rref-prime", "--cnf", cnf, "-s", "2", "-o", premp}) == 0);
    CHECK(run({"check-proof", "--cnf", premp, "--proof", proofp, "--refutation"}) == 0);
}

TEST_CASE("cli restrict is seed-reproducible") {
    TempDir td;
    std::string cnf = td.file("f.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
    std::string model = td.path("m.assign");
    REQUIRE(run({"solve", "--cnf", cnf, "--model", model}) == 0);
    std::string proof = td.path("w.rtrace");
    REQUIRE(run({"witness", "--cnf", cnf, "--model", model, "-s", "8", "-o", proof}) == 0);

    CHECK(run({"--seed", "5", "restrict", "--cnf", cnf, "-t", "8", "--proof", proof, "-o",
               td.path("out1"), "-w", "2"}) == 0);
    CHECK(run({"--seed", "5", "restrict", "--cnf", cnf, "-t", "8", "--proof", proof, "-o",
               td.path("out2"), "-w", "2"}) == 0);
    CHECK(td.slurp("out1/restriction.txt") == td.slurp("out2/restriction.txt"));
    CHECK_FALSE(td.slurp("out1/restriction.txt").empty());
}

TEST_CASE("cli reduce and decide") {
    TempDir td;
    std::string cnf = td.file("f.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
    std::string out = td.path("g.cnf");
    std::string params = td.path("g.json");
    CHECK(run({"reduce", "--cnf", cnf, "-o", out, "--params", params}) == 0);
    auto body = nlohmann::json::parse(td.slurp("g.json"));
    CHECK(body["s"] == 52);
    CHECK(body["variant"] == "rref");

    CHECK(run({"decide", "--cnf", cnf, "--searcher", "witness", "--budget", "100000"}) == 0);
    std::string unsat = td.file("u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    CHECK(run({"decide", "--cnf", unsat, "--searcher", "witness", "--budget", "100000"}) == 1);
    CHECK(run({"decide", "--cnf", cnf, "--searcher", "bogus"}) == 2);
}

TEST_CASE("cli claims") {
    TempDir td;
    std::string rep = td.path("claims.json");
    CHECK(run({"--seed", "3", "--report", rep, "claims", "--n", "7", "--w", "2", "--trials",
               "50"}) == 0);
    auto body = nlohmann::json::parse(td.slurp("claims.json"));
    CHECK(body["outcome"] == "pass");
    CHECK(body["params"]["s"] == 84);
    CHECK(body["params"]["axiom_consistency"]["violations"] == 0);
}

TEST_CASE("cli audit") {
    TempDir td;
    // the canonical unsatisfiable 7-variable input
    Cnf f = canonical_unsat_cnf(7);
    std::string cnf = td.file("f7.cnf", emit_dimacs(f));
    std::string proof = td.file("one.rtrace", "1 |  | ax 1\n");
    std::string rep = td.path("audit.json");
    CHECK(run({"--report", rep, "audit", "--cnf", cnf, "-s", "84", "-w", "2", "--proof",
               proof}) == 0);
    auto body = nlohmann::json::parse(td.slurp("audit.json"));
    CHECK(body["outcome"] == "contradiction");
    CHECK(body["params"]["line"] == 1);

    Cnf f4 = canonical_unsat_cnf(4);
    std::string cnf4 = td.file("f4.cnf", emit_dimacs(f4));
    CHECK(run({"audit", "--cnf", cnf4, "-s", "48", "-w", "2", "--proof", proof}) == 2);
}

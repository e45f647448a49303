#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "nss/cli.hpp"

using namespace nss;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/nss_cli_test_" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

Json matrix_json(int rows, int cols, const std::vector<std::string>& entries) {
    Json j;
    j["field"] = "Q";
    j["rows"] = rows;
    j["cols"] = cols;
    j["entries"] = entries;
    return j;
}

}  // namespace

TEST_CASE("field specs parse or reject") {
    CHECK(parse_field_spec("Q").rational);
    FieldChoice fc = parse_field_spec("Fp:11");
    CHECK_FALSE(fc.rational);
    CHECK(fc.p == 11);
    CHECK_THROWS_AS(parse_field_spec("Fp:abc"), InvalidParameterError);
    CHECK_THROWS_AS(parse_field_spec("Fp:7x"), InvalidParameterError);
    CHECK_THROWS_AS(parse_field_spec("R"), InvalidParameterError);
    CHECK_THROWS_AS(parse_field_spec(""), InvalidParameterError);
}

TEST_CASE("error type names drop namespace and suffix") {
    try {
        throw ShapeMismatchError("x");
    } catch (const std::exception& e) {
        CHECK(error_type_name(e) == "ShapeMismatch");
    }
    try {
        throw BudgetExceededError("x", 1);
    } catch (const std::exception& e) {
        CHECK(error_type_name(e) == "BudgetExceeded");
    }
}

TEST_CASE("expand runs a seeded instance over both fields") {
    RunConfig cfg;
    cfg.command = "expand";
    cfg.k = 2;
    cfg.seed = 417;
    Json q = cmd_expand(cfg);
    CHECK(q["holds"].get<bool>());
    CHECK(q["agrees"].get<bool>());
    CHECK(q["expansion"]["term_count"].get<int>() == 6);

    cfg.field = "Fp:7";
    cfg.seed = 42;
    Json fp = cmd_expand(cfg);
    CHECK(fp["holds"].get<bool>());
    CHECK(fp["expansion"]["field"].get<std::string>() == "Fp:7");
}

TEST_CASE("expand reads matrices from a file") {
    Json in;
    in["A"] = matrix_json(1, 1, {"2"});
    in["B"] = matrix_json(1, 1, {"3"});
    RunConfig cfg;
    cfg.command = "expand";
    cfg.input_path = write_temp("expand_in.json", in.dump());
    Json rep = cmd_expand(cfg);
    CHECK(rep["expansion"]["total"].get<std::string>() == "5");
    CHECK(rep["direct"].get<std::string>() == "5");
    CHECK(rep["holds"].get<bool>());
    std::remove(cfg.input_path.c_str());
}

TEST_CASE("expand maps malformed input to usage errors") {
    Json in;
    in["A"] = matrix_json(2, 1, {"2", "1"});
    in["B"] = matrix_json(1, 1, {"3"});
    RunConfig cfg;
    cfg.command = "expand";
    cfg.input_path = write_temp("expand_bad.json", in.dump());
    CliResult res = run_command(cfg);
    CHECK(res.exit_code == 2);
    CHECK(res.report["error"]["type"].get<std::string>() == "NonSquare");
    std::remove(cfg.input_path.c_str());

    cfg.input_path = "/nonexistent/nss.json";
    CHECK(run_command(cfg).exit_code == 2);

    cfg.input_path = write_temp("expand_syntax.json", "{ not json");
    CHECK(run_command(cfg).exit_code == 2);
    std::remove(cfg.input_path.c_str());

    cfg.input_path.clear();
    cfg.k = 0;
    CHECK(run_command(cfg).exit_code == 2);
    cfg.k = 9;
    CHECK(run_command(cfg).exit_code == 2);
}

TEST_CASE("rank-bound holds on seeded families and the diagonal family") {
    RunConfig cfg;
    cfg.command = "rank-bound";
    cfg.k = 2;
    cfg.n = 50;
    cfg.seed = 1;
    Json rep = cmd_rank_bound(cfg);
    CHECK(rep["holds"].get<bool>());
    CHECK(rep["rank"].get<int>() <= 6);
    CHECK(rep["bound"].get<std::string>() == "6");
    CHECK(rep["n"].get<int>() == 50);

    RunConfig e1;
    e1.command = "rank-bound";
    e1.example1 = true;
    e1.k = 4;
    Json de = cmd_rank_bound(e1);
    CHECK(de["rank"].get<int>() == 16);
    CHECK(de["rank_equals_2k"].get<bool>());
    CHECK(de["holds"].get<bool>());

    RunConfig one;
    one.command = "rank-bound";
    one.k = 3;
    one.n = 1;
    one.seed = 9;
    CHECK(cmd_rank_bound(one)["holds"].get<bool>());
}

TEST_CASE("rank-bound accepts a family file") {
    Example1Family fam = example1(2, 1);
    Json in;
    Json members = Json::array();
    for (const auto& m : fam.members) members.push_back(matrix_to_json(m));
    in["family"] = members;
    RunConfig cfg;
    cfg.command = "rank-bound";
    cfg.input_path = write_temp("rank_in.json", in.dump());
    Json rep = cmd_rank_bound(cfg);
    CHECK(rep["rank"].get<int>() == 4);
    CHECK(rep["holds"].get<bool>());
    std::remove(cfg.input_path.c_str());
}

TEST_CASE("theorem command covers both statements") {
    RunConfig t1;
    t1.command = "theorem";
    t1.which = 1;
    t1.example1 = true;
    t1.k = 2;
    t1.s = 1;
    Json r1 = cmd_theorem(t1);
    CHECK(r1["holds"].get<bool>());
    CHECK(r1["counts"]["holds"].get<bool>());
    CHECK(r1["theorem1"]["diagonal_is_matching"].get<bool>());

    RunConfig t2;
    t2.command = "theorem";
    t2.which = 2;
    t2.example2 = true;
    t2.k = 2;
    t2.s = 2;
    Json r2 = cmd_theorem(t2);
    CHECK(r2["holds"].get<bool>());
    CHECK(r2["counts"]["edges"].get<long>() == 32);
    CHECK(r2["counts"]["expected"].get<long>() == 4);
    CHECK(r2["theorem2"]["perfect_matching"].get<bool>());

    RunConfig rnd;
    rnd.command = "theorem";
    rnd.which = 2;
    rnd.k = 2;
    rnd.n = 10;
    rnd.seed = 23;
    CHECK(cmd_theorem(rnd)["holds"].get<bool>());

    RunConfig fp;
    fp.command = "theorem";
    fp.which = 2;
    fp.field = "Fp:101";
    fp.k = 2;
    fp.n = 8;
    fp.seed = 5;
    CHECK(cmd_theorem(fp)["holds"].get<bool>());
}

TEST_CASE("theorem rejects bad parameter combinations") {
    RunConfig cfg;
    cfg.command = "theorem";
    cfg.which = 3;
    CHECK(run_command(cfg).exit_code == 2);

    cfg.which = 1;
    cfg.example2 = true;
    CliResult res = run_command(cfg);
    CHECK(res.exit_code == 2);
    CHECK(res.report["error"]["type"].get<std::string>() == "InvalidParameter");

    RunConfig fp2;
    fp2.command = "theorem";
    fp2.which = 2;
    fp2.field = "Fp:2";
    fp2.k = 2;
    fp2.n = 6;
    CliResult r2 = run_command(fp2);
    CHECK(r2.exit_code == 2);
    CHECK(r2.report["error"]["type"].get<std::string>() == "CharacteristicTwo");
}

TEST_CASE("clique command handles the group experiment and auxiliary graphs") {
    RunConfig sl2;
    sl2.command = "clique";
    sl2.sl2 = true;
    sl2.q = 3;
    Json rep = cmd_clique(sl2);
    CHECK(rep["holds"].get<bool>());
    CHECK_FALSE(rep["budget_exceeded"].get<bool>());
    CHECK(rep["experiment"]["nonsingular_sum"]["omega"].get<int>() == 5);
    CHECK(rep["experiment"]["singular_sum"]["omega"].get<int>() == 3);

    RunConfig aux;
    aux.command = "clique";
    aux.aux = true;
    aux.example1 = true;
    aux.k = 2;
    Json a = cmd_clique(aux);
    CHECK(a["omega"].get<int>() == 4);
    CHECK(a["strategies_agree"].get<bool>());
    CHECK(a["clique_rank_link_ok"].get<bool>());
    CHECK(a["holds"].get<bool>());

    RunConfig both;
    both.command = "clique";
    CHECK(run_command(both).exit_code == 2);
    both.sl2 = both.aux = true;
    CHECK(run_command(both).exit_code == 2);
}

TEST_CASE("flats command runs all three checks") {
    RunConfig lemma;
    lemma.command = "flats";
    lemma.lemma = true;
    lemma.from_example2 = true;
    lemma.k = 2;
    lemma.s = 2;
    lemma.seed = 3;
    Json lr = cmd_flats(lemma);
    CHECK(lr["holds"].get<bool>());
    CHECK(lr["lemma"]["n"].get<int>() == 8);
    CHECK(lr["lemma"]["single_point_cross_pairs"].get<long>() == 32);

    RunConfig removal;
    removal.command = "flats";
    removal.removal = true;
    removal.n = 20;
    removal.seed = 7;
    Json rr = cmd_flats(removal);
    CHECK(rr["holds"].get<bool>());
    CHECK(rr["removal"]["delta"].get<std::string>() == "7/40");

    RunConfig cor;
    cor.command = "flats";
    cor.corollary = true;
    cor.n = 14;
    cor.outliers = 2;
    cor.seed = 9;
    Json cr = cmd_flats(cor);
    CHECK(cr["holds"].get<bool>());
    CHECK(cr["corollary"]["normal"] == Json::array({"0", "0", "0", "1"}));
    CHECK(cr["corollary"]["all_survivors_contained"].get<bool>());

    RunConfig none;
    none.command = "flats";
    CHECK(run_command(none).exit_code == 2);
    none.lemma = none.removal = true;
    CHECK(run_command(none).exit_code == 2);
}

TEST_CASE("a supplied family with a violated invariant exits 1") {
    Json fam = Json::array();
    Json flat_f;
    flat_f["A"] = matrix_json(2, 2, {"1", "0", "0", "1"});
    flat_f["v"] = Json::array({"0", "0"});
    Json flat_e;
    flat_e["A"] = matrix_json(2, 2, {"1", "0", "0", "1"});
    flat_e["v"] = Json::array({"1", "1"});
    fam.push_back(Json{{"F", flat_f}, {"E", flat_e}});

    RunConfig cfg;
    cfg.command = "flats";
    cfg.lemma = true;
    cfg.input_path = write_temp("parallel_pair.json", fam.dump());
    CliResult res = run_command(cfg);
    CHECK(res.exit_code == 1);
    CHECK(res.report["error"]["type"].get<std::string>() == "InvariantViolation");
    std::remove(cfg.input_path.c_str());
}

TEST_CASE("selftest reports are deterministic per seed") {
    RunConfig cfg;
    cfg.command = "selftest";
    cfg.quick = true;
    cfg.seed = 5;
    Json first = cmd_selftest(cfg);
    Json second = cmd_selftest(cfg);
    CHECK(first.dump() == second.dump());
    CHECK(first["holds"].get<bool>());
    CHECK(first["suites"].size() == 7);
    for (const auto& [name, suite] : first["suites"].items()) {
        INFO(name);
        CHECK(suite["holds"].get<bool>());
    }

    cfg.seed = 6;
    Json shifted = cmd_selftest(cfg);
    CHECK(shifted["holds"].get<bool>());
}

TEST_CASE("the driver maps outcomes to exit codes") {
    RunConfig bad;
    bad.command = "no-such-command";
    CliResult res = run_command(bad);
    CHECK(res.exit_code == 2);
    CHECK(res.report["error"]["type"].get<std::string>() == "InvalidParameter");

    RunConfig ok;
    ok.command = "expand";
    ok.k = 1;
    ok.seed = 2;
    CliResult good = run_command(ok);
    CHECK(good.exit_code == 0);
    CHECK(good.report["holds"].get<bool>());
}

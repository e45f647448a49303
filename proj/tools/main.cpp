// nss: exact verification of determinant-of-sum properties from the command
// line. Every report is a JSON object on stdout; exit codes are 0 when all
// checked properties hold, 1 on a property violation, 2 on a usage or input
// error, 3 when a search budget runs out.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "nss/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact checks for sums of nonsingular matrices"};
    app.require_subcommand(1);
    nss::RunConfig cfg;

    app.add_option("--field", cfg.field, "scalar field: Q or Fp:<p> (default Q)");
    app.add_option("--seed", cfg.seed, "seed for generated instances (default 0)");
    app.add_option("--json", cfg.json_path, "also write the report to this file");
    app.add_option("--input", cfg.input_path, "read the instance from this JSON file");

    CLI::App* expand = app.add_subcommand("expand", "2^(2k)-term expansion of det(A+B) vs the direct determinant");
    expand->add_option("--k", cfg.k, "matrix size (1..8)");

    CLI::App* rank = app.add_subcommand("rank-bound", "rank of the det(A_i + B_j) matrix against C(2k, k)");
    rank->add_option("--k", cfg.k, "matrix size (1..8)");
    rank->add_option("--n", cfg.n, "family size (1..128)");
    rank->add_option("--s", cfg.s, "entry range for the diagonal family");
    rank->add_flag("--example1", cfg.example1, "use the diagonal +-1 family; adds the rank = 2^k check");

    CLI::App* theorem = app.add_subcommand("theorem", "threshold statements for one or two families");
    theorem->add_option("--which", cfg.which, "1 or 2");
    theorem->add_option("--k", cfg.k, "matrix size (1..8)");
    theorem->add_option("--n", cfg.n, "family size (1..64)");
    theorem->add_option("--s", cfg.s, "entry range for the worked families");
    theorem->add_flag("--example1", cfg.example1, "use the diagonal +-1 family");
    theorem->add_flag("--example2", cfg.example2, "use the paired antidiagonal family (--which 2 only)");

    CLI::App* clique = app.add_subcommand("clique", "clique searches on sum graphs");
    clique->add_option("--q", cfg.q, "prime for the 2x2 determinant-one group (--sl2)");
    clique->add_option("--k", cfg.k, "matrix size for --aux");
    clique->add_option("--n", cfg.n, "family size for --aux (1..64)");
    clique->add_option("--s", cfg.s, "entry range for --example1");
    clique->add_flag("--sl2", cfg.sl2, "clique numbers of the nonsingular- and singular-sum graphs");
    clique->add_flag("--aux", cfg.aux, "exact clique of a family's auxiliary graph, two strategies");
    clique->add_flag("--example1", cfg.example1, "use the diagonal +-1 family for --aux");

    CLI::App* flats = app.add_subcommand("flats", "pair counts and removal for d-flats in R^(2d)");
    flats->add_option("--n", cfg.n, "number of flats (or pairs)");
    flats->add_option("--d", cfg.d, "flat dimension (1..2)");
    flats->add_option("--k", cfg.k, "matrix size for --from-example2");
    flats->add_option("--s", cfg.s, "entry range for --from-example2");
    flats->add_option("--outliers", cfg.outliers, "flats off the hyperplane (--corollary)");
    flats->add_option("--generic", cfg.generic, "generic flats in the removal arrangement");
    flats->add_flag("--lemma", cfg.lemma, "single-point pair count against n^2 / 4^d");
    flats->add_flag("--removal", cfg.removal, "matching-based removal chain");
    flats->add_flag("--corollary", cfg.corollary, "hyperplane cover for 2-flats in R^4");
    flats->add_flag("--from-example2", cfg.from_example2, "derive the pairs from the antidiagonal family");

    CLI::App* selftest = app.add_subcommand("selftest", "run the whole property suite at desk scale");
    selftest->add_flag("--quick", cfg.quick, "reduced sizes (default)");
    selftest->add_flag("--full", cfg.full, "adds k = 6 ranks and the q = 7 experiment");

    for (CLI::App* sub : {expand, rank, theorem, clique, flats, selftest}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    nss::CliResult result = nss::run_command(cfg);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    result.report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

    const std::string text = result.report.dump(2);
    std::cout << text << "\n";
    if (!cfg.json_path.empty()) {
        std::ofstream out(cfg.json_path);
        if (!out) {
            std::cerr << "cannot write report to '" << cfg.json_path << "'\n";
            return 2;
        }
        out << text << "\n";
    }
    return result.exit_code;
}

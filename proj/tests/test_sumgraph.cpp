#include <catch2/catch_amalgamated.hpp>

#include "nss/constructions.hpp"
#include "nss/random.hpp"
#include "nss/sumgraph.hpp"
#include "oracles.hpp"

using namespace nss;

namespace {

std::vector<std::vector<bool>> random_adjacency(SplitMix64& rng, int n, int density_pct) {
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rng.below(100) < static_cast<std::uint64_t>(density_pct);
    return adj;
}

std::vector<Matrix<Rational>> one_by_one(std::initializer_list<long> vals) {
    std::vector<Matrix<Rational>> fam;
    for (long v : vals) {
        Matrix<Rational> m(1, 1, RationalField{});
        m.at(0, 0) = Rational(v);
        fam.push_back(std::move(m));
    }
    return fam;
}

}  // namespace

TEST_CASE("bipartite graph from a single nonsingular matrix") {
    SplitMix64 rng(1);
    std::vector<Matrix<Rational>> fam{random_nonsingular_rational(rng, 2)};
    auto g = build_bipartite_graph(fam, fam);
    REQUIRE(g.h.n == 1);
    CHECK(g.adj[0][0]);  // det(2A) != 0 away from characteristic 2
    CHECK(g.edge_count == 1);
    CHECK(g.characteristic_ok);
}

TEST_CASE("bipartite graph of the paired placement family is the identity pattern") {
    auto fam = example2(2, 1, true);
    auto g = build_bipartite_graph(fam.left, fam.right);
    for (int i = 0; i < g.h.n; ++i)
        for (int j = 0; j < g.h.n; ++j)
            CHECK(g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == (i == j));
}

TEST_CASE("characteristic-2 self-sum has no edge and the guard flags it") {
    PrimeField f2(2);
    std::vector<Matrix<Fp>> fam{Matrix<Fp>::identity(2, f2)};
    auto g = build_bipartite_graph(fam, fam);
    CHECK_FALSE(g.adj[0][0]);  // A + A = 0 in characteristic 2
    CHECK_FALSE(g.characteristic_ok);
}

TEST_CASE("hopcroft-karp frozen cases") {
    std::vector<std::vector<bool>> identity5(5, std::vector<bool>(5, false));
    for (int i = 0; i < 5; ++i) identity5[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
    CHECK(hopcroft_karp(identity5).pairs.size() == 5);

    std::vector<std::vector<bool>> empty5(5, std::vector<bool>(5, false));
    CHECK(hopcroft_karp(empty5).pairs.empty());

    std::vector<std::vector<bool>> complete5(5, std::vector<bool>(5, true));
    auto m = hopcroft_karp(complete5);
    CHECK(m.pairs.size() == 5);
    std::vector<bool> right_used(5, false);
    for (const auto& [u, v] : m.pairs) {
        CHECK_FALSE(right_used[static_cast<std::size_t>(v)]);
        right_used[static_cast<std::size_t>(v)] = true;
    }
}

TEST_CASE("hopcroft-karp equals brute force on 100 seeded graphs") {
    SplitMix64 rng(88);
    for (int rep = 0; rep < 100; ++rep) {
        int n = static_cast<int>(rng.below(8)) + 1;
        auto adj = random_adjacency(rng, n, 40);
        auto m = hopcroft_karp(adj);
        std::vector<bool> lu(static_cast<std::size_t>(n), false), ru(static_cast<std::size_t>(n), false);
        for (const auto& [u, v] : m.pairs) {
            CHECK(adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
            CHECK_FALSE(lu[static_cast<std::size_t>(u)]);
            CHECK_FALSE(ru[static_cast<std::size_t>(v)]);
            lu[static_cast<std::size_t>(u)] = ru[static_cast<std::size_t>(v)] = true;
        }
        std::vector<std::vector<int>> lists(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    lists[static_cast<std::size_t>(i)].push_back(j);
        CHECK(static_cast<int>(m.pairs.size()) == oracles::brute_max_matching(lists));
    }
}

TEST_CASE("auxiliary graph needs both transposed entries to vanish") {
    auto no_zero = build_h_matrix(one_by_one({1, 2}), one_by_one({3, 5}));
    CHECK(build_auxiliary_graph(no_zero).edges.empty());

    // h = [[4, 0], [5, 1]]: h_12 = 0 but h_21 != 0, so no edge
    auto half = build_h_matrix(one_by_one({1, 2}), one_by_one({3, -1}));
    REQUIRE(half.entries.at(0, 1).is_zero());
    REQUIRE_FALSE(half.entries.at(1, 0).is_zero());
    CHECK(build_auxiliary_graph(half).edges.empty());

    auto fam = example1(2, 1);
    auto aux = build_auxiliary_graph(build_h_matrix(fam.members, fam.members));
    CHECK(aux.edges.size() == 6);  // complete graph on 4 vertices
}

TEST_CASE("greedy maximal matching and its cover") {
    AuxiliaryGraph edgeless{3, {}, std::vector<std::vector<bool>>(3, std::vector<bool>(3, false))};
    auto r0 = greedy_maximal_matching(edgeless);
    CHECK(r0.matching.pairs.empty());
    CHECK(r0.cover.size == 0);

    AuxiliaryGraph single{3, {{0, 1}}, {}};
    auto r1 = greedy_maximal_matching(single);
    REQUIRE(r1.matching.pairs.size() == 1);
    CHECK(r1.cover.vertices == std::vector<int>{0, 1});

    // path 1-2-3: lexicographic scan takes the first edge only
    AuxiliaryGraph path{3, {{0, 1}, {1, 2}}, {}};
    auto r2 = greedy_maximal_matching(path);
    REQUIRE(r2.matching.pairs.size() == 1);
    CHECK(r2.matching.pairs[0] == std::make_pair(0, 1));
    CHECK(r2.cover.vertices == std::vector<int>{0, 1});
    CHECK(r2.cover.size == 2);
}

TEST_CASE("greedy cover is a cover and sits between the bounds") {
    SplitMix64 rng(414);
    for (int rep = 0; rep < 40; ++rep) {
        int n = static_cast<int>(rng.below(6)) + 4;  // up to 9 vertices
        AuxiliaryGraph g{n, {}, std::vector<std::vector<bool>>(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false))};
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.below(100) < 30) {
                    g.edges.emplace_back(i, j);
                    g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
                    g.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
                }
        auto r = greedy_maximal_matching(g);
        std::vector<bool> in_cover(static_cast<std::size_t>(n), false);
        for (int v : r.cover.vertices) in_cover[static_cast<std::size_t>(v)] = true;
        for (const auto& [u, v] : g.edges)
            CHECK((in_cover[static_cast<std::size_t>(u)] || in_cover[static_cast<std::size_t>(v)]));
        CHECK(r.cover.size == 2 * static_cast<int>(r.matching.pairs.size()));

        // min vertex cover via subset brute force; greedy cover can't beat it
        int best_cover = n;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            bool covers = true;
            for (const auto& [u, v] : g.edges)
                if (!((mask >> u) & 1u) && !((mask >> v) & 1u)) {
                    covers = false;
                    break;
                }
            if (covers) best_cover = std::min(best_cover, __builtin_popcount(mask));
        }
        CHECK(best_cover <= r.cover.size);
    }
}

TEST_CASE("exact clique search frozen cases") {
    auto fam = example1(2, 1);
    auto aux = build_auxiliary_graph(build_h_matrix(fam.members, fam.members));
    CHECK(exact_max_clique(aux).size() == 4);  // K4

    AuxiliaryGraph edgeless{6, {}, {}};
    CHECK(exact_max_clique(edgeless).size() == 1);

    AuxiliaryGraph too_big{65, {}, {}};
    CHECK_THROWS_AS(exact_max_clique(too_big), InvalidParameterError);
}

TEST_CASE("clique search matches the subset oracle on a seeded 20-vertex graph") {
    SplitMix64 rng(2020);
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 20;
        AuxiliaryGraph g{n, {}, std::vector<std::vector<bool>>(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false))};
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.below(100) < 35) {
                    g.edges.emplace_back(i, j);
                    g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
                    g.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
                }
        auto clique = exact_max_clique(g);
        CHECK(static_cast<int>(clique.size()) == oracles::brute_max_clique(g.adj));
    }
}

TEST_CASE("clique search respects its node budget") {
    SplitMix64 rng(3131);
    const int n = 40;
    AuxiliaryGraph g{n, {}, std::vector<std::vector<bool>>(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false))};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.below(100) < 80) {
                g.edges.emplace_back(i, j);
                g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
                g.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
            }
    CHECK_THROWS_AS(exact_max_clique(g, -1, 3), BudgetExceededError);
}

TEST_CASE("the two clique engines agree on seeded graphs") {
    SplitMix64 rng(515);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 24;
        BitGraph bg(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.below(100) < 50) bg.add_edge(i, j);
        auto a = detail::ColoredCliqueEngine(bg, n, kCliqueNodeBudget).run();
        auto b = detail::ComplementMisEngine(bg, n, kCliqueNodeBudget).run();
        REQUIRE_FALSE(a.budget_exceeded);
        REQUIRE_FALSE(b.budget_exceeded);
        CHECK(a.vertices.size() == b.vertices.size());
        CHECK(detail::is_clique(bg, a.vertices));
        CHECK(detail::is_clique(bg, b.vertices));
    }
}

TEST_CASE("diagonal submatrix check") {
    auto fam = example1(2, 1);
    auto h = build_h_matrix(fam.members, fam.members);
    CHECK(diagonal_submatrix_check(h, {0}));
    CHECK(diagonal_submatrix_check(h, {0, 1, 2, 3}));  // H diagonal, all h_ii != 0

    auto mixed = build_h_matrix(one_by_one({1, 2}), one_by_one({-1, 3}));
    REQUIRE(mixed.entries.at(0, 0).is_zero());
    CHECK_FALSE(diagonal_submatrix_check(mixed, {0}));
    CHECK_THROWS_AS(diagonal_submatrix_check(mixed, {7}), IndexOutOfRangeError);
}

TEST_CASE("clique of the auxiliary graph bounds the rank of H from below") {
    SplitMix64 rng(616);
    for (int rep = 0; rep < 10; ++rep) {
        auto [fa, fb] = random_diagonal_matched_family(rng, 10, 2);
        auto h = build_h_matrix(fa, fb);
        auto aux = build_auxiliary_graph(h);
        auto clique = exact_max_clique(aux);
        CHECK(diagonal_submatrix_check(h, clique));
        CHECK(static_cast<int>(clique.size()) <= rank(h.entries));
    }
}

TEST_CASE("theorem 2 on the extended placement family") {
    auto fam = example2(2, 2);
    auto rep = verify_theorem2(fam.left, fam.right);
    CHECK(rep.n == 8);
    CHECK(rep.perfect_matching);
    CHECK_FALSE(rep.restricted);
    CHECK(rep.edge_count == 32);  // 2s * n
    CHECK(rep.pow4k == 16);
    CHECK(rep.lower_bound_num == 64);  // bound n^2/4^k = 4 <= 32
    CHECK(rep.holds);
    CHECK(rep.clique_rank_link_ok);
    CHECK(rep.turan_consistent);
}

TEST_CASE("theorem 2 on a single pair and on forced-diagonal random families") {
    SplitMix64 rng(717);
    auto [fa, fb] = random_diagonal_matched_family(rng, 1, 2);
    auto rep1 = verify_theorem2(fa, fb);
    CHECK(rep1.n == 1);
    CHECK(rep1.holds);

    for (int rep = 0; rep < 3; ++rep) {
        auto [ga, gb] = random_diagonal_matched_family(rng, 32, 2);
        auto r = verify_theorem2(ga, gb);
        CHECK(r.perfect_matching);
        CHECK(r.holds);
        CHECK(r.clique_rank_link_ok);
        CHECK(r.turan_consistent);
    }
}

TEST_CASE("theorem 2 degrades to the matched subfamilies") {
    // left sums with every right vertex singular except via the first member
    auto fa = one_by_one({1, 1});
    auto fb = one_by_one({-1, 2});
    // h = [[0, 3], [0, 3]]: only right vertex 2 reachable, max matching 1
    auto rep = verify_theorem2(fa, fb);
    CHECK(rep.matching_size == 1);
    CHECK_FALSE(rep.perfect_matching);
    CHECK(rep.restricted);
    CHECK(rep.n == 1);
    CHECK(rep.holds);
}

TEST_CASE("theorem 2 rejects characteristic 2") {
    PrimeField f2(2);
    std::vector<Matrix<Fp>> fam{Matrix<Fp>::identity(1, f2)};
    CHECK_THROWS_AS(verify_theorem2(fam, fam), CharacteristicTwoError);
}

TEST_CASE("theorem 1 on the diagonal family") {
    auto fam = example1(2, 1);
    auto rep = verify_theorem1(fam.members);
    CHECK(rep.diagonal_is_matching);
    CHECK(rep.t2.perfect_matching);
    CHECK(rep.t2.edge_count == 4);  // |M|(2s-1) ordered nonsingular pairs
    CHECK(rep.t2.holds);

    SplitMix64 rng(818);
    std::vector<Matrix<Rational>> single{random_nonsingular_rational(rng, 3)};
    CHECK(verify_theorem1(single).t2.holds);
}

TEST_CASE("theorem 1 rejects singular members and characteristic 2") {
    auto fam = one_by_one({1, 0, 2});
    try {
        verify_theorem1(fam);
        FAIL("expected SingularMemberError");
    } catch (const SingularMemberError& e) {
        CHECK(e.index == 1);
    }
    PrimeField f2(2);
    std::vector<Matrix<Fp>> f2fam{Matrix<Fp>::identity(1, f2)};
    CHECK_THROWS_AS(verify_theorem1(f2fam), CharacteristicTwoError);
}

TEST_CASE("sl2 enumeration sizes and membership") {
    auto s3 = enumerate_sl2(3);
    CHECK(s3.size() == 24);
    auto s5 = enumerate_sl2(5);
    CHECK(s5.size() == 120);
    PrimeField f5(5);
    for (const auto& m : s5) CHECK(det(m) == f5.one());
    for (std::size_t i = 0; i + 1 < s3.size(); ++i) CHECK_FALSE(s3[i] == s3[i + 1]);
    CHECK_THROWS_AS(enumerate_sl2(17), BudgetExceededError);
    CHECK_THROWS_AS(enumerate_sl2(4), NonPrimeModulusError);
}

TEST_CASE("identity-neighborhood reduction matches whole-graph search at q = 3") {
    auto sl2 = enumerate_sl2(3);
    const int n = static_cast<int>(sl2.size());
    BitGraph nonsing(n), sing(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (det(sl2[static_cast<std::size_t>(i)] + sl2[static_cast<std::size_t>(j)]).is_zero())
                sing.add_edge(i, j);
            else
                nonsing.add_edge(i, j);
        }
    auto rep = clique_number_experiment(3);
    auto full_nonsing = detail::ColoredCliqueEngine(nonsing, n, kCliqueNodeBudget).run();
    auto full_sing = detail::ColoredCliqueEngine(sing, n, kCliqueNodeBudget).run();
    REQUIRE_FALSE(full_nonsing.budget_exceeded);
    REQUIRE_FALSE(full_sing.budget_exceeded);
    CHECK(rep.nonsingular_sum.omega == static_cast<int>(full_nonsing.vertices.size()));
    CHECK(rep.singular_sum.omega == static_cast<int>(full_sing.vertices.size()));
}

TEST_CASE("clique experiment at q = 3 agrees across strategies") {
    auto rep = clique_number_experiment(3);
    CHECK(rep.group_size == 24);
    CHECK(rep.nonsingular_sum.agree);
    CHECK(rep.singular_sum.agree);
    CHECK(rep.nonsingular_sum.certificate_ok);
    CHECK(rep.singular_sum.certificate_ok);
    CHECK_FALSE(rep.nonsingular_sum.budget_exceeded);
    CHECK_FALSE(rep.singular_sum.budget_exceeded);
    CHECK(rep.nonsingular_sum.omega >= 3);  // q(q-1)/2 via the triangular families
    CHECK(rep.singular_sum.omega >= 2);     // pairs A, -A with trace -2 exist

    auto again = clique_number_experiment(3);
    CHECK(again.nonsingular_sum.omega == rep.nonsingular_sum.omega);
    CHECK(again.nonsingular_sum.certificate == rep.nonsingular_sum.certificate);
    CHECK(again.singular_sum.certificate == rep.singular_sum.certificate);
    CHECK(rep.nonsingular_sum.upper_bound == rep.nonsingular_sum.omega);
    CHECK(rep.singular_sum.upper_bound == rep.singular_sum.omega);
}

TEST_CASE("greedy coloring bounds the clique number") {
    BitGraph k4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
    CHECK(greedy_coloring_bound(k4) == 4);

    BitGraph empty3(3);
    CHECK(greedy_coloring_bound(empty3) == 1);
    CHECK(greedy_coloring_bound(BitGraph(0)) == 0);

    BitGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(greedy_coloring_bound(path) == 2);

    SplitMix64 rng(314);
    for (int rep = 0; rep < 10; ++rep) {
        BitGraph g(18);
        for (int i = 0; i < 18; ++i)
            for (int j = i + 1; j < 18; ++j)
                if (rng.below(3) != 0) g.add_edge(i, j);
        auto found = detail::ColoredCliqueEngine(g, g.n, kCliqueNodeBudget).run();
        CHECK(static_cast<int>(found.vertices.size()) <= greedy_coloring_bound(g));
    }
}

TEST_CASE("a starved budget yields deterministic certified bounds") {
    auto rep = clique_number_experiment(5, 8);
    const auto& side = rep.nonsingular_sum;
    CHECK(side.budget_exceeded);
    CHECK(side.omega == 0);
    CHECK(side.best_found >= 2);
    CHECK(side.upper_bound >= side.best_found);
    CHECK(side.certificate_ok);  // the incumbent is still a real clique
    // full run closes the same side exactly, inside the certified bounds
    auto full = clique_number_experiment(5);
    CHECK_FALSE(full.nonsingular_sum.budget_exceeded);
    CHECK(full.nonsingular_sum.omega >= side.best_found);
    CHECK(full.nonsingular_sum.omega <= side.upper_bound);

    auto again = clique_number_experiment(5, 8);
    CHECK(again.nonsingular_sum.best_found == side.best_found);
    CHECK(again.nonsingular_sum.upper_bound == side.upper_bound);
    CHECK(again.nonsingular_sum.certificate == side.certificate);
}

TEST_CASE("clique experiment rejects even characteristic") {
    CHECK_THROWS_AS(clique_number_experiment(2), CharacteristicTwoError);
}

TEST_CASE("edge list exports are 1-based") {
    auto fam = example2(2, 1, true);
    auto g = build_bipartite_graph(fam.left, fam.right);
    CHECK(edge_list_text(g) == "1 1\n2 2\n");
    auto fam1 = example1(2, 1);
    auto aux = build_auxiliary_graph(build_h_matrix(fam1.members, fam1.members));
    CHECK(edge_list_text(aux).substr(0, 8) == "1 2\n1 3\n");
}

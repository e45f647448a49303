#pragma once

#include <cxxabi.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nss/json_io.hpp"

namespace nss {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::string command;
    std::string field = "Q";  // "Q" or "Fp:<p>"
    int k = 2;
    int n = 8;
    int s = 1;
    int d = 2;
    std::uint64_t q = 3;
    int which = 1;
    int outliers = 0;
    int generic = -1;  // removal arrangements: generic flat count; -1 = n/5, at least 2
    std::uint64_t seed = 0;
    std::string input_path;
    std::string json_path;
    bool example1 = false;
    bool example2 = false;
    bool sl2 = false;
    bool aux = false;
    bool lemma = false;
    bool removal = false;
    bool corollary = false;
    bool from_example2 = false;
    bool quick = false;
    bool full = false;
};

struct FieldChoice {
    bool rational = true;
    std::uint64_t p = 0;
};

inline FieldChoice parse_field_spec(const std::string& s) {
    if (s == "Q") return {true, 0};
    if (s.rfind("Fp:", 0) == 0) {
        try {
            std::size_t used = 0;
            unsigned long long p = std::stoull(s.substr(3), &used);
            if (used != s.size() - 3) throw std::invalid_argument("");
            return {false, p};
        } catch (const std::exception&) {
            throw InvalidParameterError("cannot parse prime modulus in field spec '" + s + "'");
        }
    }
    throw InvalidParameterError("field must be Q or Fp:<p>, got '" + s + "'");
}

/// "ShapeMismatchError" -> "ShapeMismatch", for error reports.
inline std::string error_type_name(const std::exception& e) {
    int status = 0;
    char* dem = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
    std::string s = (status == 0 && dem != nullptr) ? dem : typeid(e).name();
    std::free(dem);
    if (auto pos = s.rfind("::"); pos != std::string::npos) s = s.substr(pos + 2);
    if (s.size() > 5 && s.compare(s.size() - 5, 5, "Error") == 0) s.resize(s.size() - 5);
    return s;
}

namespace detail {

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return Json::parse(in);
}

inline void require_range(const char* name, long value, long lo, long hi) {
    if (value < lo || value > hi)
        throw InvalidParameterError(std::string(name) + " must be in [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "], got " + std::to_string(value));
}

template <FieldScalar T>
Json expand_body(const Matrix<T>& a, const Matrix<T>& b) {
    SumExpansion<T> e = expand_det_sum(a, b);
    T direct = det(a + b);
    const bool agrees = e.total == direct;
    Json body;
    body["expansion"] = expansion_to_json(e, a.field().name());
    body["direct"] = entry_to_json(direct);
    body["agrees"] = agrees;
    body["holds"] = agrees;
    return body;
}

template <FieldScalar T>
Json rank_bound_body(const std::vector<Matrix<T>>& left, const std::vector<Matrix<T>>& right) {
    HMatrix<T> h = build_h_matrix(left, right);
    RankBoundReport rb = verify_rank_bound(h);
    Json body = rank_bound_to_json(rb);
    body["n"] = h.n;
    body["k"] = h.k;
    return body;
}

}  // namespace detail

/// det(A+B) expansion vs the direct determinant, random or file-supplied.
inline Json cmd_expand(const RunConfig& cfg) {
    Json body;
    body["command"] = "expand";
    body["version"] = kVersion;
    Json inner;
    if (!cfg.input_path.empty()) {
        Json in = detail::load_json_file(cfg.input_path);
        if (!in.is_object() || !in.contains("A") || !in.contains("B"))
            throw InputError("expand input must be an object with \"A\" and \"B\"");
        const std::string tag = in["A"].is_object() ? in["A"].value("field", "Q") : "Q";
        body["config"] = {{"input", cfg.input_path}, {"field", tag}};
        if (tag == "Q") {
            Matrix<Rational> a = rational_matrix_from_json(in["A"]);
            Matrix<Rational> b = rational_matrix_from_json(in["B"]);
            detail::require_range("k", a.rows(), 1, 8);
            inner = detail::expand_body(a, b);
        } else {
            Matrix<Fp> a = fp_matrix_from_json(in["A"]);
            Matrix<Fp> b = fp_matrix_from_json(in["B"]);
            detail::require_range("k", a.rows(), 1, 8);
            inner = detail::expand_body(a, b);
        }
    } else {
        detail::require_range("k", cfg.k, 1, 8);
        body["config"] = {{"k", cfg.k}, {"field", cfg.field}, {"seed", cfg.seed}};
        FieldChoice fc = parse_field_spec(cfg.field);
        SplitMix64 rng(cfg.seed);
        if (fc.rational) {
            Matrix<Rational> a = random_rational_matrix(rng, cfg.k, cfg.k);
            Matrix<Rational> b = random_rational_matrix(rng, cfg.k, cfg.k);
            inner = detail::expand_body(a, b);
        } else {
            PrimeField f(fc.p);
            Matrix<Fp> a = random_fp_matrix(rng, cfg.k, cfg.k, f);
            Matrix<Fp> b = random_fp_matrix(rng, cfg.k, cfg.k, f);
            inner = detail::expand_body(a, b);
        }
    }
    for (auto& [key, value] : inner.items()) body[key] = value;
    return body;
}

/// Rank of H against the central binomial bound.
inline Json cmd_rank_bound(const RunConfig& cfg) {
    Json body;
    body["command"] = "rank-bound";
    body["version"] = kVersion;
    Json inner;
    if (!cfg.input_path.empty()) {
        Json in = detail::load_json_file(cfg.input_path);
        std::vector<Matrix<Rational>> left, right;
        if (in.contains("family")) {
            for (const auto& m : in["family"]) left.push_back(rational_matrix_from_json(m));
            right = left;
        } else if (in.contains("left") && in.contains("right")) {
            for (const auto& m : in["left"]) left.push_back(rational_matrix_from_json(m));
            for (const auto& m : in["right"]) right.push_back(rational_matrix_from_json(m));
        } else {
            throw InputError("rank-bound input needs \"family\" or \"left\"/\"right\"");
        }
        body["config"] = {{"input", cfg.input_path}};
        inner = detail::rank_bound_body(left, right);
    } else if (cfg.example1) {
        detail::require_range("k", cfg.k, 1, 8);
        detail::require_range("s", cfg.s, 1, 8);
        body["config"] = {{"example1", true}, {"k", cfg.k}, {"s", cfg.s}};
        Example1Family fam = example1(cfg.k, cfg.s);
        inner = detail::rank_bound_body(fam.members, fam.members);
        const bool rank_2k = inner["rank"].get<long>() == (1L << cfg.k);
        inner["rank_equals_2k"] = rank_2k;
        inner["holds"] = inner["holds"].get<bool>() && rank_2k;
    } else {
        detail::require_range("k", cfg.k, 1, 8);
        detail::require_range("n", cfg.n, 1, 128);
        body["config"] = {{"k", cfg.k}, {"n", cfg.n}, {"field", cfg.field}, {"seed", cfg.seed}};
        FieldChoice fc = parse_field_spec(cfg.field);
        SplitMix64 rng(cfg.seed);
        if (fc.rational) {
            inner = detail::rank_bound_body(random_rational_family(rng, cfg.n, cfg.k),
                                            random_rational_family(rng, cfg.n, cfg.k));
        } else {
            PrimeField f(fc.p);
            inner = detail::rank_bound_body(random_fp_family(rng, cfg.n, cfg.k, f),
                                            random_fp_family(rng, cfg.n, cfg.k, f));
        }
    }
    for (auto& [key, value] : inner.items()) body[key] = value;
    return body;
}

/// Theorem 1 / Theorem 2 with the worked families or seeded random ones.
inline Json cmd_theorem(const RunConfig& cfg) {
    if (cfg.which != 1 && cfg.which != 2) throw InvalidParameterError("--which must be 1 or 2");
    detail::require_range("k", cfg.k, 1, 8);
    detail::require_range("s", cfg.s, 1, 8);
    Json body;
    body["command"] = "theorem";
    body["version"] = kVersion;
    bool holds = true;

    if (cfg.which == 1) {
        if (cfg.example2) throw InvalidParameterError("--example2 belongs to --which 2");
        if (cfg.example1) {
            body["config"] = {{"which", 1}, {"example1", true}, {"k", cfg.k}, {"s", cfg.s}};
            Example1Family fam = example1(cfg.k, cfg.s);
            Example1CountReport counts = verify_example1_counts(fam);
            Theorem1Report rep = verify_theorem1(fam.members);
            body["counts"] = example1_count_to_json(counts);
            body["theorem1"] = theorem1_to_json(rep);
            holds = counts.holds && rep.diagonal_is_matching && rep.t2.holds;
        } else {
            detail::require_range("n", cfg.n, 1, 64);
            body["config"] = {{"which", 1}, {"k", cfg.k}, {"n", cfg.n}, {"field", cfg.field}, {"seed", cfg.seed}};
            FieldChoice fc = parse_field_spec(cfg.field);
            SplitMix64 rng(cfg.seed);
            Theorem1Report rep = fc.rational
                ? verify_theorem1(random_rational_family(rng, cfg.n, cfg.k))
                : verify_theorem1(random_fp_family(rng, cfg.n, cfg.k, PrimeField(fc.p)));
            body["theorem1"] = theorem1_to_json(rep);
            holds = rep.diagonal_is_matching && rep.t2.holds;
        }
    } else {
        if (cfg.example2) {
            body["config"] = {{"which", 2}, {"example2", true}, {"k", cfg.k}, {"s", cfg.s}};
            Example2Family fam = example2(cfg.k, cfg.s, false);
            Example2CountReport counts = verify_example2_counts(fam);
            Theorem2Report rep = verify_theorem2(fam.left, fam.right);
            body["counts"] = example2_count_to_json(counts);
            body["theorem2"] = theorem2_to_json(rep);
            holds = counts.holds && rep.holds;
        } else if (cfg.example1) {
            body["config"] = {{"which", 2}, {"example1", true}, {"k", cfg.k}, {"s", cfg.s}};
            Example1Family fam = example1(cfg.k, cfg.s);
            Theorem2Report rep = verify_theorem2(fam.members, fam.members);
            body["theorem2"] = theorem2_to_json(rep);
            holds = rep.holds;
        } else {
            detail::require_range("n", cfg.n, 1, 64);
            body["config"] = {{"which", 2}, {"k", cfg.k}, {"n", cfg.n}, {"field", cfg.field}, {"seed", cfg.seed}};
            FieldChoice fc = parse_field_spec(cfg.field);
            SplitMix64 rng(cfg.seed);
            Theorem2Report rep;
            if (fc.rational) {
                auto fa = random_rational_family(rng, cfg.n, cfg.k);
                auto fb = random_rational_family(rng, cfg.n, cfg.k);
                rep = verify_theorem2(fa, fb);
            } else {
                PrimeField f(fc.p);
                auto fa = random_fp_family(rng, cfg.n, cfg.k, f);
                auto fb = random_fp_family(rng, cfg.n, cfg.k, f);
                rep = verify_theorem2(fa, fb);
            }
            body["theorem2"] = theorem2_to_json(rep);
            holds = rep.holds;
        }
    }
    body["holds"] = holds;
    return body;
}

/// SL2 experiment, or exact clique of the auxiliary graph of a family.
inline Json cmd_clique(const RunConfig& cfg) {
    Json body;
    body["command"] = "clique";
    body["version"] = kVersion;
    if (cfg.sl2 == cfg.aux) throw InvalidParameterError("pass exactly one of --sl2 / --aux");

    if (cfg.sl2) {
        body["config"] = {{"sl2", true}, {"q", cfg.q}};
        CliqueExperimentReport rep = clique_number_experiment(cfg.q);
        body["experiment"] = clique_report_to_json(rep);
        const bool exceeded = rep.nonsingular_sum.budget_exceeded || rep.singular_sum.budget_exceeded;
        body["budget_exceeded"] = exceeded;
        body["holds"] = rep.nonsingular_sum.agree && rep.nonsingular_sum.certificate_ok &&
                        rep.singular_sum.agree && rep.singular_sum.certificate_ok;
        return body;
    }

    detail::require_range("k", cfg.k, 1, 8);
    std::vector<Matrix<Rational>> left, right;
    if (!cfg.input_path.empty()) {
        Json in = detail::load_json_file(cfg.input_path);
        if (in.contains("family")) {
            for (const auto& m : in["family"]) left.push_back(rational_matrix_from_json(m));
            right = left;
        } else if (in.contains("left") && in.contains("right")) {
            for (const auto& m : in["left"]) left.push_back(rational_matrix_from_json(m));
            for (const auto& m : in["right"]) right.push_back(rational_matrix_from_json(m));
        } else {
            throw InputError("clique --aux input needs \"family\" or \"left\"/\"right\"");
        }
        body["config"] = {{"aux", true}, {"input", cfg.input_path}};
    } else if (cfg.example1) {
        detail::require_range("s", cfg.s, 1, 8);
        body["config"] = {{"aux", true}, {"example1", true}, {"k", cfg.k}, {"s", cfg.s}};
        Example1Family fam = example1(cfg.k, cfg.s);
        left = fam.members;
        right = fam.members;
    } else {
        detail::require_range("n", cfg.n, 1, 64);
        body["config"] = {{"aux", true}, {"k", cfg.k}, {"n", cfg.n}, {"field", cfg.field}, {"seed", cfg.seed}};
        SplitMix64 rng(cfg.seed);
        left = random_rational_family(rng, cfg.n, cfg.k);
        right = random_rational_family(rng, cfg.n, cfg.k);
    }
    detail::require_range("n", static_cast<long>(left.size()), 1, 64);

    HMatrix<Rational> h = build_h_matrix(left, right);
    AuxiliaryGraph g = build_auxiliary_graph(h);
    std::vector<int> clique = exact_max_clique(g);
    // independent second strategy on the same graph
    BitGraph bits(g.n);
    for (const auto& [u, v] : g.edges) bits.add_edge(u, v);
    CliqueSearch mis = detail::ComplementMisEngine(bits, g.n, kCliqueNodeBudget).run();
    if (mis.budget_exceeded) throw BudgetExceededError("auxiliary clique search budget", mis.nodes);
    const bool agree = clique.size() == mis.vertices.size();

    Json cert = Json::array();
    for (int v : clique) cert.push_back(v + 1);
    body["n"] = g.n;
    body["aux_edges"] = g.edges.size();
    body["omega"] = clique.size();
    body["certificate"] = cert;
    body["strategies_agree"] = agree;

    // clique-rank link whenever the clique members are matched (h_ii != 0)
    bool matched = true;
    for (int v : clique)
        if (h.entries.at(v, v).is_zero()) matched = false;
    body["members_matched"] = matched;
    bool link_ok = true;
    if (matched) {
        const int r = rank(h.entries);
        link_ok = diagonal_submatrix_check(h, clique) && static_cast<int>(clique.size()) <= r;
        body["h_rank"] = r;
        body["clique_rank_link_ok"] = link_ok;
    }
    body["holds"] = agree && link_ok;
    return body;
}

/// Flat-pair lemma, removal chain, or hyperplane corollary.
inline Json cmd_flats(const RunConfig& cfg) {
    const int picked = int(cfg.lemma) + int(cfg.removal) + int(cfg.corollary);
    if (picked != 1) throw InvalidParameterError("pass exactly one of --lemma / --removal / --corollary");
    Json body;
    body["command"] = "flats";
    body["version"] = kVersion;

    if (cfg.lemma) {
        FlatPairFamily fam{0, {}};
        if (!cfg.input_path.empty()) {
            body["config"] = {{"lemma", true}, {"input", cfg.input_path}};
            fam = pair_family_from_json(detail::load_json_file(cfg.input_path));
        } else if (cfg.from_example2) {
            detail::require_range("k", cfg.k, 2, 4);
            detail::require_range("s", cfg.s, 1, 4);
            body["config"] = {{"lemma", true}, {"from_example2", true}, {"k", cfg.k}, {"s", cfg.s}, {"seed", cfg.seed}};
            SplitMix64 rng(cfg.seed);
            fam = flat_pairs_from_example2(example2(cfg.k, cfg.s, false), rng);
        } else {
            detail::require_range("n", cfg.n, 1, 30);
            detail::require_range("d", cfg.d, 1, 2);
            body["config"] = {{"lemma", true}, {"n", cfg.n}, {"d", cfg.d}, {"seed", cfg.seed}};
            SplitMix64 rng(cfg.seed);
            fam = random_flat_pair_family(rng, cfg.n, cfg.d);
        }
        FlatPairsLemmaReport rep = verify_flat_pairs_lemma(fam);
        body["lemma"] = lemma_report_to_json(rep);
        body["holds"] = rep.holds;
        return body;
    }

    FlatArrangement arr{0, {}};
    if (cfg.removal) {
        if (!cfg.input_path.empty()) {
            body["config"] = {{"removal", true}, {"input", cfg.input_path}};
            arr = arrangement_from_json(detail::load_json_file(cfg.input_path));
        } else {
            detail::require_range("n", cfg.n, 1, 30);
            detail::require_range("d", cfg.d, 1, 2);
            const int generic = cfg.generic >= 0 ? cfg.generic : std::max(2, cfg.n / 5);
            detail::require_range("generic", generic, 0, cfg.n);
            body["config"] = {{"removal", true}, {"n", cfg.n}, {"d", cfg.d}, {"generic", generic}, {"seed", cfg.seed}};
            SplitMix64 rng(cfg.seed);
            arr = random_removal_arrangement(rng, cfg.n, cfg.d, generic);
        }
        RemovalReport rep = removal_experiment(arr);
        body["removal"] = removal_report_to_json(rep);
        body["holds"] = rep.holds;
        return body;
    }

    if (!cfg.input_path.empty()) {
        body["config"] = {{"corollary", true}, {"input", cfg.input_path}};
        arr = arrangement_from_json(detail::load_json_file(cfg.input_path));
    } else {
        detail::require_range("n", cfg.n, 4, 30);
        detail::require_range("outliers", cfg.outliers, 0, cfg.n - 2);
        body["config"] = {{"corollary", true}, {"n", cfg.n}, {"outliers", cfg.outliers}, {"seed", cfg.seed}};
        SplitMix64 rng(cfg.seed);
        arr = hyperplane_family(rng, cfg.n - cfg.outliers, cfg.outliers);
    }
    HyperplaneCoverReport rep = hyperplane_cover_check(arr);
    body["corollary"] = hyperplane_report_to_json(rep);
    body["holds"] = rep.holds;
    return body;
}

namespace detail {

inline Json selftest_expansion(std::uint64_t seed) {
    SplitMix64 rng(seed);
    PrimeField f7(7);
    long checked = 0;
    bool ok = true;
    for (int k = 1; k <= 3; ++k)
        for (int rep = 0; rep < 10; ++rep) {
            auto a = random_rational_matrix(rng, k, k);
            auto b = random_rational_matrix(rng, k, k);
            ok = ok && expand_det_sum(a, b).total == det(a + b);
            auto c = random_fp_matrix(rng, k, k, f7);
            auto d = random_fp_matrix(rng, k, k, f7);
            ok = ok && expand_det_sum(c, d).total == det(c + d);
            checked += 2;
        }
    return Json{{"checked", checked}, {"holds", ok}};
}

inline Json selftest_rank(std::uint64_t seed, bool full) {
    SplitMix64 rng(seed);
    PrimeField f101(101);
    long checked = 0;
    bool ok = true;
    const int kmax = full ? 4 : 3;
    for (int k = 1; k <= kmax; ++k) {
        auto h = build_h_matrix(random_rational_family(rng, 10, k), random_rational_family(rng, 10, k));
        ok = ok && verify_rank_bound(h).holds;
        auto hf = build_h_matrix(random_fp_family(rng, 10, k, f101), random_fp_family(rng, 10, k, f101));
        ok = ok && verify_rank_bound(hf).holds;
        checked += 2;
    }
    const int e1max = full ? 6 : 4;
    for (int k = 1; k <= e1max; ++k) {
        Example1Family fam = example1(k, 1);
        auto h = build_h_matrix(fam.members, fam.members);
        RankBoundReport rb = verify_rank_bound(h);
        ok = ok && rb.holds && rb.rank == (1 << k);
        ++checked;
    }
    return Json{{"checked", checked}, {"full", full}, {"holds", ok}};
}

inline Json selftest_constructions() {
    long checked = 0;
    bool ok = true;
    for (int k = 1; k <= 4; ++k)
        for (int s = 1; s <= 2; ++s) {
            ok = ok && verify_example1_counts(example1(k, s)).holds;
            ++checked;
        }
    for (int s = 1; s <= 2; ++s) {
        ok = ok && verify_example2_counts(example2(2, s, false)).holds;
        ++checked;
    }
    ok = ok && verify_example2_counts(example2(4, 1, false)).holds;
    ok = ok && verify_example2_counts(example2(2, 1, true)).holds;
    ok = ok && verify_example2_counts(example2(4, 1, true)).holds;
    checked += 3;
    return Json{{"checked", checked}, {"holds", ok}};
}

inline Json selftest_theorems(std::uint64_t seed) {
    SplitMix64 rng(seed);
    long checked = 0;
    bool ok = true;
    for (int k = 1; k <= 3; ++k) {
        Theorem1Report r = verify_theorem1(example1(k, 1).members);
        ok = ok && r.diagonal_is_matching && r.t2.holds && r.t2.perfect_matching;
        ++checked;
    }
    for (int s = 1; s <= 2; ++s) {
        Example2Family fam = example2(2, s, false);
        Theorem2Report r = verify_theorem2(fam.left, fam.right);
        ok = ok && r.holds && r.perfect_matching;
        ++checked;
    }
    {
        Example2Family fam = example2(4, 1, false);
        Theorem2Report r = verify_theorem2(fam.left, fam.right);
        ok = ok && r.holds && r.perfect_matching;
        ++checked;
    }
    PrimeField f101(101);
    for (int rep = 0; rep < 3; ++rep) {
        auto fa = random_rational_family(rng, 8, 2);
        auto fb = random_rational_family(rng, 8, 2);
        ok = ok && verify_theorem2(fa, fb).holds;
        auto fc = random_fp_family(rng, 8, 2, f101);
        auto fd = random_fp_family(rng, 8, 2, f101);
        ok = ok && verify_theorem2(fc, fd).holds;
        checked += 2;
    }
    return Json{{"checked", checked}, {"holds", ok}};
}

inline Json selftest_matching(std::uint64_t seed) {
    SplitMix64 rng(seed);
    long checked = 0;
    bool ok = true;
    // exhaustive matching size by augmenting recursion, small n
    auto brute = [](const std::vector<std::vector<bool>>& adj) {
        const int n = static_cast<int>(adj.size());
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        auto rec = [&](auto&& self, int i) -> int {
            if (i == n) return 0;
            int best = self(self, i + 1);  // leave i unmatched
            for (int j = 0; j < n; ++j)
                if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                    !used[static_cast<std::size_t>(j)]) {
                    used[static_cast<std::size_t>(j)] = true;
                    best = std::max(best, 1 + self(self, i + 1));
                    used[static_cast<std::size_t>(j)] = false;
                }
            return best;
        };
        return rec(rec, 0);
    };
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(4));  // 3..6
        std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                           std::vector<bool>(static_cast<std::size_t>(n), false));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rng.below(2) == 0;
        Matching m = hopcroft_karp(adj);
        ok = ok && static_cast<int>(m.pairs.size()) == brute(adj);
        ++checked;
    }
    return Json{{"checked", checked}, {"holds", ok}};
}

inline Json selftest_clique(bool full) {
    bool ok = true;
    Json experiments = Json::array();
    std::vector<std::uint64_t> qs{3, 5};
    if (full) qs.push_back(7);
    for (std::uint64_t q : qs) {
        CliqueExperimentReport rep = clique_number_experiment(q);
        ok = ok && rep.nonsingular_sum.agree && rep.nonsingular_sum.certificate_ok &&
             rep.singular_sum.agree && rep.singular_sum.certificate_ok &&
             rep.nonsingular_sum.best_found <= rep.nonsingular_sum.upper_bound;
        experiments.push_back(clique_report_to_json(rep));
    }
    // the diagonal family's auxiliary graph is complete
    Example1Family fam = example1(2, 1);
    auto h = build_h_matrix(fam.members, fam.members);
    auto clique = exact_max_clique(build_auxiliary_graph(h));
    ok = ok && clique.size() == 4;
    return Json{{"experiments", experiments}, {"aux_example1_omega", clique.size()}, {"holds", ok}};
}

inline Json selftest_flats(std::uint64_t seed) {
    SplitMix64 rng(seed);
    long checked = 0;
    bool ok = true;
    for (int d = 1; d <= 2; ++d) {
        ok = ok && verify_flat_pairs_lemma(random_flat_pair_family(rng, 8, d)).holds;
        ++checked;
    }
    ok = ok && verify_flat_pairs_lemma(flat_pairs_from_example2(example2(2, 1, false), rng)).holds;
    ++checked;
    for (int rep = 0; rep < 2; ++rep) {
        ok = ok && removal_experiment(random_removal_arrangement(rng, 15, 2, 3)).holds;
        ++checked;
    }
    HyperplaneCoverReport hc = hyperplane_cover_check(hyperplane_family(rng, 10, 2));
    ok = ok && hc.holds && hc.all_survivors_contained;
    ++checked;
    return Json{{"checked", checked}, {"holds", ok}};
}

}  // namespace detail

/// The whole property suite at reduced sizes; --full adds k = 6 ranks and q = 7.
inline Json cmd_selftest(const RunConfig& cfg) {
    if (cfg.quick && cfg.full) throw InvalidParameterError("pass at most one of --quick / --full");
    const bool full = cfg.full;
    Json body;
    body["command"] = "selftest";
    body["version"] = kVersion;
    body["config"] = {{"mode", full ? "full" : "quick"}, {"seed", cfg.seed}};
    Json suites;
    suites["expansion_oracle"] = detail::selftest_expansion(cfg.seed);
    suites["rank_bound"] = detail::selftest_rank(cfg.seed + 1, full);
    suites["constructions"] = detail::selftest_constructions();
    suites["theorems"] = detail::selftest_theorems(cfg.seed + 2);
    suites["matching"] = detail::selftest_matching(cfg.seed + 3);
    suites["clique"] = detail::selftest_clique(full);
    suites["flats"] = detail::selftest_flats(cfg.seed + 4);
    bool all = true;
    for (auto& [name, suite] : suites.items()) all = all && suite["holds"].get<bool>();
    body["suites"] = suites;
    body["holds"] = all;
    return body;
}

struct CliResult {
    Json report;
    int exit_code = 0;
};

/// Dispatch + error-to-exit-code mapping. 0 all-holds, 1 property violation,
/// 2 usage error, 3 budget exceeded; errors are embedded in the report.
inline CliResult run_command(const RunConfig& cfg) {
    CliResult result;
    try {
        if (cfg.command == "expand")
            result.report = cmd_expand(cfg);
        else if (cfg.command == "rank-bound")
            result.report = cmd_rank_bound(cfg);
        else if (cfg.command == "theorem")
            result.report = cmd_theorem(cfg);
        else if (cfg.command == "clique")
            result.report = cmd_clique(cfg);
        else if (cfg.command == "flats")
            result.report = cmd_flats(cfg);
        else if (cfg.command == "selftest")
            result.report = cmd_selftest(cfg);
        else
            throw InvalidParameterError("unknown command '" + cfg.command + "'");
        const bool holds = result.report.value("holds", true);
        const bool exceeded = result.report.value("budget_exceeded", false);
        result.exit_code = exceeded ? 3 : (holds ? 0 : 1);
    } catch (const BudgetExceededError& e) {
        result.report = {{"command", cfg.command},
                         {"version", kVersion},
                         {"error", {{"type", error_type_name(e)}, {"message", e.what()}}}};
        result.exit_code = 3;
    } catch (const InvariantViolationError& e) {
        result.report = {{"command", cfg.command},
                         {"version", kVersion},
                         {"error", {{"type", error_type_name(e)}, {"message", e.what()}}}};
        result.exit_code = 1;
    } catch (const InputError& e) {
        result.report = {{"command", cfg.command},
                         {"version", kVersion},
                         {"error", {{"type", error_type_name(e)}, {"message", e.what()}}}};
        result.exit_code = 2;
    } catch (const std::exception& e) {
        result.report = {{"command", cfg.command},
                         {"version", kVersion},
                         {"error", {{"type", error_type_name(e)}, {"message", e.what()}}}};
        result.exit_code = 2;
    }
    return result;
}

}  // namespace nss

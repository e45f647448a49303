#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nss/detsum.hpp"
#include "nss/linalg.hpp"

namespace nss {

template <FieldScalar T>
struct BipartiteSumGraph {
    HMatrix<T> h;                           // adjacency is recomputable from the families
    std::vector<std::vector<bool>> adj;     // adj[i][j] <=> det(A_i + B_j) != 0
    long edge_count;                        // ordered pairs (i, j), i = j included
    bool characteristic_ok;
};

template <FieldScalar T>
BipartiteSumGraph<T> build_bipartite_graph(const std::vector<Matrix<T>>& fa,
                                           const std::vector<Matrix<T>>& fb) {
    HMatrix<T> h = build_h_matrix(fa, fb);
    BipartiteSumGraph<T> g{std::move(h), {}, 0, fa.front().field().characteristic_ok()};
    g.adj.assign(static_cast<std::size_t>(g.h.n), std::vector<bool>(static_cast<std::size_t>(g.h.n), false));
    for (int i = 0; i < g.h.n; ++i)
        for (int j = 0; j < g.h.n; ++j)
            if (!g.h.entries.at(i, j).is_zero()) {
                g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
                ++g.edge_count;
            }
    return g;
}

struct Matching {
    enum class Kind { Bipartite, General };
    Kind kind;
    std::vector<std::pair<int, int>> pairs;  // bipartite: (left, right); general: (u, v), u < v
};

struct VertexCoverCertificate {
    std::vector<int> vertices;  // sorted
    int size;
};

/// Hopcroft-Karp maximum matching. Left and right sides both of size n;
/// adjacency given as adj[i][j]. Deterministic scan order.
inline Matching hopcroft_karp(const std::vector<std::vector<bool>>& adj) {
    const int n = static_cast<int>(adj.size());
    const int NIL = n;
    std::vector<int> match_l(static_cast<std::size_t>(n), NIL), match_r(static_cast<std::size_t>(n), NIL);
    std::vector<int> dist(static_cast<std::size_t>(n) + 1, 0);
    const int INF = n + 1;

    auto bfs = [&]() {
        std::deque<int> q;
        for (int u = 0; u < n; ++u) {
            if (match_l[static_cast<std::size_t>(u)] == NIL) {
                dist[static_cast<std::size_t>(u)] = 0;
                q.push_back(u);
            } else {
                dist[static_cast<std::size_t>(u)] = INF;
            }
        }
        dist[static_cast<std::size_t>(NIL)] = INF;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            if (dist[static_cast<std::size_t>(u)] < dist[static_cast<std::size_t>(NIL)]) {
                for (int v = 0; v < n; ++v) {
                    if (!adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
                    int w = match_r[static_cast<std::size_t>(v)];
                    if (dist[static_cast<std::size_t>(w)] == INF) {
                        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                        if (w != NIL) q.push_back(w);
                    }
                }
            }
        }
        return dist[static_cast<std::size_t>(NIL)] != INF;
    };

    auto dfs = [&](auto&& self, int u) -> bool {
        if (u == NIL) return true;
        for (int v = 0; v < n; ++v) {
            if (!adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
            int w = match_r[static_cast<std::size_t>(v)];
            if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1 && self(self, w)) {
                match_l[static_cast<std::size_t>(u)] = v;
                match_r[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        dist[static_cast<std::size_t>(u)] = INF;
        return false;
    };

    while (bfs())
        for (int u = 0; u < n; ++u)
            if (match_l[static_cast<std::size_t>(u)] == NIL) dfs(dfs, u);

    Matching m{Matching::Kind::Bipartite, {}};
    for (int u = 0; u < n; ++u)
        if (match_l[static_cast<std::size_t>(u)] != NIL) m.pairs.emplace_back(u, match_l[static_cast<std::size_t>(u)]);
    return m;
}

template <FieldScalar T>
Matching maximum_bipartite_matching(const BipartiteSumGraph<T>& g) {
    return hopcroft_karp(g.adj);
}

struct AuxiliaryGraph {
    int n;
    std::vector<std::pair<int, int>> edges;  // u < v, lexicographic
    std::vector<std::vector<bool>> adj;
};

/// Edge {i, j} present iff both h_ij = 0 and h_ji = 0.
template <FieldScalar T>
AuxiliaryGraph build_auxiliary_graph(const HMatrix<T>& h) {
    AuxiliaryGraph g{h.n, {}, {}};
    g.adj.assign(static_cast<std::size_t>(h.n), std::vector<bool>(static_cast<std::size_t>(h.n), false));
    for (int i = 0; i < h.n; ++i)
        for (int j = i + 1; j < h.n; ++j)
            if (h.entries.at(i, j).is_zero() && h.entries.at(j, i).is_zero()) {
                g.edges.emplace_back(i, j);
                g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
                g.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
            }
    return g;
}

struct GreedyMatchingResult {
    Matching matching;
    VertexCoverCertificate cover;  // matched vertices; covers every edge
};

/// Inclusion-maximal matching by lexicographic edge scan; its vertex set is
/// a vertex cover of size 2|matching|.
inline GreedyMatchingResult greedy_maximal_matching(const AuxiliaryGraph& g) {
    GreedyMatchingResult out{{Matching::Kind::General, {}}, {{}, 0}};
    std::vector<bool> used(static_cast<std::size_t>(g.n), false);
    for (const auto& [u, v] : g.edges) {
        if (used[static_cast<std::size_t>(u)] || used[static_cast<std::size_t>(v)]) continue;
        used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = true;
        out.matching.pairs.emplace_back(u, v);
        out.cover.vertices.push_back(u);
        out.cover.vertices.push_back(v);
    }
    std::sort(out.cover.vertices.begin(), out.cover.vertices.end());
    out.cover.size = static_cast<int>(out.cover.vertices.size());
    return out;
}

/// Dense graph over bit rows; n * words layout, vertex j in row i at
/// word j/64, bit j%64.
struct BitGraph {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;

    explicit BitGraph(int nn = 0) : n(nn), words((nn + 63) / 64), bits(static_cast<std::size_t>(nn) * static_cast<std::size_t>((nn + 63) / 64), 0) {}

    const std::uint64_t* row(int i) const { return bits.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(words); }
    std::uint64_t* row(int i) { return bits.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(words); }

    void add_edge(int i, int j) {
        row(i)[j >> 6] |= 1ULL << (j & 63);
        row(j)[i >> 6] |= 1ULL << (i & 63);
    }
    bool has_edge(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1ULL; }
    int degree(int i) const {
        int d = 0;
        for (int w = 0; w < words; ++w) d += __builtin_popcountll(row(i)[w]);
        return d;
    }
};

struct CliqueSearch {
    std::vector<int> vertices;  // sorted, original labels
    std::uint64_t nodes;
    bool budget_exceeded;
};

/// Colors used by a greedy proper coloring (degree-descending order): a
/// certified upper bound on the clique number.
inline int greedy_coloring_bound(const BitGraph& g) {
    if (g.n == 0) return 0;
    std::vector<int> order(static_cast<std::size_t>(g.n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::vector<std::vector<std::uint64_t>> classes;
    for (int v : order) {
        bool placed = false;
        for (auto& cls : classes) {
            bool conflict = false;
            for (int w = 0; w < g.words; ++w)
                if (cls[static_cast<std::size_t>(w)] & g.row(v)[w]) {
                    conflict = true;
                    break;
                }
            if (!conflict) {
                cls[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
                placed = true;
                break;
            }
        }
        if (!placed) {
            classes.emplace_back(static_cast<std::size_t>(g.words), 0);
            classes.back()[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
        }
    }
    return static_cast<int>(classes.size());
}

namespace detail {

inline int popcount_set(const std::vector<std::uint64_t>& s) {
    int c = 0;
    for (std::uint64_t w : s) c += __builtin_popcountll(w);
    return c;
}

inline int lowest_bit(const std::vector<std::uint64_t>& s) {
    for (std::size_t w = 0; w < s.size(); ++w)
        if (s[w]) return static_cast<int>(w * 64) + __builtin_ctzll(s[w]);
    return -1;
}

// Branch-and-bound clique search with a greedy-coloring bound, vertices
// preordered by degree (descending, index ascending).
class ColoredCliqueEngine {
public:
    ColoredCliqueEngine(const BitGraph& g, int cap, std::uint64_t budget)
        : g_(g), cap_(cap), budget_(budget) {}

    CliqueSearch run() {
        const int n = g_.n;
        order_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order_[static_cast<std::size_t>(i)] = i;
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            int da = g_.degree(a), db = g_.degree(b);
            return da != db ? da > db : a < b;
        });
        // relabeled copy: vertex r is order_[r]
        re_ = BitGraph(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (g_.has_edge(order_[static_cast<std::size_t>(a)], order_[static_cast<std::size_t>(b)]))
                    re_.add_edge(a, b);
        std::vector<std::uint64_t> all(static_cast<std::size_t>(re_.words), 0);
        for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
        expand(all);
        std::vector<int> named;
        named.reserve(best_set_.size());
        for (int r : best_set_) named.push_back(order_[static_cast<std::size_t>(r)]);
        std::sort(named.begin(), named.end());
        return {std::move(named), nodes_, exceeded_};
    }

private:
    void expand(std::vector<std::uint64_t>& p) {
        if (exceeded_ || done_) return;
        if (++nodes_ > budget_) {
            exceeded_ = true;
            return;
        }
        const int pcount = popcount_set(p);
        if (pcount == 0) {
            if (static_cast<int>(cur_.size()) > best_) {
                best_ = static_cast<int>(cur_.size());
                best_set_ = cur_;
                if (best_ >= cap_) done_ = true;
            }
            return;
        }
        // greedy coloring: emit vertices in nondecreasing color order
        std::vector<int> verts, colors;
        verts.reserve(static_cast<std::size_t>(pcount));
        colors.reserve(static_cast<std::size_t>(pcount));
        {
            std::vector<std::uint64_t> rest = p;
            int color = 0;
            while (true) {
                int seed = lowest_bit(rest);
                if (seed < 0) break;
                ++color;
                std::vector<std::uint64_t> cls = rest;
                while (true) {
                    int v = lowest_bit(cls);
                    if (v < 0) break;
                    verts.push_back(v);
                    colors.push_back(color);
                    rest[static_cast<std::size_t>(v >> 6)] &= ~(1ULL << (v & 63));
                    cls[static_cast<std::size_t>(v >> 6)] &= ~(1ULL << (v & 63));
                    const std::uint64_t* nv = re_.row(v);
                    for (int w = 0; w < re_.words; ++w) cls[static_cast<std::size_t>(w)] &= ~nv[static_cast<std::size_t>(w)];
                }
            }
        }
        for (int i = static_cast<int>(verts.size()) - 1; i >= 0; --i) {
            if (exceeded_ || done_) return;
            if (static_cast<int>(cur_.size()) + colors[static_cast<std::size_t>(i)] <= best_) return;
            const int v = verts[static_cast<std::size_t>(i)];
            cur_.push_back(v);
            std::vector<std::uint64_t> next(static_cast<std::size_t>(re_.words));
            const std::uint64_t* nv = re_.row(v);
            for (int w = 0; w < re_.words; ++w) next[static_cast<std::size_t>(w)] = p[static_cast<std::size_t>(w)] & nv[static_cast<std::size_t>(w)];
            if (static_cast<int>(cur_.size()) > best_) {
                best_ = static_cast<int>(cur_.size());
                best_set_ = cur_;
                if (best_ >= cap_) done_ = true;
            }
            expand(next);
            cur_.pop_back();
            p[static_cast<std::size_t>(v >> 6)] &= ~(1ULL << (v & 63));
        }
    }

    const BitGraph& g_;
    BitGraph re_{0};
    std::vector<int> order_;
    std::vector<int> cur_, best_set_;
    int best_ = 0;
    int cap_;
    std::uint64_t budget_, nodes_ = 0;
    bool exceeded_ = false, done_ = false;
};

// Independent second strategy: maximum independent set on the complement,
// branching on the highest-static-degree active vertex, bounded by a greedy
// clique cover of the active set. An IS of the complement is a clique of g.
class ComplementMisEngine {
public:
    ComplementMisEngine(const BitGraph& g, int cap, std::uint64_t budget)
        : cap_(cap), budget_(budget) {
        const int n = g.n;
        co_ = BitGraph(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (!g.has_edge(a, b)) co_.add_edge(a, b);
        order_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order_[static_cast<std::size_t>(i)] = i;
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            int da = co_.degree(a), db = co_.degree(b);
            return da != db ? da > db : a < b;
        });
    }

    CliqueSearch run() {
        std::vector<std::uint64_t> all(static_cast<std::size_t>(co_.words), 0);
        for (int v = 0; v < co_.n; ++v) all[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
        branch(all);
        std::sort(best_set_.begin(), best_set_.end());
        return {best_set_, nodes_, exceeded_};
    }

private:
    int clique_cover_bound(const std::vector<std::uint64_t>& active) const {
        std::vector<std::uint64_t> rest = active;
        int cliques = 0;
        while (true) {
            int u = lowest_bit(rest);
            if (u < 0) break;
            ++cliques;
            rest[static_cast<std::size_t>(u >> 6)] &= ~(1ULL << (u & 63));
            std::vector<std::uint64_t> cand(static_cast<std::size_t>(co_.words));
            const std::uint64_t* nu = co_.row(u);
            for (int w = 0; w < co_.words; ++w) cand[static_cast<std::size_t>(w)] = rest[static_cast<std::size_t>(w)] & nu[static_cast<std::size_t>(w)];
            while (true) {
                int v = lowest_bit(cand);
                if (v < 0) break;
                rest[static_cast<std::size_t>(v >> 6)] &= ~(1ULL << (v & 63));
                cand[static_cast<std::size_t>(v >> 6)] &= ~(1ULL << (v & 63));
                const std::uint64_t* nv = co_.row(v);
                for (int w = 0; w < co_.words; ++w) cand[static_cast<std::size_t>(w)] &= nv[static_cast<std::size_t>(w)];
            }
        }
        return cliques;
    }

    void branch(const std::vector<std::uint64_t>& active) {
        if (exceeded_ || done_) return;
        if (++nodes_ > budget_) {
            exceeded_ = true;
            return;
        }
        if (static_cast<int>(cur_.size()) > best_) {
            best_ = static_cast<int>(cur_.size());
            best_set_ = cur_;
            if (best_ >= cap_) {
                done_ = true;
                return;
            }
        }
        int pick = -1;
        for (int r : order_) {
            if ((active[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1ULL) {
                pick = r;
                break;
            }
        }
        if (pick < 0) return;
        if (static_cast<int>(cur_.size()) + clique_cover_bound(active) <= best_) return;
        // include pick: drop its closed complement-neighborhood
        std::vector<std::uint64_t> inc = active;
        const std::uint64_t* np = co_.row(pick);
        for (int w = 0; w < co_.words; ++w) inc[static_cast<std::size_t>(w)] &= ~np[static_cast<std::size_t>(w)];
        inc[static_cast<std::size_t>(pick >> 6)] &= ~(1ULL << (pick & 63));
        cur_.push_back(pick);
        branch(inc);
        cur_.pop_back();
        if (exceeded_ || done_) return;
        // exclude pick
        std::vector<std::uint64_t> exc = active;
        exc[static_cast<std::size_t>(pick >> 6)] &= ~(1ULL << (pick & 63));
        branch(exc);
    }

    BitGraph co_{0};
    std::vector<int> order_;
    std::vector<int> cur_, best_set_;
    int best_ = 0;
    int cap_;
    std::uint64_t budget_, nodes_ = 0;
    bool exceeded_ = false, done_ = false;
};

inline bool is_clique(const BitGraph& g, const std::vector<int>& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!g.has_edge(vs[a], vs[b])) return false;
    return true;
}

}  // namespace detail

constexpr std::uint64_t kCliqueNodeBudget = 10'000'000;

/// Exact maximum clique (or the first clique reaching cap). Exact-search
/// entry point, capped at 64 vertices.
inline std::vector<int> exact_max_clique(const AuxiliaryGraph& g, int cap = -1,
                                         std::uint64_t budget = kCliqueNodeBudget) {
    if (g.n > 64) throw InvalidParameterError("exact clique search capped at 64 vertices, got " + std::to_string(g.n));
    if (g.n == 0) return {};
    BitGraph bg(g.n);
    for (const auto& [u, v] : g.edges) bg.add_edge(u, v);
    const int effective_cap = cap <= 0 ? g.n : cap;
    detail::ColoredCliqueEngine engine(bg, effective_cap, budget);
    CliqueSearch res = engine.run();
    if (res.budget_exceeded)
        throw BudgetExceededError("clique search exceeded its node budget", res.nodes);
    if (!detail::is_clique(bg, res.vertices))
        throw InvariantViolationError("clique certificate failed re-verification", -1);
    return res.vertices;
}

/// True iff T indexes a diagonal principal submatrix of H: nonzero diagonal,
/// zero in both off-diagonal positions. Such a T certifies rank(H) >= |T|.
template <FieldScalar T>
bool diagonal_submatrix_check(const HMatrix<T>& h, const std::vector<int>& t_set) {
    for (int i : t_set) {
        if (i < 0 || i >= h.n) throw IndexOutOfRangeError("index " + std::to_string(i) + " outside the H matrix");
        if (h.entries.at(i, i).is_zero()) return false;
    }
    for (std::size_t a = 0; a < t_set.size(); ++a)
        for (std::size_t b = a + 1; b < t_set.size(); ++b) {
            int i = t_set[a], j = t_set[b];
            if (!h.entries.at(i, j).is_zero() || !h.entries.at(j, i).is_zero()) return false;
        }
    return true;
}

struct Theorem2Report {
    int n = 0;               // instance size after any restriction
    int k = 0;
    int matching_size = 0;   // maximum matching in the original graph
    bool perfect_matching = false;
    bool restricted = false;  // degraded to the matched subfamilies
    long edge_count = 0;      // ordered nonsingular pairs of the checked instance
    long lower_bound_num = 0; // n^2; bound is n^2 / 4^k
    long pow4k = 0;
    bool holds = false;            // edge_count * 4^k >= n^2
    bool clique_rank_link_ok = false;  // max clique of G* <= rank(H), via diagonal submatrix
    bool turan_consistent = false;     // |E(G*)| <= (1 - 1/R) n^2 / 2 for R = C(2k,k)
    int aux_clique_size = 0;
    int h_rank = 0;
    long aux_edge_count = 0;
};

namespace detail {

template <FieldScalar T>
Theorem2Report theorem2_core(const std::vector<Matrix<T>>& fa, const std::vector<Matrix<T>>& fb) {
    BipartiteSumGraph<T> g = build_bipartite_graph(fa, fb);
    Matching m = maximum_bipartite_matching(g);
    Theorem2Report rep;
    rep.k = g.h.k;
    rep.matching_size = static_cast<int>(m.pairs.size());
    rep.perfect_matching = rep.matching_size == g.h.n;

    // reorder the right family along the matching so it sits on the diagonal;
    // without a perfect matching, restrict to the matched vertices
    std::vector<Matrix<T>> ra, rb;
    for (const auto& [u, v] : m.pairs) {
        ra.push_back(g.h.family_a[static_cast<std::size_t>(u)]);
        rb.push_back(g.h.family_b[static_cast<std::size_t>(v)]);
    }
    if (m.pairs.empty()) {
        rep.n = 0;
        rep.restricted = true;
        rep.holds = true;  // vacuous: no matched instance to check
        rep.clique_rank_link_ok = true;
        rep.turan_consistent = true;
        return rep;
    }
    rep.restricted = !rep.perfect_matching;

    HMatrix<T> h = build_h_matrix(ra, rb);
    rep.n = h.n;
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j)
            if (!h.entries.at(i, j).is_zero()) ++rep.edge_count;
    rep.lower_bound_num = static_cast<long>(h.n) * h.n;
    rep.pow4k = 1L << (2 * h.k);
    rep.holds = rep.edge_count * rep.pow4k >= rep.lower_bound_num;

    AuxiliaryGraph aux = build_auxiliary_graph(h);
    rep.aux_edge_count = static_cast<long>(aux.edges.size());

    BitGraph bg(aux.n);
    for (const auto& [u, v] : aux.edges) bg.add_edge(u, v);
    CliqueSearch cs = ColoredCliqueEngine(bg, aux.n, kCliqueNodeBudget).run();
    if (cs.budget_exceeded)
        throw BudgetExceededError("auxiliary clique search exceeded its node budget", cs.nodes);
    rep.aux_clique_size = static_cast<int>(cs.vertices.size());
    rep.h_rank = rank(h.entries);
    rep.clique_rank_link_ok = diagonal_submatrix_check(h, cs.vertices) && rep.aux_clique_size <= rep.h_rank;

    // Turan consistency at R = C(2k,k): G* has no clique beyond R, so its
    // edge count stays under (1 - 1/R) n^2 / 2; checked as 2 R |E| <= (R-1) n^2
    mpz_class r_bound = central_binomial_bound(h.k);
    mpz_class lhs = 2 * r_bound * rep.aux_edge_count;
    mpz_class rhs = (r_bound - 1) * rep.lower_bound_num;
    rep.turan_consistent = lhs <= rhs;
    return rep;
}

}  // namespace detail

/// Theorem 2 canary: with a perfect matching present, the nonsingular-sum
/// graph must carry at least n^2 / 4^k ordered edges. Degrades to the
/// matched subfamilies when the matching is not perfect.
template <FieldScalar T>
Theorem2Report verify_theorem2(const std::vector<Matrix<T>>& fa, const std::vector<Matrix<T>>& fb) {
    require_family_shape(fa, fb);
    if (!fa.front().field().characteristic_ok())
        throw CharacteristicTwoError("theorem checks require characteristic != 2");
    return detail::theorem2_core(fa, fb);
}

struct Theorem1Report {
    bool diagonal_is_matching = false;
    Theorem2Report t2;
};

/// Theorem 1: M1 = M2 = family of nonsingular matrices; the diagonal pairs
/// (A, A) are edges, forming a perfect matching, and Theorem 2 applies.
template <FieldScalar T>
Theorem1Report verify_theorem1(const std::vector<Matrix<T>>& family) {
    if (family.empty()) throw EmptyFamilyError("matrix family is empty");
    if (!family.front().field().characteristic_ok())
        throw CharacteristicTwoError("theorem checks require characteristic != 2");
    for (std::size_t i = 0; i < family.size(); ++i)
        if (det(family[i]).is_zero())
            throw SingularMemberError("family member is singular", static_cast<int>(i));
    Theorem1Report rep;
    rep.diagonal_is_matching = true;
    for (const Matrix<T>& a : family)
        if (det(a + a).is_zero()) rep.diagonal_is_matching = false;
    rep.t2 = detail::theorem2_core(family, family);
    return rep;
}

/// All of SL_2(F_q) in lexicographic entry order (a, b, c, d). Size q^3 - q.
inline std::vector<Matrix<Fp>> enumerate_sl2(std::uint64_t q) {
    if (q > 13)
        throw BudgetExceededError("SL2 enumeration capped at q = 13, got q = " + std::to_string(q),
                                  0);
    PrimeField f(q);  // validates primality
    std::vector<Matrix<Fp>> out;
    const long p = static_cast<long>(q);
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c)
                for (long d = 0; d < p; ++d) {
                    if (((a * d - b * c) % p + p) % p != 1) continue;
                    Matrix<Fp> m(2, 2, f);
                    m.at(0, 0) = f.element(a);
                    m.at(0, 1) = f.element(b);
                    m.at(1, 0) = f.element(c);
                    m.at(1, 1) = f.element(d);
                    out.push_back(std::move(m));
                }
    return out;
}

struct CliqueExperimentSide {
    int omega = 0;                  // 0 when the budget ran out before closure
    int best_found = 0;             // size of the best clique in hand: a lower bound
    int upper_bound = 0;            // certified; equals omega when the search closed
    std::vector<int> certificate;   // sorted 1-based vertex indices in the full graph
    std::uint64_t nodes_bnb = 0, nodes_mis = 0;
    bool agree = false;
    bool budget_exceeded = false;
    bool certificate_ok = false;
};

struct CliqueExperimentReport {
    std::uint64_t q = 0;
    long group_size = 0;
    CliqueExperimentSide nonsingular_sum;  // edges where det(A+B) != 0
    CliqueExperimentSide singular_sum;     // edges where det(A+B) = 0
};

namespace detail {

// Both sum graphs on SL_2 are invariant under right translation
// (det(AC + BC) = det(A+B) det(C)), so some maximum clique passes through
// the identity: omega(G) = 1 + omega(G[N(identity)]).
inline CliqueExperimentSide clique_side(const BitGraph& full, int identity_idx,
                                        std::uint64_t budget) {
    CliqueExperimentSide side;
    std::vector<int> nbrs;
    for (int v = 0; v < full.n; ++v)
        if (v != identity_idx && full.has_edge(identity_idx, v)) nbrs.push_back(v);
    BitGraph sub(static_cast<int>(nbrs.size()));
    for (std::size_t a = 0; a < nbrs.size(); ++a)
        for (std::size_t b = a + 1; b < nbrs.size(); ++b)
            if (full.has_edge(nbrs[a], nbrs[b])) sub.add_edge(static_cast<int>(a), static_cast<int>(b));

    CliqueSearch bnb = ColoredCliqueEngine(sub, sub.n, budget).run();
    CliqueSearch mis = ComplementMisEngine(sub, sub.n, budget).run();
    side.nodes_bnb = bnb.nodes;
    side.nodes_mis = mis.nodes;
    side.budget_exceeded = bnb.budget_exceeded || mis.budget_exceeded;

    const CliqueSearch& carrier = bnb.vertices.size() >= mis.vertices.size() ? bnb : mis;
    side.best_found = static_cast<int>(carrier.vertices.size()) + 1;
    side.certificate.push_back(identity_idx + 1);
    for (int v : carrier.vertices) side.certificate.push_back(nbrs[static_cast<std::size_t>(v)] + 1);
    std::sort(side.certificate.begin(), side.certificate.end());
    std::vector<int> zero_based;
    for (int v : side.certificate) zero_based.push_back(v - 1);
    side.certificate_ok = is_clique(full, zero_based);

    if (!side.budget_exceeded) {
        side.agree = bnb.vertices.size() == mis.vertices.size();
        side.omega = side.best_found;
        side.upper_bound = side.best_found;
    } else {
        // best-known bounds: the incumbent below, a coloring certificate above
        side.agree = bnb.vertices.size() == mis.vertices.size();
        side.upper_bound = 1 + greedy_coloring_bound(sub);
    }
    return side;
}

}  // namespace detail

/// Clique numbers of the nonsingular-sum and singular-sum graphs on
/// SL_2(F_q), each computed by two independent search strategies.
inline CliqueExperimentReport clique_number_experiment(std::uint64_t q,
                                                       std::uint64_t budget = kCliqueNodeBudget) {
    if (q == 2) throw CharacteristicTwoError("the experiment requires odd q");
    std::vector<Matrix<Fp>> sl2 = enumerate_sl2(q);
    const int n = static_cast<int>(sl2.size());
    PrimeField f(q);

    int identity_idx = -1;
    Matrix<Fp> id = Matrix<Fp>::identity(2, f);
    for (int i = 0; i < n; ++i)
        if (sl2[static_cast<std::size_t>(i)] == id) {
            identity_idx = i;
            break;
        }
    if (identity_idx < 0) throw InvariantViolationError("identity missing from the enumeration", -1);

    BitGraph nonsing(n), sing(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (det(sl2[static_cast<std::size_t>(i)] + sl2[static_cast<std::size_t>(j)]).is_zero())
                sing.add_edge(i, j);
            else
                nonsing.add_edge(i, j);
        }

    CliqueExperimentReport rep;
    rep.q = q;
    rep.group_size = n;
    rep.nonsingular_sum = detail::clique_side(nonsing, identity_idx, budget);
    rep.singular_sum = detail::clique_side(sing, identity_idx, budget);
    return rep;
}

/// Plain-text edge list, 1-based "i j" lines, ordered pairs.
template <FieldScalar T>
std::string edge_list_text(const BipartiteSumGraph<T>& g) {
    std::ostringstream os;
    for (int i = 0; i < g.h.n; ++i)
        for (int j = 0; j < g.h.n; ++j)
            if (g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                os << (i + 1) << ' ' << (j + 1) << '\n';
    return os.str();
}

inline std::string edge_list_text(const AuxiliaryGraph& g) {
    std::ostringstream os;
    for (const auto& [u, v] : g.edges) os << (u + 1) << ' ' << (v + 1) << '\n';
    return os.str();
}

}  // namespace nss

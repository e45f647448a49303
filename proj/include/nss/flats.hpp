#pragma once

#include <utility>
#include <vector>

#include "nss/constructions.hpp"
#include "nss/linalg.hpp"
#include "nss/random.hpp"
#include "nss/sumgraph.hpp"

namespace nss {

/// The d-flat {(x, Ax + v) : x in Q^d} inside Q^{2d}.
struct GraphFlat {
    int d;
    Matrix<Rational> a;  // d x d
    Matrix<Rational> v;  // d x 1
};

inline GraphFlat make_flat(Matrix<Rational> a, Matrix<Rational> v) {
    if (!a.is_square()) throw NonSquareError("flat matrix must be square");
    if (v.rows() != a.rows() || v.cols() != 1)
        throw ShapeMismatchError("flat offset must be a " + std::to_string(a.rows()) + "x1 column");
    return {a.rows(), std::move(a), std::move(v)};
}

/// Dimension of the intersection of two graph flats; -1 when empty.
/// Classified through the linear system (A_F - A_E) x = v_E - v_F.
inline int intersection_dimension(const GraphFlat& f, const GraphFlat& e) {
    if (f.d != e.d) throw DimensionMismatchError("flats of different dimension");
    SolveOutcome out = solve_consistency(f.a - e.a, e.v - f.v);
    switch (out.kind) {
        case SolveKind::UniqueSolution: return 0;
        case SolveKind::AffineSolutionSpace: return out.solution_space_dim;
        case SolveKind::Inconsistent: return -1;
    }
    return -1;
}

struct FlatPairFamily {
    int d;
    std::vector<std::pair<GraphFlat, GraphFlat>> pairs;  // each pair meets in one point
};

inline FlatPairFamily make_flat_pair_family(std::vector<std::pair<GraphFlat, GraphFlat>> pairs) {
    if (pairs.empty()) throw EmptyFamilyError("flat pair family is empty");
    const int d = pairs.front().first.d;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].first.d != d || pairs[i].second.d != d)
            throw DimensionMismatchError("flat pair family mixes dimensions");
        if (intersection_dimension(pairs[i].first, pairs[i].second) != 0)
            throw InvariantViolationError("listed pair does not meet in a single point",
                                          static_cast<int>(i));
    }
    return {d, std::move(pairs)};
}

struct FlatPairsLemmaReport {
    long n = 0;
    long single_point_cross_pairs = 0;  // ordered (i, j), i = j included
    long pow4d = 0;                     // bound is n^2 / 4^d
    bool holds = false;
};

/// Lemma count: ordered cross pairs (F_i, E_j) meeting in a single point
/// number at least n^2 / 4^d.
inline FlatPairsLemmaReport verify_flat_pairs_lemma(const FlatPairFamily& fam) {
    FlatPairsLemmaReport rep;
    rep.n = static_cast<long>(fam.pairs.size());
    rep.pow4d = 1L << (2 * fam.d);
    for (const auto& [fi, ei] : fam.pairs)
        for (const auto& [fj, ej] : fam.pairs)
            if (intersection_dimension(fi, ej) == 0) ++rep.single_point_cross_pairs;
    rep.holds = rep.single_point_cross_pairs * rep.pow4d >= rep.n * rep.n;
    return rep;
}

struct FlatArrangement {
    int d;
    std::vector<GraphFlat> flats;
};

inline FlatArrangement make_arrangement(std::vector<GraphFlat> flats) {
    if (flats.empty()) throw EmptyFamilyError("arrangement is empty");
    const int d = flats.front().d;
    for (const GraphFlat& f : flats)
        if (f.d != d) throw DimensionMismatchError("arrangement mixes dimensions");
    return {d, std::move(flats)};
}

inline void require_no_parallel(const FlatArrangement& arr) {
    const int n = static_cast<int>(arr.flats.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (arr.flats[static_cast<std::size_t>(i)].a == arr.flats[static_cast<std::size_t>(j)].a)
                throw ParallelFlatsError("flats " + std::to_string(i) + " and " + std::to_string(j) +
                                             " are parallel (equal direction matrix)",
                                         i, j);
}

struct RemovalReport {
    long n = 0;
    long zero_dim_pairs = 0;      // unordered pairs meeting in a single point
    long empty_pairs = 0;         // unordered pairs with empty intersection (reported, not counted)
    long positive_dim_pairs = 0;  // unordered pairs meeting in dimension >= 1
    Rational delta;               // zero_dim_pairs / n^2
    long greedy_matching = 0;     // M
    long cover_m = 0;             // m = 2M, vertices of the matching
    long pow4d = 0;
    bool chain_first = false;   // delta n^2 >= M^2 / 4^d
    bool chain_second = false;  // m = 2M
    bool chain_third = false;   // m <= sqrt(delta) 2^{d+1} n, squared
    bool holds = false;
};

/// Removal chain on the single-point intersection graph: with delta n^2
/// edges, a greedy maximal matching M and its cover m = 2M satisfy
/// delta n^2 >= M^2/4^d and m <= sqrt(delta) 2^{d+1} n. All comparisons on
/// squared forms in exact arithmetic.
inline RemovalReport removal_experiment(const FlatArrangement& arr) {
    require_no_parallel(arr);
    const int n = static_cast<int>(arr.flats.size());
    RemovalReport rep;
    rep.n = n;
    rep.pow4d = 1L << (2 * arr.d);

    AuxiliaryGraph g{n, {}, std::vector<std::vector<bool>>(static_cast<std::size_t>(n),
                                                           std::vector<bool>(static_cast<std::size_t>(n), false))};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int dim = intersection_dimension(arr.flats[static_cast<std::size_t>(i)],
                                                   arr.flats[static_cast<std::size_t>(j)]);
            if (dim == 0) {
                ++rep.zero_dim_pairs;
                g.edges.emplace_back(i, j);
                g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
                g.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
            } else if (dim < 0) {
                ++rep.empty_pairs;
            } else {
                ++rep.positive_dim_pairs;
            }
        }
    rep.delta = Rational(rep.zero_dim_pairs, static_cast<long>(n) * n);

    GreedyMatchingResult gm = greedy_maximal_matching(g);
    rep.greedy_matching = static_cast<long>(gm.matching.pairs.size());
    rep.cover_m = gm.cover.size;

    rep.chain_first = rep.zero_dim_pairs * rep.pow4d >= rep.greedy_matching * rep.greedy_matching;
    rep.chain_second = rep.cover_m == 2 * rep.greedy_matching;
    rep.chain_third = rep.cover_m * rep.cover_m <= rep.zero_dim_pairs * 4 * rep.pow4d;
    rep.holds = rep.chain_first && rep.chain_second && rep.chain_third;
    return rep;
}

/// Dimension of the smallest flat containing both: rank of the two
/// direction blocks [I; A] next to the base-point difference.
inline int affine_span_dim(const GraphFlat& f, const GraphFlat& e) {
    if (f.d != e.d) throw DimensionMismatchError("flats of different dimension");
    const int d = f.d;
    const RationalField q;
    Matrix<Rational> m(2 * d, 2 * d + 1, q);
    for (int c = 0; c < d; ++c) {
        m.at(c, c) = Rational(1);
        m.at(c, d + c) = Rational(1);
        for (int r = 0; r < d; ++r) {
            m.at(d + r, c) = f.a.at(r, c);
            m.at(d + r, d + c) = e.a.at(r, c);
        }
    }
    for (int r = 0; r < d; ++r) m.at(d + r, 2 * d) = f.v.at(r, 0) - e.v.at(r, 0);
    return rank(m);
}

struct Hyperplane {
    std::vector<mpz_class> normal;  // 4 entries, primitive, first nonzero positive
    Rational constant;              // points y satisfy normal . y = constant
};

struct HyperplaneCoverReport {
    long n = 0;
    long span4_pairs = 0;  // unordered pairs spanning R^4
    Rational delta;        // span4_pairs / n^2
    long removed_count = 0;
    long survivor_count = 0;
    Hyperplane hyperplane;
    long contained_count = 0;  // flats of the whole arrangement inside the hyperplane
    bool all_survivors_contained = false;
    bool holds = false;  // contained_count >= (1 - 8 sqrt(delta)) n, squared form
};

namespace detail {

// The line F intersect E (assumed dimension 1) lies inside flat g?
inline bool flat_contains_intersection_line(const GraphFlat& f, const GraphFlat& e,
                                            const GraphFlat& g) {
    Matrix<Rational> diff = f.a - e.a;
    Matrix<Rational> rhs = e.v - f.v;
    auto x0 = solve_particular(diff, rhs);
    if (!x0.has_value()) return false;
    Matrix<Rational> dir = nullspace_basis(diff);
    if (dir.cols() != 1) return false;
    // containment of {(x0 + t u, A_f (x0 + t u) + v_f)} in g:
    // (A_g - A_f) x0 = v_f - v_g and (A_g - A_f) u = 0
    Matrix<Rational> gd = g.a - f.a;
    if (!(gd * dir).is_zero()) return false;
    Matrix<Rational> need = f.v - g.v;
    return gd * *x0 == need;
}

inline bool flat_in_hyperplane(const GraphFlat& f, const Hyperplane& h) {
    // normal = (n_x, n_y); containment: n_x + A^T n_y = 0 and n_y . v = c
    Matrix<Rational> ny(2, 1, RationalField{});
    ny.at(0, 0) = Rational(h.normal[2]);
    ny.at(1, 0) = Rational(h.normal[3]);
    Matrix<Rational> lhs = f.a.transpose() * ny;
    if (!(lhs.at(0, 0) + Rational(h.normal[0])).is_zero()) return false;
    if (!(lhs.at(1, 0) + Rational(h.normal[1])).is_zero()) return false;
    Rational dot = ny.at(0, 0) * f.v.at(0, 0) + ny.at(1, 0) * f.v.at(1, 0);
    return dot == h.constant;
}

}  // namespace detail

/// Corollary check for 2-flats in R^4: after removing the greedy cover of
/// the span-R^4 graph, the first two survivors span a hyperplane that must
/// contain every survivor, at least (1 - 8 sqrt(delta)) n flats.
inline HyperplaneCoverReport hyperplane_cover_check(const FlatArrangement& arr) {
    if (arr.d != 2) throw DimensionMismatchError("hyperplane corollary is stated for 2-flats in R^4");
    const int n = static_cast<int>(arr.flats.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (arr.flats[static_cast<std::size_t>(i)].a == arr.flats[static_cast<std::size_t>(j)].a)
                throw PreconditionViolatedError("flats " + std::to_string(i) + " and " +
                                                std::to_string(j) + " are parallel");

    // exhaustive precondition: no three flats through one line
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (intersection_dimension(arr.flats[static_cast<std::size_t>(i)],
                                       arr.flats[static_cast<std::size_t>(j)]) != 1)
                continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (detail::flat_contains_intersection_line(arr.flats[static_cast<std::size_t>(i)],
                                                            arr.flats[static_cast<std::size_t>(j)],
                                                            arr.flats[static_cast<std::size_t>(k)]))
                    throw PreconditionViolatedError("flats " + std::to_string(i) + ", " + std::to_string(j) +
                                                    ", " + std::to_string(k) + " share a line");
            }
        }

    HyperplaneCoverReport rep;
    rep.n = n;
    AuxiliaryGraph span4{n, {}, std::vector<std::vector<bool>>(static_cast<std::size_t>(n),
                                                               std::vector<bool>(static_cast<std::size_t>(n), false))};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (affine_span_dim(arr.flats[static_cast<std::size_t>(i)],
                                arr.flats[static_cast<std::size_t>(j)]) == 4) {
                ++rep.span4_pairs;
                span4.edges.emplace_back(i, j);
            }
    rep.delta = Rational(rep.span4_pairs, static_cast<long>(n) * n);

    GreedyMatchingResult gm = greedy_maximal_matching(span4);
    rep.removed_count = gm.cover.size;
    std::vector<bool> removed(static_cast<std::size_t>(n), false);
    for (int v : gm.cover.vertices) removed[static_cast<std::size_t>(v)] = true;
    std::vector<int> survivors;
    for (int i = 0; i < n; ++i)
        if (!removed[static_cast<std::size_t>(i)]) survivors.push_back(i);
    rep.survivor_count = static_cast<long>(survivors.size());
    if (survivors.size() < 2)
        throw TooFewSurvivorsError("fewer than two flats survive the removal step");

    // hyperplane through the first two survivors (they meet in a line)
    const GraphFlat& f0 = arr.flats[static_cast<std::size_t>(survivors[0])];
    const GraphFlat& f1 = arr.flats[static_cast<std::size_t>(survivors[1])];
    Matrix<Rational> span(4, 5, RationalField{});
    for (int c = 0; c < 2; ++c) {
        span.at(c, c) = Rational(1);
        span.at(c, 2 + c) = Rational(1);
        for (int r = 0; r < 2; ++r) {
            span.at(2 + r, c) = f0.a.at(r, c);
            span.at(2 + r, 2 + c) = f1.a.at(r, c);
        }
    }
    for (int r = 0; r < 2; ++r) span.at(2 + r, 4) = f0.v.at(r, 0) - f1.v.at(r, 0);
    Matrix<Rational> null = nullspace_basis(span.transpose());
    if (null.cols() != 1)
        throw InvariantViolationError("surviving pair does not span a hyperplane", survivors[0]);

    // primitive integer normal, first nonzero entry positive
    mpz_class lcm(1);
    for (int r = 0; r < 4; ++r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), null.at(r, 0).den().get_mpz_t());
    std::vector<mpz_class> normal(4);
    for (int r = 0; r < 4; ++r) normal[static_cast<std::size_t>(r)] = null.at(r, 0).num() * (lcm / null.at(r, 0).den());
    mpz_class g(0);
    for (const mpz_class& z : normal) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    for (mpz_class& z : normal) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    for (const mpz_class& z : normal) {
        if (z == 0) continue;
        if (z < 0)
            for (mpz_class& w : normal) w = -w;
        break;
    }
    rep.hyperplane.normal = normal;
    // constant from the representative point (0, v) of the first survivor
    rep.hyperplane.constant = Rational(normal[2]) * f0.v.at(0, 0) + Rational(normal[3]) * f0.v.at(1, 0);

    rep.all_survivors_contained = true;
    for (int i = 0; i < n; ++i) {
        const bool inside = detail::flat_in_hyperplane(arr.flats[static_cast<std::size_t>(i)], rep.hyperplane);
        if (inside) ++rep.contained_count;
        if (!removed[static_cast<std::size_t>(i)] && !inside) rep.all_survivors_contained = false;
    }

    // contained >= (1 - 8 sqrt(delta)) n, squared: (n - contained)^2 <= 64 delta n^2
    const long shortfall = rep.n - rep.contained_count;
    rep.holds = rep.all_survivors_contained &&
                (shortfall <= 0 || shortfall * shortfall <= 64 * rep.span4_pairs);
    return rep;
}

/// Seeded pair family: A_i random, B_i = A_i - E_i with E_i nonsingular, so
/// every listed pair meets in a single point; offsets uniform in [-9, 9].
inline FlatPairFamily random_flat_pair_family(SplitMix64& rng, int n, int d) {
    std::vector<std::pair<GraphFlat, GraphFlat>> pairs;
    for (int i = 0; i < n; ++i) {
        Matrix<Rational> a = random_rational_matrix(rng, d, d);
        Matrix<Rational> e = random_nonsingular_rational(rng, d);
        pairs.emplace_back(make_flat(a, random_rational_matrix(rng, d, 1)),
                           make_flat(a - e, random_rational_matrix(rng, d, 1)));
    }
    return make_flat_pair_family(std::move(pairs));
}

/// Pair family realizing the placement construction: F_r direction left[r],
/// E_r direction -right[r]; cross intersections mirror nonsingular sums.
inline FlatPairFamily flat_pairs_from_example2(const Example2Family& fam, SplitMix64& rng) {
    std::vector<std::pair<GraphFlat, GraphFlat>> pairs;
    const int d = fam.k;
    for (std::size_t r = 0; r < fam.left.size(); ++r)
        pairs.emplace_back(make_flat(fam.left[r], random_rational_matrix(rng, d, 1)),
                           make_flat(-fam.right[r], random_rational_matrix(rng, d, 1)));
    return make_flat_pair_family(std::move(pairs));
}

/// Seeded arrangement, pairwise non-parallel: generic_count flats with
/// pairwise nonsingular differences, the rest sharing a singular difference
/// pattern (meeting in lines or not at all).
inline FlatArrangement random_removal_arrangement(SplitMix64& rng, int n, int d, int generic_count) {
    if (generic_count < 0 || generic_count > n) throw InvalidParameterError("generic count out of range");
    std::vector<GraphFlat> flats;
    std::vector<Matrix<Rational>> dirs;
    for (int i = 0; i < generic_count; ++i) {
        for (;;) {
            Matrix<Rational> a = random_rational_matrix(rng, d, d);
            bool ok = true;
            for (const Matrix<Rational>& b : dirs)
                if (det(a - b).is_zero()) {
                    ok = false;
                    break;
                }
            if (ok) {
                dirs.push_back(a);
                break;
            }
        }
    }
    if (generic_count < n) {
        // degenerate block: base + i * N with N singular, differences singular
        Matrix<Rational> base = random_rational_matrix(rng, d, d);
        Matrix<Rational> nil(d, d, RationalField{});
        nil.at(0, 0) = Rational(1);
        for (int i = generic_count; i < n; ++i) {
            for (;;) {
                Matrix<Rational> a = base + scale(Rational(i - generic_count + 1), nil);
                bool distinct = true;
                for (const Matrix<Rational>& b : dirs)
                    if (a == b) {
                        distinct = false;
                        break;
                    }
                if (distinct) {
                    dirs.push_back(std::move(a));
                    break;
                }
                base = random_rational_matrix(rng, d, d);
            }
        }
    }
    flats.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        flats.push_back(make_flat(dirs[static_cast<std::size_t>(i)], random_rational_matrix(rng, d, 1)));
    return make_arrangement(std::move(flats));
}

/// d = 2 family inside the hyperplane y_2 = 0 (A_i = [[p_i, q_i], [0, 0]],
/// v_i = (r_i, 0) with p = i, q = i^2 seeded r), plus outliers meeting every
/// family flat in a single point.
inline FlatArrangement hyperplane_family(SplitMix64& rng, int in_plane, int outliers) {
    if (in_plane < 2) throw InvalidParameterError("need at least two flats in the hyperplane");
    std::vector<GraphFlat> flats;
    const RationalField q;
    for (int i = 1; i <= in_plane; ++i) {
        Matrix<Rational> a(2, 2, q), v(2, 1, q);
        a.at(0, 0) = Rational(i);
        a.at(0, 1) = Rational(static_cast<long>(i) * i);
        v.at(0, 0) = Rational(rng.int_in(-9, 9));
        flats.push_back(make_flat(std::move(a), std::move(v)));
    }
    const long shift = rng.int_in(-9, 9);
    for (int t = 1; t <= outliers; ++t) {
        Matrix<Rational> a(2, 2, q), v(2, 1, q);
        a.at(1, 0) = Rational(t);
        a.at(1, 1) = Rational(-t);
        // offsets on a parabola: no three outliers ever share a line
        v.at(1, 0) = Rational(static_cast<long>(t) * t + shift);
        flats.push_back(make_flat(std::move(a), std::move(v)));
    }
    return make_arrangement(std::move(flats));
}

}  // namespace nss

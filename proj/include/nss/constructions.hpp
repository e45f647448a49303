#pragma once

#include <utility>
#include <vector>

#include "nss/detsum.hpp"
#include "nss/linalg.hpp"
#include "nss/matrix.hpp"

namespace nss {

/// Diagonal family: first k-1 diagonal entries in {-1,+1}, last entry in
/// {-s,...,-1,1,...,s}. Size s * 2^k, every member nonsingular.
struct Example1Family {
    int k;
    int s;
    std::vector<Matrix<Rational>> members;  // sign vectors lex-major, last entry ascending
};

inline std::vector<long> symmetric_range(int s) {
    std::vector<long> vals;
    for (long v = -s; v <= s; ++v)
        if (v != 0) vals.push_back(v);
    return vals;
}

inline Example1Family example1(int k, int s) {
    if (k < 1) throw InvalidParameterError("dimension must be at least 1");
    if (s < 1) throw InvalidParameterError("scale parameter must be at least 1");
    Example1Family fam{k, s, {}};
    const RationalField f;
    const std::vector<long> last = symmetric_range(s);
    const unsigned long signs = 1UL << (k - 1);
    fam.members.reserve(static_cast<std::size_t>(signs) * last.size());
    for (unsigned long v = 0; v < signs; ++v) {
        for (long t : last) {
            Matrix<Rational> m(k, k, f);
            for (int i = 0; i < k - 1; ++i)
                m.at(i, i) = Rational(((v >> (k - 2 - i)) & 1UL) ? 1 : -1);
            m.at(k - 1, k - 1) = Rational(t);
            fam.members.push_back(std::move(m));
        }
    }
    return fam;
}

struct Example1CountReport {
    long size;
    long nonsingular_ordered_pairs;
    long expected;  // |M| * (2s - 1)
    bool holds;
};

/// Exhaustive ordered-pair count of nonsingular sums over M x M.
inline Example1CountReport verify_example1_counts(const Example1Family& fam) {
    Example1CountReport r{static_cast<long>(fam.members.size()), 0, 0, false};
    for (const Matrix<Rational>& a : fam.members)
        for (const Matrix<Rational>& b : fam.members)
            if (!det(a + b).is_zero()) ++r.nonsingular_ordered_pairs;
    r.expected = r.size * (2L * fam.s - 1);
    r.holds = r.nonsingular_ordered_pairs == r.expected;
    return r;
}

/// Partial permutation pattern: entry t at (i_l, j_l) for the sorted members
/// of I and J, zero elsewhere.
inline Matrix<Rational> placement_matrix(int k, const IndexSet& i_set, const IndexSet& j_set, long t) {
    if (i_set.size() != j_set.size()) throw SizeMismatchError("index sets of different sizes");
    Matrix<Rational> m(k, k, RationalField{});
    for (int l = 0; l < i_set.size(); ++l)
        m.at(i_set.members()[static_cast<std::size_t>(l)] - 1,
             j_set.members()[static_cast<std::size_t>(l)] - 1) = Rational(t);
    return m;
}

struct Example2Pairing {
    IndexSet i, j;  // canonical side, (I,J) < (Ibar,Jbar)
    long t;
};

/// Paired families left[r] = M^t_{I,J}, right[r] = M^t_{Ibar,Jbar}, one
/// orientation per unordered complement pair. Full variant: t over
/// {-s..-1,1..s}, size s*C(k,k/2)^2. Identity-only: t = 1, size C(k,k/2)^2/2.
struct Example2Family {
    int k;
    int s;
    bool identity_only;
    std::vector<Matrix<Rational>> left, right;
    std::vector<Example2Pairing> pairing;  // r -> (I, J, t)
};

inline Example2Family example2(int k, int s, bool identity_only = false) {
    if (k < 2 || k % 2 != 0) throw OddDimensionError("dimension must be even and at least 2");
    if (s < 1) throw InvalidParameterError("scale parameter must be at least 1");
    Example2Family fam{k, s, identity_only, {}, {}, {}};
    const std::vector<long> ts = identity_only ? std::vector<long>{1} : symmetric_range(s);
    const auto halves = IndexSet::all_of_size(k, k / 2);
    for (const IndexSet& i_set : halves) {
        const IndexSet ic = i_set.complement();
        for (const IndexSet& j_set : halves) {
            const IndexSet jc = j_set.complement();
            // keep one orientation per unordered pair {(I,J),(Ibar,Jbar)}
            if (std::make_pair(ic, jc) < std::make_pair(i_set, j_set)) continue;
            for (long t : ts) {
                fam.left.push_back(placement_matrix(k, i_set, j_set, t));
                fam.right.push_back(placement_matrix(k, ic, jc, t));
                fam.pairing.push_back({i_set, j_set, t});
            }
        }
    }
    return fam;
}

struct Example2CountReport {
    long n;
    std::vector<long> per_vertex_partners;  // nonsingular-sum partners of each left vertex
    long expected;                          // 2s, or 1 for identity-only
    bool holds;                             // every count equals expected
    bool diagonal_pattern_holds;            // adjacency matches the complement pairing exactly
    long edges;                             // total nonsingular ordered pairs, = expected * n when holds
};

/// Exhaustive check of the partner structure: det(left[r] + right[r']) != 0
/// exactly when r and r' share the canonical (I, J).
inline Example2CountReport verify_example2_counts(const Example2Family& fam) {
    const long n = static_cast<long>(fam.left.size());
    Example2CountReport r{n, std::vector<long>(static_cast<std::size_t>(n), 0),
                          fam.identity_only ? 1L : 2L * fam.s, true, true, 0};
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b) {
            const bool nonsingular = !det(fam.left[static_cast<std::size_t>(a)] +
                                          fam.right[static_cast<std::size_t>(b)]).is_zero();
            const bool same_block = fam.pairing[static_cast<std::size_t>(a)].i == fam.pairing[static_cast<std::size_t>(b)].i &&
                                    fam.pairing[static_cast<std::size_t>(a)].j == fam.pairing[static_cast<std::size_t>(b)].j;
            if (nonsingular) {
                ++r.per_vertex_partners[static_cast<std::size_t>(a)];
                ++r.edges;
            }
            if (nonsingular != same_block) r.diagonal_pattern_holds = false;
        }
    }
    for (long c : r.per_vertex_partners)
        if (c != r.expected) r.holds = false;
    return r;
}

}  // namespace nss

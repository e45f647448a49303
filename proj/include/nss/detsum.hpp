#pragma once

#include <gmpxx.h>

#include <vector>

#include "nss/linalg.hpp"
#include "nss/matrix.hpp"

namespace nss {

/// Parity of the signed-minor exponent for the pair (I, J), 1-based members.
inline int sigma_parity(const IndexSet& i, const IndexSet& j) {
    if (i.ambient() != j.ambient())
        throw SizeMismatchError("index sets over different ambients");
    if (i.size() != j.size())
        throw SizeMismatchError("index sets of different sizes: " + std::to_string(i.size()) +
                                " vs " + std::to_string(j.size()));
    return static_cast<int>((i.index_sum() + j.index_sum()) % 2);
}

template <FieldScalar T>
struct MinorTerm {
    IndexSet i, j;   // rows of A / cols of A; complements pick B's minor
    int parity;      // sigma(I, J) mod 2
    T minor_a;       // det(A[I x J])
    T minor_b;       // det(B[Ibar x Jbar])
    T signed_product;
};

template <FieldScalar T>
struct SumExpansion {
    int k;
    std::vector<MinorTerm<T>> terms;  // lexicographic on (|I|, I, J)
    T total;
};

/// Expansion of det(A+B) into signed products of complementary minors.
/// Terms are enumerated lexicographically on (l, I, J); the term count is
/// the central binomial coefficient C(2k, k).
template <FieldScalar T>
SumExpansion<T> expand_det_sum(const Matrix<T>& a, const Matrix<T>& b) {
    if (!a.is_square() || !b.is_square()) throw NonSquareError("expansion needs square matrices");
    if (a.rows() != b.rows())
        throw ShapeMismatchError("matrices of different dimension: " + std::to_string(a.rows()) +
                                 " vs " + std::to_string(b.rows()));
    if (!(a.field() == b.field())) throw FieldMismatchError("expansion over mixed fields");
    const int k = a.rows();
    SumExpansion<T> out{k, {}, a.field().zero()};
    for (int l = 0; l <= k; ++l) {
        for (const IndexSet& i : IndexSet::all_of_size(k, l)) {
            for (const IndexSet& j : IndexSet::all_of_size(k, l)) {
                MinorTerm<T> t{i, j, sigma_parity(i, j),
                               det(a.submatrix(i, j)),
                               det(b.submatrix(i.complement(), j.complement())),
                               a.field().zero()};
                T prod = t.minor_a * t.minor_b;
                t.signed_product = t.parity ? -prod : prod;
                out.total += t.signed_product;
                out.terms.push_back(std::move(t));
            }
        }
    }
    return out;
}

template <FieldScalar T>
struct HMatrix {
    std::vector<Matrix<T>> family_a, family_b;  // n matrices, each k x k
    Matrix<T> entries;                          // h_ij = det(A_i + B_j)
    int n;
    int k;
};

template <FieldScalar T>
void require_family_shape(const std::vector<Matrix<T>>& fa, const std::vector<Matrix<T>>& fb) {
    if (fa.empty() || fb.empty()) throw EmptyFamilyError("matrix family is empty");
    if (fa.size() != fb.size())
        throw ShapeMismatchError("families of different lengths: " + std::to_string(fa.size()) +
                                 " vs " + std::to_string(fb.size()));
    const Matrix<T>& first = fa.front();
    if (!first.is_square()) throw NonSquareError("family members must be square");
    for (const auto* fam : {&fa, &fb})
        for (const Matrix<T>& m : *fam) {
            if (m.rows() != first.rows() || m.cols() != first.cols())
                throw ShapeMismatchError("family members of different dimensions");
            if (!(m.field() == first.field())) throw FieldMismatchError("family over mixed fields");
        }
}

/// The n x n matrix with h_ij = det(A_i + B_j).
template <FieldScalar T>
HMatrix<T> build_h_matrix(const std::vector<Matrix<T>>& fa, const std::vector<Matrix<T>>& fb) {
    require_family_shape(fa, fb);
    const int n = static_cast<int>(fa.size());
    const int k = fa.front().rows();
    Matrix<T> h(n, n, fa.front().field());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = det(fa[static_cast<std::size_t>(i)] + fb[static_cast<std::size_t>(j)]);
    return {fa, fb, std::move(h), n, k};
}

/// The rank-<=1 summand H^(I,J): entry (i,j) is
/// (-1)^sigma det(A_i[I x J]) det(B_j[Ibar x Jbar]). Row factor depends only
/// on i, column factor only on j.
template <FieldScalar T>
Matrix<T> rank_one_component(const std::vector<Matrix<T>>& fa, const std::vector<Matrix<T>>& fb,
                             const IndexSet& i_set, const IndexSet& j_set) {
    require_family_shape(fa, fb);
    const int parity = sigma_parity(i_set, j_set);
    const int n = static_cast<int>(fa.size());
    const auto& f = fa.front().field();
    std::vector<T> row_factor, col_factor;
    row_factor.reserve(static_cast<std::size_t>(n));
    col_factor.reserve(static_cast<std::size_t>(n));
    const IndexSet ic = i_set.complement(), jc = j_set.complement();
    for (int i = 0; i < n; ++i) row_factor.push_back(det(fa[static_cast<std::size_t>(i)].submatrix(i_set, j_set)));
    for (int j = 0; j < n; ++j) col_factor.push_back(det(fb[static_cast<std::size_t>(j)].submatrix(ic, jc)));
    Matrix<T> out(n, n, f);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T prod = row_factor[static_cast<std::size_t>(i)] * col_factor[static_cast<std::size_t>(j)];
            out.at(i, j) = parity ? -prod : prod;
        }
    return out;
}

inline mpz_class binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// C(2k, k), with the identity sum_i C(k,i)^2 = C(2k,k) verified on the way.
inline mpz_class central_binomial_bound(int k) {
    if (k < 0) throw InvalidParameterError("dimension must be non-negative");
    mpz_class direct = binomial(2 * k, k);
    mpz_class square_sum(0);
    for (int i = 0; i <= k; ++i) {
        mpz_class c = binomial(k, i);
        square_sum += c * c;
    }
    if (direct != square_sum)
        throw InvariantViolationError("binomial identity failed at k=" + std::to_string(k), k);
    return direct;
}

struct RankBoundReport {
    int rank;
    mpz_class bound;
    bool holds;
};

template <FieldScalar T>
RankBoundReport verify_rank_bound(const HMatrix<T>& h) {
    RankBoundReport r{rank(h.entries), central_binomial_bound(h.k), false};
    r.holds = r.bound >= r.rank;
    return r;
}

}  // namespace nss

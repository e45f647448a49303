#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "nss/matrix.hpp"

namespace nss {

namespace detail {

// Fraction-free (Bareiss) determinant of an integer matrix. Every division
// is exact; intermediates are minors of the input.
inline mpz_class bareiss_det(std::vector<std::vector<mpz_class>>& w) {
    const int n = static_cast<int>(w.size());
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (w[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) { pivot = i; break; }
            if (pivot < 0) return 0;
            std::swap(w[static_cast<std::size_t>(k)], w[static_cast<std::size_t>(pivot)]);
            sign = -sign;
        }
        const std::size_t ku = static_cast<std::size_t>(k);
        for (int i = k + 1; i < n; ++i) {
            const std::size_t iu = static_cast<std::size_t>(i);
            for (int j = k + 1; j < n; ++j) {
                const std::size_t ju = static_cast<std::size_t>(j);
                mpz_class t = w[ku][ku] * w[iu][ju] - w[iu][ku] * w[ku][ju];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w[iu][ju] = t;
            }
            w[iu][ku] = 0;
        }
        prev = w[ku][ku];
    }
    mpz_class d = w[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
    return sign < 0 ? mpz_class(-d) : d;
}

}  // namespace detail

/// Exact determinant over Q: clear denominators row by row, run Bareiss
/// over the integers, divide by the cleared factor.
inline Rational det(const Matrix<Rational>& m) {
    if (!m.is_square()) throw NonSquareError("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return Rational(1);
    std::vector<std::vector<mpz_class>> w(static_cast<std::size_t>(n),
                                          std::vector<mpz_class>(static_cast<std::size_t>(n)));
    mpz_class cleared(1);
    for (int i = 0; i < n; ++i) {
        mpz_class l(1);
        for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).den().get_mpz_t());
        for (int j = 0; j < n; ++j) {
            const Rational& x = m.at(i, j);
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x.num() * (l / x.den());
        }
        cleared *= l;
    }
    return Rational(detail::bareiss_det(w), cleared);
}

/// Exact determinant over F_p by modular Gaussian elimination.
inline Fp det(const Matrix<Fp>& m) {
    if (!m.is_square()) throw NonSquareError("determinant of non-square matrix");
    const int n = m.rows();
    const PrimeField f = m.field();
    if (n == 0) return f.one();
    std::vector<std::vector<Fp>> w;
    w.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<Fp> row;
        row.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) row.push_back(m.at(i, j));
        w.push_back(std::move(row));
    }
    Fp acc = f.one();
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].is_zero()) { pivot = i; break; }
        if (pivot < 0) return f.zero();
        if (pivot != k) {
            std::swap(w[static_cast<std::size_t>(k)], w[static_cast<std::size_t>(pivot)]);
            acc = -acc;
        }
        const Fp& pk = w[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        acc *= pk;
        const Fp inv = pk.inverse();
        for (int i = k + 1; i < n; ++i) {
            Fp factor = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * inv;
            if (factor.is_zero()) continue;
            for (int j = k; j < n; ++j)
                w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    factor * w[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        }
    }
    return acc;
}

/// Exact rank by Gaussian elimination with division. Works for rectangular
/// input; a second elimination path independent of the Bareiss determinant.
template <FieldScalar T>
int rank(const Matrix<T>& m) {
    const int rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::vector<T>> w;
    w.reserve(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        std::vector<T> row;
        row.reserve(static_cast<std::size_t>(cols));
        for (int j = 0; j < cols; ++j) row.push_back(m.at(i, j));
        w.push_back(std::move(row));
    }
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (!w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(w[static_cast<std::size_t>(r)], w[static_cast<std::size_t>(pivot)]);
        const T inv_p = w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (int i = r + 1; i < rows; ++i) {
            const T& lead = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (lead.is_zero()) continue;
            T factor = lead / inv_p;
            for (int j = c; j < cols; ++j)
                w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                    factor * w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        ++r;
    }
    return r;
}

enum class SolveKind { UniqueSolution, AffineSolutionSpace, Inconsistent };

struct SolveOutcome {
    SolveKind kind;
    int solution_space_dim;  // 0 for unique, d - rank(A) for affine, -1 for inconsistent
};

/// Consistency classification of A x = b for square d x d A.
template <FieldScalar T>
SolveOutcome solve_consistency(const Matrix<T>& a, const Matrix<T>& b) {
    if (!a.is_square()) throw NonSquareError("coefficient matrix must be square");
    if (b.rows() != a.rows() || b.cols() != 1)
        throw ShapeMismatchError("right-hand side must be a " + std::to_string(a.rows()) + "x1 column");
    if (!(a.field() == b.field())) throw FieldMismatchError("system over mixed fields");
    const int d = a.rows();
    const int ra = rank(a);
    if (ra == d) return {SolveKind::UniqueSolution, 0};
    Matrix<T> aug(d, d + 1, a.field());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, d) = b.at(i, 0);
    }
    if (rank(aug) == ra) return {SolveKind::AffineSolutionSpace, d - ra};
    return {SolveKind::Inconsistent, -1};
}

namespace detail {

// Reduced row echelon form in place; returns pivot columns.
template <FieldScalar T>
std::vector<int> rref(std::vector<std::vector<T>>& w, int rows, int cols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (!w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(w[static_cast<std::size_t>(r)], w[static_cast<std::size_t>(pivot)]);
        T inv = w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (int j = c; j < cols; ++j)
            w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] / inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const T factor = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (factor.is_zero()) continue;
            for (int j = c; j < cols; ++j)
                w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                    factor * w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// One solution of A x = b if the system is consistent (A may be rectangular).
template <FieldScalar T>
std::optional<Matrix<T>> solve_particular(const Matrix<T>& a, const Matrix<T>& b) {
    if (b.rows() != a.rows() || b.cols() != 1) throw ShapeMismatchError("right-hand side shape");
    if (!(a.field() == b.field())) throw FieldMismatchError("system over mixed fields");
    const int rows = a.rows(), cols = a.cols();
    std::vector<std::vector<T>> w;
    w.reserve(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        std::vector<T> row;
        row.reserve(static_cast<std::size_t>(cols) + 1);
        for (int j = 0; j < cols; ++j) row.push_back(a.at(i, j));
        row.push_back(b.at(i, 0));
        w.push_back(std::move(row));
    }
    std::vector<int> pivots = detail::rref(w, rows, cols + 1);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // pivot in the b column
    Matrix<T> x(cols, 1, a.field());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x.at(pivots[r], 0) = w[r][static_cast<std::size_t>(cols)];
    return x;
}

/// Basis of the nullspace of A, as columns. Empty matrix (cols x 0) when trivial.
template <FieldScalar T>
Matrix<T> nullspace_basis(const Matrix<T>& a) {
    const int rows = a.rows(), cols = a.cols();
    std::vector<std::vector<T>> w;
    w.reserve(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        std::vector<T> row;
        row.reserve(static_cast<std::size_t>(cols));
        for (int j = 0; j < cols; ++j) row.push_back(a.at(i, j));
        w.push_back(std::move(row));
    }
    std::vector<int> pivots = detail::rref(w, rows, cols);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    const int nullity = cols - static_cast<int>(pivots.size());
    Matrix<T> basis(cols, nullity, a.field());
    int out = 0;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        basis.at(free, out) = a.field().one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], out) = -w[r][static_cast<std::size_t>(free)];
        ++out;
    }
    return basis;
}

}  // namespace nss

#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nss/errors.hpp"
#include "nss/field.hpp"

namespace nss {

/// Strictly increasing subset of {1, ..., ambient}. 1-based throughout,
/// matching the row/column index convention of the minor expansion.
class IndexSet {
public:
    IndexSet(std::vector<int> members, int ambient) : members_(std::move(members)), ambient_(ambient) {
        if (ambient_ < 0) throw InvalidParameterError("negative ambient");
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (members_[i] < 1 || members_[i] > ambient_)
                throw IndexOutOfRangeError("index " + std::to_string(members_[i]) + " outside {1,...," +
                                           std::to_string(ambient_) + "}");
            if (i > 0 && members_[i - 1] >= members_[i])
                throw InvalidParameterError("index set not strictly increasing");
        }
    }

    static IndexSet full(int ambient) {
        std::vector<int> m(static_cast<std::size_t>(ambient));
        for (int i = 0; i < ambient; ++i) m[static_cast<std::size_t>(i)] = i + 1;
        return IndexSet(std::move(m), ambient);
    }

    static IndexSet empty(int ambient) { return IndexSet({}, ambient); }

    /// All subsets of the given size in lexicographic order.
    static std::vector<IndexSet> all_of_size(int ambient, int size) {
        std::vector<IndexSet> out;
        if (size < 0 || size > ambient) return out;
        std::vector<int> cur(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
        while (true) {
            out.emplace_back(cur, ambient);
            int i = size - 1;
            while (i >= 0 && cur[static_cast<std::size_t>(i)] == ambient - (size - 1 - i)) --i;
            if (i < 0) break;
            ++cur[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
        return out;
    }

    IndexSet complement() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(ambient_) - members_.size());
        std::size_t pos = 0;
        for (int i = 1; i <= ambient_; ++i) {
            if (pos < members_.size() && members_[pos] == i) {
                ++pos;
            } else {
                out.push_back(i);
            }
        }
        return IndexSet(std::move(out), ambient_);
    }

    int size() const { return static_cast<int>(members_.size()); }
    int ambient() const { return ambient_; }
    const std::vector<int>& members() const { return members_; }

    long index_sum() const {
        long s = 0;
        for (int m : members_) s += m;
        return s;
    }

    bool operator==(const IndexSet& o) const = default;
    bool operator<(const IndexSet& o) const { return members_ < o.members_; }

private:
    std::vector<int> members_;
    int ambient_;
};

/// Dense row-major matrix over one exact field. The 0x0 matrix is valid;
/// its determinant is the field's one (empty product).
template <FieldScalar T>
class Matrix {
public:
    using scalar_type = T;
    using field_type = typename T::field_type;

    Matrix(int rows, int cols, field_type f)
        : rows_(rows), cols_(cols), field_(f),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), f.zero()) {
        if (rows < 0 || cols < 0) throw InvalidParameterError("negative matrix dimension");
    }

    Matrix(std::initializer_list<std::initializer_list<T>> init, field_type f)
        : rows_(static_cast<int>(init.size())), cols_(0), field_(f) {
        for (const auto& row : init) {
            if (cols_ == 0) cols_ = static_cast<int>(row.size());
            if (static_cast<int>(row.size()) != cols_)
                throw ShapeMismatchError("ragged initializer");
            for (const auto& x : row) {
                if (!(x.field() == f)) throw FieldMismatchError("initializer entry from wrong field");
                data_.push_back(x);
            }
        }
    }

    static Matrix identity(int n, field_type f) {
        Matrix m(n, n, f);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const field_type& field() const { return field_; }
    bool is_square() const { return rows_ == cols_; }

    // 0-based access
    T& at(int r, int c) { return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)]; }
    const T& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)]; }

    const std::vector<T>& entries() const { return data_; }

    bool is_zero() const {
        for (const T& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, field_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    /// Rows from I, columns from J, in increasing index order (1-based sets).
    Matrix submatrix(const IndexSet& row_set, const IndexSet& col_set) const {
        if (row_set.ambient() != rows_ || col_set.ambient() != cols_)
            throw IndexOutOfRangeError("index-set ambient does not match matrix shape");
        Matrix out(row_set.size(), col_set.size(), field_);
        for (int i = 0; i < row_set.size(); ++i)
            for (int j = 0; j < col_set.size(); ++j)
                out.at(i, j) = at(row_set.members()[static_cast<std::size_t>(i)] - 1,
                                  col_set.members()[static_cast<std::size_t>(j)] - 1);
        return out;
    }

private:
    int rows_, cols_;
    field_type field_;
    std::vector<T> data_;
};

namespace detail {
template <FieldScalar T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatchError("shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                 " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    if (!(a.field() == b.field())) throw FieldMismatchError("matrices over different fields");
}
}  // namespace detail

template <FieldScalar T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require_same_shape(a, b);
    Matrix<T> out(a.rows(), a.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

template <FieldScalar T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require_same_shape(a, b);
    Matrix<T> out(a.rows(), a.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
    return out;
}

template <FieldScalar T>
Matrix<T> operator-(const Matrix<T>& a) {
    Matrix<T> out(a.rows(), a.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = -a.at(i, j);
    return out;
}

template <FieldScalar T>
Matrix<T> scale(const T& c, const Matrix<T>& a) {
    if (!(c.field() == a.field())) throw FieldMismatchError("scalar from wrong field");
    Matrix<T> out(a.rows(), a.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = c * a.at(i, j);
    return out;
}

template <FieldScalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw ShapeMismatchError("inner dimensions differ");
    if (!(a.field() == b.field())) throw FieldMismatchError("matrices over different fields");
    Matrix<T> out(a.rows(), b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const T& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

}  // namespace nss

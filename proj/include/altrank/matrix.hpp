#ifndef ALTRANK_MATRIX_HPP
#define ALTRANK_MATRIX_HPP

// Dense exact matrices over a Field: elimination, rank, kernels, solving,
// determinants, Pfaffians and eigenvalue scans.
//
// Pivoting is always "first nonzero entry in column order", so every echelon
// form, kernel basis and derived certificate is reproducible bit for bit.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "altrank/field.hpp"

namespace altrank {

template <Field F>
using Vector = std::vector<typename F::value_type>;

template <Field F>
class Matrix {
public:
    using field_type = F;
    using value_type = typename F::value_type;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero())
    {
    }

    static Matrix identity(const F& field, std::size_t n)
    {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        Matrix m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw precondition_error("from_ints: ragged rows");
            std::size_t j = 0;
            for (auto v : row) m(i, j++) = field.from_int(v);
            ++i;
        }
        return m;
    }

    /// Column vector (n x 1) from a coordinate vector.
    static Matrix column(const F& field, const Vector<F>& v)
    {
        Matrix m(field, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    /// Matrix whose columns are the given vectors (all of length n).
    static Matrix from_columns(const F& field, std::size_t n, const std::vector<Vector<F>>& cols)
    {
        Matrix m(field, n, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != n) throw precondition_error("from_columns: length mismatch");
            for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    static Matrix from_rows(const F& field, std::size_t n, const std::vector<Vector<F>>& rows)
    {
        Matrix m(field, rows.size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != n) throw precondition_error("from_rows: length mismatch");
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    const F& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<value_type>& entries() const noexcept { return data_; }
    std::vector<value_type>& entries() noexcept { return data_; }

    Vector<F> column_vector(std::size_t j) const
    {
        Vector<F> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Vector<F> row_vector(std::size_t i) const
    {
        return Vector<F>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [&](const value_type& x) { return field_.is_zero(x); });
    }

    Matrix transpose() const
    {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw precondition_error("block: out of range");
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b)
    {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw precondition_error("set_block: out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix scaled(const value_type& c) const
    {
        Matrix m(*this);
        for (auto& x : m.data_) x = field_.mul(c, x);
        return m;
    }

    Matrix& operator+=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.add(data_[k], o.data_[k]);
        return *this;
    }

    Matrix& operator-=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.sub(data_[k], o.data_[k]);
        return *this;
    }

    /// this += c * o
    void add_scaled(const value_type& c, const Matrix& o)
    {
        check_same_shape(o);
        if (field_.is_zero(c)) return;
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] = field_.add(data_[k], field_.mul(c, o.data_[k]));
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(const Matrix& a) { return a.scaled(a.field_.neg(a.field_.one())); }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw precondition_error("matrix product: shape mismatch");
        const F& f = a.field_;
        Matrix c(f, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& aik = a(i, k);
                if (f.is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
            }
        return c;
    }

    Vector<F> apply(const Vector<F>& x) const
    {
        if (x.size() != cols_) throw precondition_error("matrix-vector product: shape mismatch");
        Vector<F> y(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] = field_.add(y[i], field_.mul((*this)(i, j), x[j]));
        return y;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Row-major flattening, used to treat matrix spaces as vector spaces.
    const Vector<F>& vectorized() const noexcept { return data_; }

    static Matrix from_vectorized(const F& field, std::size_t rows, std::size_t cols, Vector<F> v)
    {
        if (v.size() != rows * cols) throw precondition_error("from_vectorized: length mismatch");
        Matrix m(field, rows, cols);
        m.data_ = std::move(v);
        return m;
    }

    // Row/column primitives used by elimination routines.
    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += c * row[src]
    void add_row(std::size_t dst, std::size_t src, const value_type& c)
    {
        if (field_.is_zero(c)) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) = field_.add((*this)(dst, j), field_.mul(c, (*this)(src, j)));
    }
    /// col[dst] += c * col[src]
    void add_col(std::size_t dst, std::size_t src, const value_type& c)
    {
        if (field_.is_zero(c)) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) = field_.add((*this)(i, dst), field_.mul(c, (*this)(i, src)));
    }

private:
    void check_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw precondition_error("matrix shapes differ");
    }

    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> data_;
};

template <Field F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b)
{
    Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

/// Elementary matrix E_ij of the given shape.
template <Field F>
Matrix<F> unit_matrix(const F& f, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j)
{
    Matrix<F> m(f, rows, cols);
    m(i, j) = f.one();
    return m;
}

/// E_ij - E_ji in A_n.
template <Field F>
Matrix<F> alternating_unit(const F& f, std::size_t n, std::size_t i, std::size_t j)
{
    Matrix<F> m(f, n, n);
    m(i, j) = f.one();
    m(j, i) = f.neg(f.one());
    return m;
}

template <Field F>
Vector<F> unit_vector(const F& f, std::size_t n, std::size_t i)
{
    Vector<F> v(n, f.zero());
    v[i] = f.one();
    return v;
}

template <Field F>
bool is_zero_vector(const F& f, const Vector<F>& v)
{
    return std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); });
}

/// Skew-symmetric with zero diagonal: the alternating condition in every characteristic.
template <Field F>
bool is_alternating(const Matrix<F>& m)
{
    if (!m.is_square()) return false;
    const F& f = m.field();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!f.is_zero(m(i, i))) return false;
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (!f.is_zero(f.add(m(i, j), m(j, i)))) return false;
    }
    return true;
}

/// A square matrix known to satisfy the alternating condition.
template <Field F>
class AlternatingMatrix {
public:
    explicit AlternatingMatrix(Matrix<F> m) : m_(std::move(m))
    {
        if (!is_alternating(m_)) throw precondition_error("matrix is not alternating");
    }

    const Matrix<F>& matrix() const noexcept { return m_; }
    std::size_t size() const noexcept { return m_.rows(); }
    const F& field() const noexcept { return m_.field(); }

    /// The standard symplectic matrix [0 I_s; -I_s 0].
    static AlternatingMatrix standard_symplectic(const F& f, std::size_t s)
    {
        Matrix<F> k(f, 2 * s, 2 * s);
        for (std::size_t i = 0; i < s; ++i) {
            k(i, s + i) = f.one();
            k(s + i, i) = f.neg(f.one());
        }
        return AlternatingMatrix(std::move(k));
    }

private:
    Matrix<F> m_;
};

/// Reduced row echelon form with its pivot columns.
template <Field F>
struct Echelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;
};

template <Field F>
Echelon<F> rref(Matrix<F> m)
{
    const F& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && f.is_zero(m(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(row, piv);
        const auto inv = f.inv(m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(inv, m(row, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || f.is_zero(m(i, col))) continue;
            m.add_row(i, row, f.neg(m(i, col)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

/// Row rank by forward elimination.
template <Field F>
std::size_t rank(Matrix<F> m)
{
    const F& f = m.field();
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && f.is_zero(m(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(row, piv);
        const auto inv = f.inv(m(row, col));
        for (std::size_t i = row + 1; i < m.rows(); ++i) {
            if (f.is_zero(m(i, col))) continue;
            const auto c = f.neg(f.mul(m(i, col), inv));
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = f.add(m(i, j), f.mul(c, m(row, j)));
        }
        ++row;
    }
    return row;
}

/// Rank of an alternating matrix; the result is always even.
template <Field F>
std::size_t rank(const AlternatingMatrix<F>& a)
{
    const auto r = rank(a.matrix());
    if (r % 2 != 0) throw std::logic_error("odd rank " + std::to_string(r) + " for an alternating matrix");
    return r;
}

/// Basis of {x : m x = 0}: one vector per free column, in increasing column order.
template <Field F>
std::vector<Vector<F>> kernel_basis(const Matrix<F>& m)
{
    const F& f = m.field();
    auto [red, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector<F>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector<F> x(m.cols(), f.zero());
        x[free] = f.one();
        for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = f.neg(red(k, free));
        basis.push_back(std::move(x));
    }
    return basis;
}

/// A solution of m x = b with every free variable set to zero, or nullopt.
template <Field F>
std::optional<Vector<F>> solve(const Matrix<F>& m, const Vector<F>& b)
{
    if (b.size() != m.rows()) throw precondition_error("solve: right-hand side length mismatch");
    const F& f = m.field();
    Matrix<F> aug(f, m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
    auto [red, pivots] = rref(std::move(aug));
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vector<F> x(m.cols(), f.zero());
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = red(k, m.cols());
    return x;
}

template <Field F>
typename F::value_type det(Matrix<F> m)
{
    if (!m.is_square()) throw precondition_error("det: matrix is not square");
    const F& f = m.field();
    auto d = f.one();
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && f.is_zero(m(piv, col))) ++piv;
        if (piv == n) return f.zero();
        if (piv != col) {
            m.swap_rows(piv, col);
            d = f.neg(d);
        }
        d = f.mul(d, m(col, col));
        const auto inv = f.inv(m(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (f.is_zero(m(i, col))) continue;
            const auto c = f.neg(f.mul(m(i, col), inv));
            for (std::size_t j = col; j < n; ++j) m(i, j) = f.add(m(i, j), f.mul(c, m(col, j)));
        }
    }
    return d;
}

template <Field F>
bool is_invertible(const Matrix<F>& m)
{
    return m.is_square() && rank(m) == m.rows();
}

template <Field F>
Matrix<F> inverse(const Matrix<F>& m)
{
    if (!m.is_square()) throw precondition_error("inverse: matrix is not square");
    const F& f = m.field();
    const std::size_t n = m.rows();
    Matrix<F> aug(f, n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix<F>::identity(f, n));
    auto [red, pivots] = rref(std::move(aug));
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw precondition_error("inverse: matrix is singular");
    return red.block(0, n, n, n);
}

/// Pfaffian by skew elimination, normalized so that Pf([0 1; -1 0]) = 1.
/// Odd sizes return zero.
template <Field F>
typename F::value_type pfaffian(const AlternatingMatrix<F>& a)
{
    const F& f = a.field();
    const std::size_t n = a.size();
    if (n % 2 != 0) return f.zero();
    Matrix<F> m = a.matrix();
    auto pf = f.one();
    for (std::size_t k = 0; k < n; k += 2) {
        std::size_t j = k + 1;
        while (j < n && f.is_zero(m(k, j))) ++j;
        if (j == n) return f.zero();
        if (j != k + 1) {
            // simultaneous row/column transposition has determinant -1
            m.swap_rows(k + 1, j);
            m.swap_cols(k + 1, j);
            pf = f.neg(pf);
        }
        const auto piv = m(k, k + 1);
        pf = f.mul(pf, piv);
        const auto inv = f.inv(piv);
        // Unimodular congruences clearing rows/columns k and k+1 beyond k+1.
        for (std::size_t i = k + 2; i < n; ++i) {
            const auto c1 = f.neg(f.mul(m(k, i), inv));
            m.add_col(i, k + 1, c1);
            m.add_row(i, k + 1, c1);
            const auto c2 = f.mul(m(k + 1, i), inv);
            m.add_col(i, k, c2);
            m.add_row(i, k, c2);
        }
    }
    return pf;
}

namespace detail {

template <Field F>
typename F::value_type pfaffian_expand(const Matrix<F>& m, std::vector<std::size_t>& idx)
{
    const F& f = m.field();
    if (idx.empty()) return f.one();
    const std::size_t last = idx.back();
    idx.pop_back();
    auto total = f.zero();
    // expansion along the last row: sign (-1)^(i + last - 1) in 1-based positions
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        const auto& entry = m(idx[pos], last);
        if (f.is_zero(entry)) continue;
        std::vector<std::size_t> rest;
        rest.reserve(idx.size() - 1);
        for (std::size_t q = 0; q < idx.size(); ++q)
            if (q != pos) rest.push_back(idx[q]);
        auto term = f.mul(entry, pfaffian_expand(m, rest));
        const bool negative = (idx.size() - 1 - pos) % 2 == 1;
        total = negative ? f.sub(total, term) : f.add(total, term);
    }
    idx.push_back(last);
    return total;
}

} // namespace detail

/// Pfaffian by recursive expansion along the last row. Exponential; meant
/// as an independent cross-check for small sizes.
template <Field F>
typename F::value_type pfaffian_by_expansion(const AlternatingMatrix<F>& a)
{
    const F& f = a.field();
    if (a.size() % 2 != 0) return f.zero();
    std::vector<std::size_t> idx(a.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return detail::pfaffian_expand(a.matrix(), idx);
}

template <Field F>
Matrix<F> principal_submatrix(const Matrix<F>& m, const std::vector<std::size_t>& idx)
{
    Matrix<F> s(m.field(), idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = m(idx[i], idx[j]);
    return s;
}

/// Lexicographically least index set I (0-based) with |I| = rank(a) and
/// a_{I,I} invertible.
template <Field F>
std::vector<std::size_t> invertible_principal_submatrix(const AlternatingMatrix<F>& a)
{
    const std::size_t n = a.size();
    const std::size_t r = rank(a);
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    if (r == 0) return idx;
    while (true) {
        if (is_invertible(principal_submatrix(a.matrix(), idx))) return idx;
        // next combination in lexicographic order
        std::size_t k = r;
        while (k > 0 && idx[k - 1] == n - r + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    throw std::logic_error("no invertible principal submatrix of full rank size");
}

/// Coefficients c_0..c_n of det(x I - m), lowest degree first. Reduces to
/// upper Hessenberg form by exact similarity, then expands the recurrence for
/// the leading principal minors; valid over every field.
template <Field F>
std::vector<typename F::value_type> characteristic_polynomial(Matrix<F> h)
{
    if (!h.is_square()) throw precondition_error("characteristic_polynomial: matrix is not square");
    const F& f = h.field();
    const std::size_t n = h.rows();
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t i = j + 1;
        while (i < n && f.is_zero(h(i, j))) ++i;
        if (i == n) continue;
        if (i != j + 1) {
            h.swap_rows(i, j + 1);
            h.swap_cols(i, j + 1);
        }
        const auto inv = f.inv(h(j + 1, j));
        for (std::size_t k = j + 2; k < n; ++k) {
            const auto u = f.mul(h(k, j), inv);
            if (f.is_zero(u)) continue;
            h.add_row(k, j + 1, f.neg(u));
            h.add_col(j + 1, k, u);
        }
    }
    using Poly = std::vector<typename F::value_type>;
    std::vector<Poly> p(n + 1);
    p[0] = Poly{f.one()};
    for (std::size_t m = 1; m <= n; ++m) {
        // (x - h_mm) p_{m-1}
        Poly cur(m + 1, f.zero());
        for (std::size_t d = 0; d < m; ++d) {
            cur[d + 1] = f.add(cur[d + 1], p[m - 1][d]);
            cur[d] = f.sub(cur[d], f.mul(h(m - 1, m - 1), p[m - 1][d]));
        }
        // - sum_{i=1}^{m-1} h_{i,m} (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
        auto prod = f.one();
        for (std::size_t i = m - 1; i >= 1; --i) {
            prod = f.mul(prod, h(i, i - 1));
            if (f.is_zero(prod)) break;
            const auto c = f.mul(h(i - 1, m - 1), prod);
            if (f.is_zero(c)) continue;
            for (std::size_t d = 0; d < p[i - 1].size(); ++d) cur[d] = f.sub(cur[d], f.mul(c, p[i - 1][d]));
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

template <Field F>
typename F::value_type evaluate_polynomial(const F& f, const std::vector<typename F::value_type>& c,
                                           const typename F::value_type& x)
{
    auto acc = f.zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c[i]);
    return acc;
}

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class v)
{
    v = abs(v);
    if (v > mpz_class("1000000000000"))
        throw budget_exceeded("rational root scan: coefficient too large to factor by trial division");
    const unsigned long long x = v.get_ui();
    std::vector<mpz_class> out;
    for (unsigned long long d = 1; d * d <= x; ++d) {
        if (x % d != 0) continue;
        out.emplace_back(static_cast<unsigned long>(d));
        if (d * d != x) out.emplace_back(static_cast<unsigned long>(x / d));
    }
    return out;
}

} // namespace detail

/// { lambda in F : det(m - lambda I) = 0 }, ascending.
///
/// Over F_p every element is scanned. Over Q only the candidates of the
/// rational root theorem are tested, which finds exactly the rational
/// eigenvalues.
inline std::vector<PrimeField::value_type> eigenvalues_in_field(const Matrix<PrimeField>& m)
{
    if (!m.is_square()) throw precondition_error("eigenvalues_in_field: matrix is not square");
    const PrimeField& f = m.field();
    const auto chi = characteristic_polynomial(m);
    std::vector<PrimeField::value_type> out;
    for (std::uint64_t l = 0; l < f.characteristic(); ++l)
        if (f.is_zero(evaluate_polynomial(f, chi, f.element(l)))) out.push_back(f.element(l));
    return out;
}

inline std::vector<mpq_class> eigenvalues_in_field(const Matrix<RationalField>& m)
{
    auto c = characteristic_polynomial(m);
    // clear denominators
    mpz_class l = 1;
    for (const auto& x : c) l = lcm(l, x.get_den());
    std::vector<mpz_class> a(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) a[i] = c[i].get_num() * (l / c[i].get_den());

    std::vector<mpq_class> out;
    std::size_t low = 0;
    while (low < a.size() && a[low] == 0) ++low;
    if (low > 0) out.emplace_back(0);
    if (low + 1 >= a.size()) return out;

    auto eval = [&](const mpq_class& x) {
        mpq_class acc = 0;
        for (std::size_t i = a.size(); i-- > low;) acc = acc * x + mpq_class(a[i]);
        return acc;
    };
    for (const auto& p : detail::positive_divisors(a[low]))
        for (const auto& q : detail::positive_divisors(a.back()))
            for (int sign : {1, -1}) {
                mpq_class cand(p * sign, q);
                cand.canonicalize();
                if (eval(cand) == 0 && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
            }
    std::sort(out.begin(), out.end());
    return out;
}

/// Rank of a family of vectors (as rows).
template <Field F>
std::size_t vectors_rank(const F& f, std::size_t n, const std::vector<Vector<F>>& vs)
{
    if (vs.empty()) return 0;
    return rank(Matrix<F>::from_rows(f, n, vs));
}

/// Canonical basis (rows of the reduced echelon form) of span(vs).
template <Field F>
std::vector<Vector<F>> span_basis(const F& f, std::size_t n, const std::vector<Vector<F>>& vs)
{
    if (vs.empty()) return {};
    auto [red, pivots] = rref(Matrix<F>::from_rows(f, n, vs));
    std::vector<Vector<F>> out;
    for (std::size_t k = 0; k < pivots.size(); ++k) out.push_back(red.row_vector(k));
    return out;
}

/// Coordinates of v in the given (independent) family, or nullopt if v is
/// outside their span.
template <Field F>
std::optional<Vector<F>> coordinates_in(const F& f, std::size_t n, const std::vector<Vector<F>>& family,
                                        const Vector<F>& v)
{
    if (family.empty()) {
        if (is_zero_vector(f, v)) return Vector<F>{};
        return std::nullopt;
    }
    return solve(Matrix<F>::from_columns(f, n, family), v);
}

template <Field F>
bool in_span(const F& f, std::size_t n, const std::vector<Vector<F>>& family, const Vector<F>& v)
{
    return coordinates_in(f, n, family, v).has_value();
}

/// Extends an independent family with standard basis vectors, in index order,
/// until it spans F^n. Returns only the added vectors.
template <Field F>
std::vector<Vector<F>> complete_with_standard_basis(const F& f, std::size_t n, const std::vector<Vector<F>>& family)
{
    std::vector<Vector<F>> all = family;
    std::vector<Vector<F>> added;
    std::size_t r = vectors_rank(f, n, all);
    for (std::size_t i = 0; i < n && r < n; ++i) {
        all.push_back(unit_vector(f, n, i));
        const auto r2 = vectors_rank(f, n, all);
        if (r2 > r) {
            added.push_back(all.back());
            r = r2;
        } else {
            all.pop_back();
        }
    }
    return added;
}

template <Field F>
typename F::value_type bilinear(const Matrix<F>& g, const Vector<F>& x, const Vector<F>& y)
{
    const F& f = g.field();
    auto gy = g.apply(y);
    auto acc = f.zero();
    for (std::size_t i = 0; i < x.size(); ++i) acc = f.add(acc, f.mul(x[i], gy[i]));
    return acc;
}

} // namespace altrank

#endif // ALTRANK_MATRIX_HPP

#pragma once

#include "graded/errors.hpp"
#include "graded/scalar.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graded {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(std::size_t n) { return Vector(n); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

inline bool is_zero(std::span<const Scalar> v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

/// Dense row-major matrix of exact scalars.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n, const Scalar& diag = 1) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = diag;
        return m;
    }

    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw MalformedInput("row " + std::to_string(i) + " has length " +
                                     std::to_string(rows[i].size()) + ", expected " + std::to_string(cols));
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }

    bool is_hermitian() const {
        if (rows_ != cols_)
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i).conj()))
                    return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Sesquilinear pairing <x, y> = x^T G conj(y).
inline Scalar pairing(std::span<const Scalar> x, std::span<const Scalar> y, const Matrix& gram) {
    Scalar total;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero())
            continue;
        Scalar acc;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero() && !gram(i, j).is_zero())
                acc += gram(i, j) * y[j].conj();
        if (!acc.is_zero())
            total += x[i] * acc;
    }
    return total;
}

/// Incremental row-echelon accumulator. Rows are kept in echelon form with
/// unit pivots; insert() reports whether the candidate enlarged the span.
class SubspaceBuilder {
public:
    explicit SubspaceBuilder(std::size_t ambient_dim) : n_(ambient_dim) {}

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return rows_.size(); }

    /// Reduces v against the current rows; empty when v is already in the span.
    std::optional<Vector> reduce(Vector v) const {
        if (v.size() != n_)
            throw MalformedInput("vector of length " + std::to_string(v.size()) +
                                 " in ambient dimension " + std::to_string(n_));
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const auto p = pivots_[r];
            if (v[p].is_zero())
                continue;
            const Scalar f = v[p];
            const auto& row = rows_[r];
            for (std::size_t j = p; j < n_; ++j)
                if (!row[j].is_zero())
                    v[j] -= f * row[j];
        }
        if (is_zero(v))
            return std::nullopt;
        return v;
    }

    bool contains(const Vector& v) const { return !reduce(v).has_value(); }

    bool insert(Vector v) {
        auto reduced = reduce(std::move(v));
        if (!reduced)
            return false;
        auto& w = *reduced;
        std::size_t p = 0;
        while (w[p].is_zero())
            ++p;
        const Scalar inv = Scalar(1) / w[p];
        for (std::size_t j = p; j < n_; ++j)
            if (!w[j].is_zero())
                w[j] *= inv;
        // rows stay sorted by pivot so reduce() sweeps left to right
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(w));
        return true;
    }

    /// Rows in reduced row-echelon form: the canonical basis.
    std::vector<Vector> reduced_rows() const {
        auto rows = rows_;
        for (std::size_t r = rows.size(); r-- > 0;) {
            const auto p = pivots_[r];
            for (std::size_t above = 0; above < r; ++above) {
                if (rows[above][p].is_zero())
                    continue;
                const Scalar f = rows[above][p];
                for (std::size_t j = p; j < n_; ++j)
                    if (!rows[r][j].is_zero())
                        rows[above][j] -= f * rows[r][j];
            }
        }
        return rows;
    }

private:
    std::size_t n_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Linear subspace of K^n stored by its reduced row-echelon basis. Equal
/// subspaces have identical representations.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : n_(ambient_dim) {}

    static Subspace full(std::size_t n) {
        Subspace s(n);
        for (std::size_t i = 0; i < n; ++i)
            s.basis_.push_back(unit_vector(n, i));
        return s;
    }

    static Subspace from_builder(const SubspaceBuilder& b) {
        Subspace s(b.ambient_dim());
        s.basis_ = b.reduced_rows();
        return s;
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    bool is_full() const { return basis_.size() == n_; }
    const std::vector<Vector>& basis() const { return basis_; }

    SubspaceBuilder builder() const {
        SubspaceBuilder b(n_);
        for (const auto& v : basis_)
            b.insert(v);
        return b;
    }

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Vector> basis_;
};

inline Subspace span(const std::vector<Vector>& vectors, std::size_t ambient_dim) {
    SubspaceBuilder b(ambient_dim);
    for (const auto& v : vectors)
        b.insert(v);
    return Subspace::from_builder(b);
}

inline bool contains(const Subspace& s, const Vector& v) {
    if (v.size() != s.ambient_dim())
        throw MalformedInput("vector length does not match subspace ambient dimension");
    return s.builder().contains(v);
}

inline bool is_subspace_of(const Subspace& inner, const Subspace& outer) {
    if (inner.ambient_dim() != outer.ambient_dim())
        throw MalformedInput("subspaces live in different ambient dimensions");
    auto b = outer.builder();
    return std::all_of(inner.basis().begin(), inner.basis().end(),
                       [&](const Vector& v) { return b.contains(v); });
}

inline Subspace sum(const Subspace& s, const Subspace& t) {
    if (s.ambient_dim() != t.ambient_dim())
        throw MalformedInput("sum of subspaces in different ambient dimensions");
    auto b = s.builder();
    for (const auto& v : t.basis())
        b.insert(v);
    return Subspace::from_builder(b);
}

/// Reduced row-echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        const Scalar inv = Scalar(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            const Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero())
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Right kernel {x : M x = 0}.
inline Subspace nullspace(Matrix m) {
    const auto pivots = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Vector> kernel;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        Vector v(n);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m(r, free);
        kernel.push_back(std::move(v));
    }
    return span(kernel, n);
}

inline Subspace intersect(const Subspace& s, const Subspace& t) {
    if (s.ambient_dim() != t.ambient_dim())
        throw MalformedInput("intersection of subspaces in different ambient dimensions");
    const std::size_t n = s.ambient_dim();
    if (s.is_zero() || t.is_zero())
        return Subspace(n);
    // a*S = b*T  <=>  [S^T | -T^T] (a, b) = 0
    Matrix m(n, s.dim() + t.dim());
    for (std::size_t k = 0; k < s.dim(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            m(i, k) = s.basis()[k][i];
    for (std::size_t k = 0; k < t.dim(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            m(i, s.dim() + k) = -t.basis()[k][i];
    const auto kernel = nullspace(std::move(m));
    std::vector<Vector> out;
    for (const auto& coeffs : kernel.basis()) {
        Vector v(n);
        for (std::size_t k = 0; k < s.dim(); ++k)
            if (!coeffs[k].is_zero())
                for (std::size_t i = 0; i < n; ++i)
                    v[i] += coeffs[k] * s.basis()[k][i];
        out.push_back(std::move(v));
    }
    return span(out, n);
}

/// Coordinates of v in the given linearly independent rows; empty when v is
/// outside their span.
inline std::optional<Vector> coordinates(const std::vector<Vector>& rows, const Vector& v) {
    const std::size_t n = v.size();
    const std::size_t k = rows.size();
    // solve c^T R = v^T  <=>  R^T c = v
    Matrix m(n, k + 1);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = rows[j][i];
    for (std::size_t i = 0; i < n; ++i)
        m(i, k) = v[i];
    const auto pivots = rref(m);
    if (!pivots.empty() && pivots.back() == k)
        return std::nullopt;
    if (pivots.size() != k)
        throw PreconditionError("coordinate rows are linearly dependent");
    Vector c(k);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        c[pivots[r]] = m(r, k);
    return c;
}

/// {x in W : <x, s>_a = 0 for every s in S and every Gram a}.
inline Subspace joint_orthogonal_complement(const Subspace& s, const Subspace& w,
                                            std::span<const Matrix> grams) {
    const std::size_t n = w.ambient_dim();
    if (s.ambient_dim() != n)
        throw MalformedInput("subspaces live in different ambient dimensions");
    for (const auto& g : grams)
        if (g.rows() != n || g.cols() != n)
            throw MalformedInput("Gram matrix size does not match ambient dimension");
    if (!is_subspace_of(s, w))
        throw PreconditionError("joint_orthogonal_complement: S is not contained in W");
    if (s.is_zero() || w.is_zero())
        return w;
    // x = c W; condition per (gram, s): sum_k c_k <w_k, s> = 0
    std::vector<Vector> conditions;
    for (const auto& g : grams)
        for (const auto& sv : s.basis()) {
            Vector row(w.dim());
            for (std::size_t k = 0; k < w.dim(); ++k)
                row[k] = pairing(w.basis()[k], sv, g);
            if (!is_zero(row))
                conditions.push_back(std::move(row));
        }
    if (conditions.empty())
        return w;
    const auto coeffs = nullspace(Matrix::from_rows(conditions, w.dim()));
    std::vector<Vector> out;
    for (const auto& c : coeffs.basis()) {
        Vector x(n);
        for (std::size_t k = 0; k < w.dim(); ++k)
            if (!c[k].is_zero())
                for (std::size_t i = 0; i < n; ++i)
                    x[i] += c[k] * w.basis()[k][i];
        out.push_back(std::move(x));
    }
    return span(out, n);
}

/// Outcome of the positive-semidefiniteness test. When the form is
/// indefinite, `witness` holds x with <x, x> < 0 and `witness_value` = <x, x>.
struct PsdResult {
    bool psd = true;
    std::optional<Vector> witness;
    Scalar witness_value;
    explicit operator bool() const { return psd; }
};

/// Decides positive semidefiniteness exactly by symmetric elimination with
/// diagonal pivoting. A zero pivot must come with a zero row, otherwise the
/// form takes negative values.
inline PsdResult psd_check(const Matrix& gram) {
    if (!gram.is_hermitian())
        throw MalformedInput("Gram matrix is not Hermitian");
    const std::size_t n = gram.rows();
    // Work on A = conj(G), so that <x,x> = x^H A x.
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = gram(i, j).conj();

    struct Step {
        std::size_t pivot;
        Vector multipliers; // A_pj / A_pp for j in remaining, indexed by column
    };
    std::vector<Step> steps;
    std::vector<bool> done(n, false);

    auto back_substitute = [&](Vector y) {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            Scalar c;
            for (std::size_t j = 0; j < n; ++j)
                if (!it->multipliers[j].is_zero() && !y[j].is_zero())
                    c += it->multipliers[j] * y[j];
            y[it->pivot] = -c;
        }
        return y;
    };

    for (std::size_t k = 0; k < n; ++k) {
        // pick the first remaining index with a nonzero diagonal
        std::optional<std::size_t> pivot;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && !a(i, i).is_zero()) {
                pivot = i;
                break;
            }
        if (!pivot) {
            // all remaining diagonals zero: PSD iff the remaining block vanishes
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i])
                    continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (done[j] || a(i, j).is_zero())
                        continue;
                    // y_i = s, y_j = 1 with s = -a_ij (|a_jj|+1) / (2|a_ij|^2); a_jj is 0 here
                    const Scalar aij = a(i, j);
                    Vector y(n);
                    y[j] = 1;
                    y[i] = -aij * Scalar(mpq_class(1, 2)) / Scalar(aij.norm());
                    PsdResult out;
                    out.psd = false;
                    out.witness = back_substitute(std::move(y));
                    out.witness_value = pairing(*out.witness, *out.witness, gram);
                    return out;
                }
            }
            return {};
        }
        const std::size_t p = *pivot;
        const Scalar d = a(p, p);
        if (!d.is_real())
            throw MalformedInput("Gram matrix is not Hermitian");
        if (sgn(d.re()) < 0) {
            Vector y(n);
            y[p] = 1;
            PsdResult out;
            out.psd = false;
            out.witness = back_substitute(std::move(y));
            out.witness_value = pairing(*out.witness, *out.witness, gram);
            return out;
        }
        Step step{p, Vector(n)};
        for (std::size_t j = 0; j < n; ++j)
            if (!done[j] && j != p && !a(p, j).is_zero())
                step.multipliers[j] = a(p, j) / d;
        // Schur complement: A_ij -= A_ip A_pj / A_pp
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || i == p || a(i, p).is_zero())
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j] && j != p && !step.multipliers[j].is_zero())
                    a(i, j) -= a(i, p) * step.multipliers[j];
        }
        done[p] = true;
        steps.push_back(std::move(step));
    }
    return {};
}

} // namespace graded

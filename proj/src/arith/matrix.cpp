#include "klab/matrix.hpp"

#include <algorithm>

#include "klab/error.hpp"

namespace klab {

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring_)) {}

Matrix Matrix::identity(RingPtr ring, std::size_t n) { return scalar(ring, n, Poly::constant(ring, 1)); }

Matrix Matrix::scalar(RingPtr ring, std::size_t n, const Poly& s) {
    Matrix m(std::move(ring), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

Matrix Matrix::from_columns(RingPtr ring, std::size_t rows, const std::vector<PolyVector>& cols) {
    Matrix m(std::move(ring), rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw InputError("column length does not match row count");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Matrix Matrix::diagonal(RingPtr ring, const std::vector<Poly>& diag) {
    Matrix m(std::move(ring), diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

PolyVector Matrix::column(std::size_t c) const {
    PolyVector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
}

std::vector<PolyVector> Matrix::columns() const {
    std::vector<PolyVector> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

Matrix Matrix::transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix s(ring_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

Matrix Matrix::hconcat(const Matrix& other) const {
    if (rows_ != other.rows_) throw InputError("hconcat: row counts differ");
    Matrix m(ring_, rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c) m(r, cols_ + c) = other(r, c);
    }
    return m;
}

Matrix Matrix::block_diagonal(const Matrix& other) const {
    Matrix m(ring_, rows_ + other.rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < other.rows_; ++r)
        for (std::size_t c = 0; c < other.cols_; ++c) m(rows_ + r, cols_ + c) = other(r, c);
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product: dimension mismatch");
    Matrix m(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Poly& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum: dimension mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference: dimension mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
    return m;
}

Matrix Matrix::scaled(const Poly& s) const {
    Matrix m = *this;
    for (auto& p : m.data_) p = p * s;
    return m;
}

PolyVector Matrix::apply(const PolyVector& v) const {
    if (v.size() != cols_) throw InputError("matrix-vector product: dimension mismatch");
    PolyVector out = zero_vector(ring_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) s += "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) s += ", ";
            s += (*this)(r, c).to_string();
        }
    }
    return s + "]";
}

Poly determinant(const Matrix& m) {
    if (!m.is_square()) throw InputError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    const RingPtr& ring = m.ring();
    if (n == 0) return Poly::constant(ring, 1);
    Matrix a = m;
    bool negate = false;
    Poly prev = Poly::constant(ring, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && a(piv, k).is_zero()) ++piv;
            if (piv == n) return Poly(ring);
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                Poly q(ring);
                if (!divide_exact(num, prev, q)) throw Error("Bareiss step: inexact division");
                a(i, j) = std::move(q);
            }
            a(i, k) = Poly(ring);
        }
        prev = a(k, k);
    }
    Poly d = a(n - 1, n - 1);
    return negate ? -d : d;
}

PolyVector zero_vector(const RingPtr& ring, std::size_t n) { return PolyVector(n, Poly(ring)); }

PolyVector unit_vector(const RingPtr& ring, std::size_t n, std::size_t i) {
    PolyVector v = zero_vector(ring, n);
    v[i] = Poly::constant(ring, 1);
    return v;
}

bool is_zero_vector(const PolyVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

}  // namespace klab

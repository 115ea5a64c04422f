#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "klab/poly.hpp"

namespace klab {

/// Column vector of a free module A^n.
using PolyVector = std::vector<Poly>;

/// Dense matrix of polynomials, rows x cols. As a map of free modules it
/// sends A^cols to A^rows (columns are images of basis vectors).
class Matrix {
public:
    Matrix(RingPtr ring, std::size_t rows, std::size_t cols);

    static Matrix identity(RingPtr ring, std::size_t n);
    static Matrix scalar(RingPtr ring, std::size_t n, const Poly& s);
    static Matrix from_columns(RingPtr ring, std::size_t rows, const std::vector<PolyVector>& cols);
    static Matrix diagonal(RingPtr ring, const std::vector<Poly>& diag);

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    PolyVector column(std::size_t c) const;
    std::vector<PolyVector> columns() const;
    bool is_zero() const;
    bool is_square() const noexcept { return rows_ == cols_; }

    Matrix transpose() const;
    Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    /// [*this | other]
    Matrix hconcat(const Matrix& other) const;
    Matrix block_diagonal(const Matrix& other) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix scaled(const Poly& s) const;
    PolyVector apply(const PolyVector& v) const;

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string to_string() const;

private:
    RingPtr ring_;
    std::size_t rows_, cols_;
    std::vector<Poly> data_;
};

/// Fraction-free (Bareiss) determinant with exact polynomial division.
Poly determinant(const Matrix& m);

PolyVector zero_vector(const RingPtr& ring, std::size_t n);
PolyVector unit_vector(const RingPtr& ring, std::size_t n, std::size_t i);
bool is_zero_vector(const PolyVector& v);

}  // namespace klab

#pragma once

#include "compvar/field.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

namespace compvar {

/// Dense row-major matrix over an exact field. Entries are kept in the
/// field's canonical form; `set` reduces, the mutable accessor does not.
class Matrix {
public:
    Matrix() : field_(Field::rationals()) {}
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    static Matrix identity(const Field& field, std::size_t n);
    /// Integer literal rows, reduced into the field.
    static Matrix from_ints(const Field& field, std::initializer_list<std::initializer_list<long>> rows);
    static Matrix from_rows(const Field& field, std::size_t cols, const std::vector<Vector>& rows);
    static Matrix from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& cols);
    /// Inverse of `flatten`.
    static Matrix from_flat(const Field& field, std::size_t rows, std::size_t cols, const Vector& entries);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Scalar& v) { data_[i * cols_ + j] = field_.reduce(v); }

    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    const Vector& flatten() const noexcept { return data_; }

    bool is_zero() const;
    bool is_square() const noexcept { return rows_ == cols_; }

    Matrix transpose() const;
    Matrix scaled(const Scalar& c) const;
    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& block);

    Vector apply(const Vector& v) const;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// [[a, 0], [0, b]]
Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// [[a, b], [c, d]]; blocks must have compatible shapes.
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/// Reduced row echelon form. Pivots are chosen leftmost-first, topmost row
/// first, so the output is deterministic.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
bool is_invertible(const Matrix& m);
/// Throws std::domain_error when singular.
Matrix inverse(const Matrix& m);
/// Some x with m x = b, or nullopt if b is outside the column space. Free
/// variables are set to zero, so the returned solution is linear in b.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
Scalar trace(const Matrix& m);

}  // namespace compvar

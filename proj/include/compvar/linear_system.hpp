#pragma once

#include "compvar/subspace.hpp"

#include <map>
#include <optional>
#include <vector>

namespace compvar {

/// Packs a list of matrix-shaped unknowns into one coordinate vector. Each
/// block is flattened row-major and blocks are laid out in insertion order.
class BlockLayout {
public:
    std::size_t add(std::size_t rows, std::size_t cols);

    std::size_t size() const noexcept { return total_; }
    std::size_t block_count() const noexcept { return rows_.size(); }
    std::size_t offset(std::size_t b) const { return offsets_.at(b); }
    std::size_t rows(std::size_t b) const { return rows_.at(b); }
    std::size_t cols(std::size_t b) const { return cols_.at(b); }

    Matrix extract(const Field& field, const Vector& v, std::size_t b) const;
    void insert(Vector& v, std::size_t b, const Matrix& m) const;
    Vector pack(const Field& field, const std::vector<Matrix>& blocks) const;
    std::vector<Matrix> unpack(const Field& field, const Vector& v) const;

private:
    std::vector<std::size_t> offsets_, rows_, cols_;
    std::size_t total_ = 0;
};

/// A linear system whose equations are matrix identities of the form
///     Σ coeff · L · X_b · R = C
/// in matrix-valued unknowns X_b. Equations are added one matrix at a time.
class LinearSystem {
public:
    LinearSystem(Field field, BlockLayout unknowns);

    const Field& field() const noexcept { return field_; }
    const BlockLayout& unknowns() const noexcept { return layout_; }
    std::size_t equation_count() const noexcept { return rows_.size(); }

    /// Opens a matrix equation of the given shape and returns its handle.
    std::size_t equation(std::size_t rows, std::size_t cols);
    /// Adds coeff · left · X_block · right to the equation. A null pointer
    /// stands for the identity of the fitting size.
    void add_term(std::size_t eq, std::size_t block, const Matrix* left, const Matrix* right,
                  const Scalar& coeff = Scalar(1));
    /// Adds a constant to the right-hand side of the equation.
    void add_rhs(std::size_t eq, const Matrix& c, const Scalar& coeff = Scalar(1));

    Matrix coefficients() const;
    Vector rhs() const;
    /// Solutions of the homogeneous system.
    Subspace solutions() const;
    std::optional<Vector> particular_solution() const;

private:
    struct Eq {
        std::size_t offset, rows, cols;
    };
    void check_eq(std::size_t eq) const;

    Field field_;
    BlockLayout layout_;
    std::vector<Eq> eqs_;
    std::vector<std::map<std::size_t, Scalar>> rows_;
    std::vector<Scalar> rhs_;
};

}  // namespace compvar

#pragma once

#include "compvar/matrix.hpp"

#include <optional>
#include <vector>

namespace compvar {

/// A subspace of F^n stored by its reduced row echelon basis. Two subspaces
/// are equal iff their stored bases are identical.
class Subspace {
public:
    /// The zero subspace of F^n.
    Subspace(Field field, std::size_t ambient_dim);

    static Subspace full(const Field& field, std::size_t n);
    static Subspace span(const Field& field, std::size_t n, const std::vector<Vector>& vectors);
    static Subspace row_space(const Matrix& m);

    const Field& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }

    /// Rows form the echelon basis.
    const Matrix& basis_matrix() const noexcept { return basis_; }
    Vector basis_vector(std::size_t k) const { return basis_.row(k); }
    std::vector<Vector> basis() const;
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    /// Coordinates not occupied by a pivot; the matching unit vectors span a
    /// complement.
    std::vector<std::size_t> non_pivots() const;

    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of v with respect to the echelon basis.
    std::optional<Vector> coordinates(const Vector& v) const;
    /// Normal form of v modulo this subspace (zero at every pivot).
    Vector reduce(const Vector& v) const;
    Vector combination(const Vector& coeffs) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    Subspace(Matrix basis, std::vector<std::size_t> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersection(const Subspace& u, const Subspace& v);

struct SubspaceOps {
    Subspace sum;
    Subspace intersection;
    bool contains;  // v ⊆ u
};
SubspaceOps subspace_ops(const Subspace& u, const Subspace& v);

/// Null space {x : m x = 0}; dim = cols - rank.
Subspace kernel_basis(const Matrix& m);
Subspace column_space(const Matrix& m);
/// Image of a subspace under a linear map.
Subspace image(const Matrix& map, const Subspace& domain);

/// Coordinates of vectors with respect to an arbitrary (not echelonized)
/// linearly independent list.
class BasisCoordinates {
public:
    BasisCoordinates(const Field& field, std::size_t ambient, std::vector<Vector> basis);
    std::size_t size() const noexcept { return basis_.size(); }
    const std::vector<Vector>& vectors() const noexcept { return basis_; }
    /// Throws ValidationError if v is outside the span.
    Vector coordinates(const Vector& v) const;
    std::optional<Vector> try_coordinates(const Vector& v) const;

private:
    Field field_;
    std::vector<Vector> basis_;
    Matrix reduced_;                   // rref of [B^T | I]
    std::size_t rank_ = 0;
};

}  // namespace compvar

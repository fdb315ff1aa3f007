#include "compvar/subspace.hpp"

#include "compvar/errors.hpp"

namespace compvar {

Subspace::Subspace(Field field, std::size_t ambient_dim) : basis_(field, 0, ambient_dim) {}

Subspace Subspace::full(const Field& field, std::size_t n) {
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    return Subspace(Matrix::identity(field, n), std::move(piv));
}

Subspace Subspace::span(const Field& field, std::size_t n, const std::vector<Vector>& vectors) {
    if (vectors.empty()) return Subspace(field, n);
    return row_space(Matrix::from_rows(field, n, vectors));
}

Subspace Subspace::row_space(const Matrix& m) {
    RrefResult r = rref(m);
    return Subspace(r.reduced.submatrix(0, 0, r.rank, m.cols()), std::move(r.pivots));
}

std::vector<Vector> Subspace::basis() const {
    std::vector<Vector> out;
    out.reserve(dim());
    for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis_.row(k));
    return out;
}

std::vector<std::size_t> Subspace::non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient_dim(); ++c) {
        if (k < pivots_.size() && pivots_[k] == c) {
            ++k;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

Vector Subspace::reduce(const Vector& v) const {
    if (v.size() != ambient_dim()) throw DimensionMismatch("subspace: vector length mismatch");
    const Field& f = field();
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.reduce(v[i]);
    for (std::size_t k = 0; k < dim(); ++k) {
        Scalar c = out[pivots_[k]];
        if (f.is_zero(c)) continue;
        for (std::size_t j = pivots_[k]; j < ambient_dim(); ++j)
            if (!f.is_zero(basis_(k, j))) out[j] = f.sub(out[j], f.mul(c, basis_(k, j)));
    }
    return out;
}

bool Subspace::contains(const Vector& v) const { return is_zero_vector(field(), reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim()) throw DimensionMismatch("subspace ambient mismatch");
    for (std::size_t k = 0; k < other.dim(); ++k)
        if (!contains(other.basis_vector(k))) return false;
    return true;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
    if (!contains(v)) return std::nullopt;
    Vector c(dim());
    for (std::size_t k = 0; k < dim(); ++k) c[k] = field().reduce(v[pivots_[k]]);
    return c;
}

Vector Subspace::combination(const Vector& coeffs) const {
    if (coeffs.size() != dim()) throw DimensionMismatch("subspace: coefficient count mismatch");
    const Field& f = field();
    Vector out(ambient_dim(), Scalar(0));
    for (std::size_t k = 0; k < dim(); ++k) {
        if (f.is_zero(coeffs[k])) continue;
        for (std::size_t j = 0; j < ambient_dim(); ++j)
            if (!f.is_zero(basis_(k, j))) out[j] = f.add(out[j], f.mul(coeffs[k], basis_(k, j)));
    }
    return out;
}

Subspace sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionMismatch("subspace ambient mismatch");
    return Subspace::row_space(vstack(u.basis_matrix(), v.basis_matrix()));
}

Subspace intersection(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionMismatch("subspace ambient mismatch");
    const Field& f = u.field();
    if (u.dim() == 0 || v.dim() == 0) return Subspace(f, u.ambient_dim());
    // u^T a = v^T b  <=>  [u^T | -v^T] (a; b) = 0
    Matrix system = hstack(u.basis_matrix().transpose(), (-v.basis_matrix()).transpose());
    Subspace k = kernel_basis(system);
    std::vector<Vector> vecs;
    for (std::size_t i = 0; i < k.dim(); ++i) {
        Vector ab = k.basis_vector(i);
        Vector a(ab.begin(), ab.begin() + static_cast<std::ptrdiff_t>(u.dim()));
        vecs.push_back(u.combination(a));
    }
    return Subspace::span(f, u.ambient_dim(), vecs);
}

SubspaceOps subspace_ops(const Subspace& u, const Subspace& v) {
    return SubspaceOps{sum(u, v), intersection(u, v), u.contains(v)};
}

Subspace kernel_basis(const Matrix& m) {
    const Field& f = m.field();
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vector> vecs;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols(), Scalar(0));
        v[free] = 1;
        for (std::size_t k = 0; k < r.rank; ++k) v[r.pivots[k]] = f.neg(r.reduced(k, free));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(f, m.cols(), vecs);
}

Subspace column_space(const Matrix& m) { return Subspace::row_space(m.transpose()); }

Subspace image(const Matrix& map, const Subspace& domain) {
    if (map.cols() != domain.ambient_dim()) throw DimensionMismatch("image: domain dimension mismatch");
    std::vector<Vector> imgs;
    for (std::size_t k = 0; k < domain.dim(); ++k) imgs.push_back(map.apply(domain.basis_vector(k)));
    return Subspace::span(map.field(), map.rows(), imgs);
}

BasisCoordinates::BasisCoordinates(const Field& field, std::size_t ambient, std::vector<Vector> basis)
    : field_(field), basis_(std::move(basis)) {
    Matrix bt = basis_.empty() ? Matrix(field, ambient, 0) : Matrix::from_columns(field, ambient, basis_);
    RrefResult r = rref(hstack(bt, Matrix::identity(field, ambient)));
    // independence: the first |basis| pivots must be the basis columns
    std::size_t n = basis_.size();
    std::size_t k = 0;
    while (k < r.pivots.size() && r.pivots[k] < n) ++k;
    if (k != n) throw ValidationError("BasisCoordinates: vectors are linearly dependent");
    rank_ = n;
    reduced_ = r.reduced.submatrix(0, n, ambient, ambient);
}

std::optional<Vector> BasisCoordinates::try_coordinates(const Vector& v) const {
    Vector w = reduced_.apply(v);
    for (std::size_t i = rank_; i < w.size(); ++i)
        if (!field_.is_zero(w[i])) return std::nullopt;
    return Vector(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(rank_));
}

Vector BasisCoordinates::coordinates(const Vector& v) const {
    auto c = try_coordinates(v);
    if (!c) throw ValidationError("vector is outside the span of the basis");
    return *c;
}

}  // namespace compvar

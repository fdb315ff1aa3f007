#pragma once

#include "compvar/subspace.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace compvar {

/// Finite-dimensional associative algebra with basis a_0 = 1, a_1, ..., a_{s-1}
/// and structure constants a_j a_k = Σ_l c(j,k,l) a_l. Indices are 0-based in
/// code; files use 1-based indices.
class FDAlgebra {
public:
    FDAlgebra(Field field, std::size_t dim, std::vector<std::string> labels);

    const Field& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    const Scalar& constant(std::size_t j, std::size_t k, std::size_t l) const {
        return c_[(j * dim_ + k) * dim_ + l];
    }
    void set_constant(std::size_t j, std::size_t k, std::size_t l, const Scalar& v) {
        c_[(j * dim_ + k) * dim_ + l] = field_.reduce(v);
    }

    /// Coordinates of a_j a_k.
    Vector basis_product(std::size_t j, std::size_t k) const;
    Vector multiply(const Vector& x, const Vector& y) const;
    Vector unit(std::size_t j) const;
    Vector one() const { return unit(0); }
    /// Matrix of x ↦ a_j x and x ↦ x a_j on coordinate vectors.
    Matrix left_matrix(std::size_t j) const;
    Matrix right_matrix(std::size_t j) const;
    Matrix left_matrix(const Vector& a) const;
    Matrix right_matrix(const Vector& a) const;

    /// Complete set of orthogonal primitive idempotents, when known.
    const std::optional<std::vector<Vector>>& idempotents() const noexcept { return idempotents_; }
    void set_idempotents(std::vector<Vector> e) { idempotents_ = std::move(e); }

    /// Radical known from the construction (the arrow ideal of a quiver algebra).
    const std::optional<Subspace>& radical_hint() const noexcept { return radical_hint_; }
    void set_radical_hint(Subspace r) { radical_hint_ = std::move(r); }

    friend bool operator==(const FDAlgebra& a, const FDAlgebra& b) {
        return a.field_ == b.field_ && a.dim_ == b.dim_ && a.c_ == b.c_;
    }

private:
    Field field_;
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<Scalar> c_;
    std::optional<std::vector<Vector>> idempotents_;
    std::optional<Subspace> radical_hint_;
};

using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

struct AlgebraViolation {
    enum class Kind { identity, associativity, idempotents };
    Kind kind;
    std::size_t j = 0, k = 0, l = 0, v = 0;  // 0-based witness
    std::string describe() const;
};

/// nullopt when the identity and associativity laws hold exactly, otherwise
/// the first failing index tuple.
std::optional<AlgebraViolation> validate_algebra(const FDAlgebra& a);

/// A path p is a list of arrow indices in walking order. As an algebra element
/// paths multiply by composition: p·q means "q, then p".
struct QuiverArrow {
    std::size_t source, target;  // 0-based vertices
    std::string label;
};

struct QuiverTerm {
    std::vector<std::size_t> walk;  // arrow indices, walking order
    Scalar coeff;
};

struct QuiverPresentation {
    std::size_t vertex_count = 0;
    std::vector<QuiverArrow> arrows;
    std::vector<std::vector<QuiverTerm>> relations;
    std::size_t nilpotency_bound = 0;

    /// Parses a path written as an algebra product of arrow labels,
    /// e.g. "b*a" for "a, then b". Without '*' every character must be a label.
    std::vector<std::size_t> parse_path(const std::string& text) const;
    std::string path_label(const std::vector<std::size_t>& walk) const;
};

/// Path algebra modulo the relations and all paths of length ≥ N. The basis
/// starts with 1 and e_2, ..., e_n, followed by surviving paths ordered by
/// length, so e_1 = 1 − Σ_{i≥2} e_i.
AlgebraPtr path_algebra(const QuiverPresentation& q, const Field& field);

/// Validated algebra from a structure-constant table.
AlgebraPtr make_algebra(FDAlgebra a);

/// Field itself, as a 1-dimensional algebra with idempotent 1.
AlgebraPtr ground_field_algebra(const Field& field);
/// K[x]/(x^n) as a one-loop quiver algebra.
AlgebraPtr truncated_polynomial_algebra(const Field& field, std::size_t n);
/// Path algebra of 1 → 2 → ... → n without relations.
AlgebraPtr linear_quiver_algebra(const Field& field, std::size_t n);

Subspace center(const FDAlgebra& a);
/// Jacobson radical. Throws UnsupportedCharacteristic if the trace-form
/// criterion does not apply and no radical is known from the construction.
Subspace radical(const FDAlgebra& a);
bool is_two_sided_ideal(const FDAlgebra& a, const Subspace& ideal);
/// Smallest k with ideal^k = 0, or nullopt if the ideal is not nilpotent.
std::optional<std::size_t> nilpotency_index(const FDAlgebra& a, const Subspace& ideal);

AlgebraPtr opposite_algebra(const FDAlgebra& a);

/// Subalgebra or quotient helpers used to build endomorphism algebras: given
/// linearly independent operators (matrices) closed under composition and
/// containing the identity first, returns the algebra with product
/// b_j · b_k = ops[k] ∘ ops[j] when `opposite`, else ops[j] ∘ ops[k].
AlgebraPtr algebra_from_operators(const Field& field, const std::vector<Matrix>& ops, bool opposite,
                                  std::vector<std::string> labels = {});

}  // namespace compvar

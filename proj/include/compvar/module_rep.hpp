#pragma once

#include "compvar/algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace compvar {

/// Left module on F^d given by the action matrices ρ(a_j); ρ(a_0) = I.
struct ModuleRep {
    AlgebraPtr algebra;
    std::size_t dim = 0;
    std::vector<Matrix> rho;

    const Field& field() const { return algebra->field(); }
    /// ρ(a) for an arbitrary algebra element a.
    Matrix action(const Vector& a) const;
};

struct ModuleViolation {
    bool identity = false;  // ρ(a_1) ≠ I
    std::size_t j = 0, k = 0;
    std::string describe() const;
};

std::optional<ModuleViolation> validate_module(const ModuleRep& m);
/// Throws ValidationError on shape or relation failure.
ModuleRep make_module(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> rho);

ModuleRep zero_module(AlgebraPtr algebra);
ModuleRep regular_module(AlgebraPtr algebra);
ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b);
ModuleRep direct_sum(const std::vector<ModuleRep>& parts, AlgebraPtr algebra);
/// Base change x ↦ g x: the action becomes g ρ g⁻¹.
ModuleRep conjugate(const ModuleRep& m, const Matrix& g);

struct Submodule {
    ModuleRep module;
    Matrix inclusion;  // columns are the chosen basis of the subspace
};
/// Requires an invariant subspace; throws ValidationError otherwise.
Submodule submodule(const ModuleRep& m, const Subspace& u);

struct QuotientModule {
    ModuleRep module;
    Matrix projection;
};
QuotientModule quotient_module(const ModuleRep& m, const Subspace& u);

/// Intertwiners F (d_N × d_M, flattened row-major) with F ρ_M = ρ_N F.
Subspace hom_space(const ModuleRep& m, const ModuleRep& n);
std::vector<Matrix> hom_basis(const ModuleRep& m, const ModuleRep& n);

enum class IsoStatus { isomorphic, not_isomorphic, probably_not_isomorphic };
std::string to_string(IsoStatus s);

/// Outcome of a search for an invertible element in a space of block-diagonal
/// maps. `witness` holds the blocks when one was found.
struct IsoResult {
    IsoStatus status;
    std::optional<std::vector<Matrix>> witness;
    bool isomorphic() const { return status == IsoStatus::isomorphic; }
};

/// Searches the span of `basis` (each element a list of square blocks) for an
/// element whose blocks are all invertible. Over F_q the space is enumerated
/// completely when q^dim ≤ 10^6 (a failure is then a proof), otherwise 64
/// random samples are tried. Over Q random integer combinations are drawn in
/// 8 rounds of growing height.
IsoResult find_invertible(const Field& field, const std::vector<std::vector<Matrix>>& basis, std::uint64_t seed);

IsoResult is_isomorphic_modules(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed = 0);

struct TopInfo {
    Subspace radical;                        // rad(A)·M
    std::size_t top_dim = 0;                 // dim M / rad M
    std::vector<std::size_t> multiplicities; // per vertex; empty without idempotents
};
TopInfo top_and_radical(const ModuleRep& m);

/// The indecomposable projective A e_i together with the coordinates of the
/// generator e_i and the basis of A e_i inside A.
struct ProjectiveData {
    ModuleRep module;
    std::vector<Vector> basis_in_algebra;
    Vector generator;
};
std::vector<ProjectiveData> projective_data(AlgebraPtr algebra);
std::vector<ModuleRep> indecomposable_projectives(AlgebraPtr algebra);
/// S_i = top of A e_i; requires a basic algebra whose idempotents span A/rad A.
std::vector<ModuleRep> simple_modules(AlgebraPtr algebra);

struct ProjectiveCover {
    ModuleRep cover;
    Matrix projection;  // d_M × d_P, surjective A-linear
    std::vector<std::size_t> multiplicities;
};
ProjectiveCover projective_cover(const ModuleRep& m);
bool is_projective(const ModuleRep& m);
std::size_t ext1_dim_oracle(const ModuleRep& m, const ModuleRep& n);

/// End_A(M)^op as a structure-constant algebra (identity first).
AlgebraPtr endomorphism_algebra_op(const ModuleRep& m);

}  // namespace compvar

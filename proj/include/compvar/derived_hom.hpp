#pragma once

#include "compvar/complex.hpp"

#include <vector>

namespace compvar {

/// Number of projective-cover steps used to replace X when computing
/// Hom(X, Y[n]) in the derived category. Zero for projective X.
std::size_t replacement_steps(const ChainComplex& x, const ChainComplex& y, int n);

/// dim Hom_{D^b}(X, Y[n]) for an almost projective X, computed as homotopy
/// classes of maps out of a truncated projective replacement of X.
std::size_t derived_hom_dim(const ChainComplex& x, const ChainComplex& y, int n);
/// The same with `extra` replacement steps past the truncation degree. The
/// answer must not depend on `extra`; tests use this to check the truncation.
std::size_t derived_hom_dim_with_extra(const ChainComplex& x, const ChainComplex& y, int n, std::size_t extra);

/// Chain endomorphisms of X as the algebra End(X)^op: basis element b_k is
/// the chain map basis_maps[k] (b_0 = id), and b_j · b_k = basis_maps[k] ∘
/// basis_maps[j]. H is the ideal of null-homotopic maps.
struct EndAlgebraPackage {
    AlgebraPtr bhat;
    std::vector<ChainMap> basis_maps;
    Subspace H;
    Subspace radical;

    ChainMap element(const Vector& coords) const;
    Vector coordinates(const ChainMap& f) const;
};
EndAlgebraPackage end_algebra(const ChainComplex& x);

/// Idempotent e ≡ ebar modulo the nilpotent ideal n, by repeating
/// e ← 3e² − 2e³. Throws ValidationError if ebar is not idempotent mod n.
Vector lift_idempotent(const FDAlgebra& b, const Vector& ebar, const Subspace& n);

struct AcyclicSplit {
    Vector e;                  // idempotent in End(X)^op coordinates
    ChainMap e_map;            // the same idempotent as a chain map
    ChainComplex xe;           // image of e
    ChainComplex xcomp;        // image of 1 − e, acyclic
    ChainMap inclusion;        // Xe → X
    ChainMap projection;       // X → Xe
};
/// Splits off an acyclic direct summand: f is an idempotent generating
/// (H + J)/J in End(X)^op / J, lifted through the radical J, and e = 1 − f.
AcyclicSplit acyclic_splitter(const ChainComplex& x);

/// Degreewise split extensions of X by Y modulo equivalence; this is
/// dim of homotopy classes of maps X → Y[1].
std::size_t semisplit_ext_dim(const ChainComplex& x, const ChainComplex& y);
/// The chain map X → Y[1] attached to the off-diagonal differential blocks
/// σ_i : X_i → Y_{i−1} (given for the source window) of a degreewise split
/// extension with differential [[∂^Y, σ], [0, ∂^X]].
ChainMap verdier_xi(const ChainComplex& x, const ChainComplex& y, const std::vector<Matrix>& sigma);

}  // namespace compvar

#pragma once

#include "compvar/complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace compvar {

/// First-order deformation of a point X = (X_m, ..., X_0): for each degree a
/// derivation δ_i (one matrix per basis element of A) and for i = m..1 a
/// matrix σ_i : X_i → X_{i−1}. Index 0 of `deltas` is degree m.
struct TangentVector {
    std::vector<std::vector<Matrix>> deltas;
    std::vector<Matrix> sigmas;
};

/// Coordinates on deformations of a fixed point: blocks w_{ij} for degrees
/// m..0 and j ascending, then v_i for i = m..1, each flattened row-major.
class TangentCoordinates {
public:
    explicit TangentCoordinates(const ChainComplex& x);

    const BlockLayout& layout() const noexcept { return layout_; }
    std::size_t size() const noexcept { return layout_.size(); }
    int top() const noexcept { return m_; }
    std::size_t w_block(int degree, std::size_t j) const;
    std::size_t v_block(int degree) const;

    TangentVector unpack(const Vector& v) const;
    Vector pack(const TangentVector& t) const;

private:
    Field field_;
    int m_;
    std::size_t s_;
    BlockLayout layout_;
    std::vector<std::size_t> w_, v_;
};

struct TangentSpace {
    TangentCoordinates coords;
    Subspace space;
    std::vector<TangentVector> basis() const;
};

/// Solutions of the linearized point equations at X:
///   (a) w_{ij} ρ_i(a_k) + ρ_i(a_j) w_{ik} − Σ_l c_{jkl} w_{il} = 0
///   (b) v_i ρ_i(a_j) + ∂_i w_{ij} − w_{i−1,j} ∂_i − ρ_{i−1}(a_j) v_i = 0
///   (c) v_{i−1} ∂_i + ∂_{i−1} v_i = 0
TangentSpace tangent_space_basis(const ChainComplex& x);
/// Whether t satisfies the three linearized conditions at X.
bool is_tangent_vector(const ChainComplex& x, const TangentVector& t);

struct OrbitTangent {
    TangentCoordinates coords;
    Subspace space;
    std::size_t stabilizer_lie_dim;
};
/// Image of t ↦ (t_i ρ_i(a_j) − ρ_i(a_j) t_i, t_{i−1} ∂_i − ∂_i t_i) over all
/// t = (t_m, ..., t_0); the kernel dimension is the stabilizer's.
OrbitTangent orbit_tangent_basis(const ChainComplex& x);
/// The orbit tangent vector of a given t (listed t_m..t_0).
TangentVector orbit_tangent_vector(const ChainComplex& x, const std::vector<Matrix>& t_desc);

std::size_t quotient_dim(const ChainComplex& x);

/// The extension 0 → X → Z → X → 0 attached to a tangent vector.
struct ChiResult {
    ChainComplex z;
    ChainMap inclusion;
    ChainMap projection;
};
ChiResult chi(const ChainComplex& x, const TangentVector& v);
/// A chain map X → Z that is a right inverse of the projection, if one exists.
std::optional<ChainMap> splitting_section(const ChiResult& c);

struct EtaResult {
    std::vector<Matrix> t_desc;  // the inner-derivation solutions t_m..t_0
    ChainMap map;                // σ′ : X → X[1]
};
/// For projective X: removes the derivation part of v by an inner
/// derivation and returns the corrected σ as a chain map X → X[1].
EtaResult eta(const ChainComplex& x, const TangentVector& v);

struct EtaKernel {
    Subspace kernel;        // {v : η(v) null-homotopic}, tangent coordinates
    std::size_t rank;       // dim of the image modulo null-homotopic maps
    std::size_t hom_dim;    // homotopy classes of maps X → X[1]
};
EtaKernel eta_kernel(const ChainComplex& x);

enum class Verdict { equality, embedding, violation };
std::string to_string(Verdict v);

struct TangentComparison {
    std::size_t tangent_dim, orbit_dim, stabilizer_dim, quotient, derived_hom_dim;
    bool projective;
    Verdict verdict;
};
/// Compares dim T_X(Comp) / T_X(G.X) with dim Hom_{D^b}(X, X[1]).
TangentComparison compare_tangent_with_derived_hom(const ChainComplex& x);

bool is_rigid(const ChainComplex& x);
struct RigidityCheck {
    bool rigid;
    std::size_t quotient;
    bool ok;  // rigid implies quotient = 0
};
RigidityCheck open_orbit_check(const ChainComplex& x);

struct VoigtReport {
    std::size_t quotient, ext1;
    bool ok, equality;
};
/// Tangent quotient of the stalk complex of M against dim Ext¹(M, M).
VoigtReport voigt_check(const ModuleRep& m, int degree = 0);

}  // namespace compvar

#pragma once

#include "compvar/linear_system.hpp"
#include "compvar/module_rep.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace compvar {

/// Bounded complex of finite-dimensional left modules, homologically graded:
/// ∂_i : X_i → X_{i−1}. Terms live in degrees low..high; everything outside
/// that window is zero. A point of the complex variety is a complex with
/// low = 0, listed from degree m = high down to 0.
class ChainComplex {
public:
    /// Terms and differentials in ascending degree order: terms for
    /// low..high, differentials ∂_{low+1}..∂_high.
    ChainComplex(AlgebraPtr algebra, int low, std::vector<ModuleRep> terms, std::vector<Matrix> differentials);

    /// Point format: modules X_m..X_0 and differentials ∂_m..∂_1.
    static ChainComplex from_point(AlgebraPtr algebra, std::vector<ModuleRep> modules_desc,
                                   std::vector<Matrix> differentials_desc);
    static ChainComplex zero(AlgebraPtr algebra, int low = 0, int high = 0);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const Field& field() const { return algebra_->field(); }
    int low() const noexcept { return low_; }
    int high() const noexcept { return low_ + static_cast<int>(terms_.size()) - 1; }

    // All accessors accept any degree; out-of-window data is zero.
    std::size_t dim(int i) const;
    const ModuleRep& term(int i) const;
    const Matrix& rho(int i, std::size_t j) const { return term(i).rho.at(j); }
    /// ∂_i of shape dim(i−1) × dim(i).
    Matrix diff(int i) const;

    std::size_t total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    std::optional<int> left_degree() const;
    /// low = 0, so the complex is a point with m = high.
    bool is_point() const noexcept { return low_ == 0; }
    /// Dimensions d_m..d_0 of a point.
    std::vector<std::size_t> dims_desc() const;

    /// Same complex over the window [lo, hi], padding with zero terms. The
    /// window must contain every nonzero term.
    ChainComplex with_window(int lo, int hi) const;

    friend bool operator==(const ChainComplex& a, const ChainComplex& b);

private:
    AlgebraPtr algebra_;
    int low_;
    std::vector<ModuleRep> terms_;
    std::vector<Matrix> diffs_;  // diffs_[k] = ∂_{low+1+k}
    ModuleRep zero_term_;
};

using ComplexPoint = ChainComplex;

struct PointViolation {
    enum class Condition { alpha, beta, gamma };
    Condition condition;
    int degree = 0;
    std::size_t j = 0, k = 0;
    std::string describe() const;
};

/// Shapes are checked first (DimensionMismatch); then the module relations,
/// A-linearity of the differentials and ∂∂ = 0, in that order.
std::optional<PointViolation> validate_point(const ChainComplex& x);
/// Throws ValidationError with the witness description.
void require_valid(const ChainComplex& x);

ChainComplex stalk(const ModuleRep& m, int degree);
/// Slot i holds X_{i−n}, with differential (−1)^n ∂.
ChainComplex shift(const ChainComplex& x, int n);
ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y);

/// Degreewise map X → Y[n]: the component at degree i goes X_i → Y_{i−n}.
/// Components are stored for the source window; others are zero.
struct ChainMap {
    ChainComplex source, target;
    int shift = 0;
    std::vector<Matrix> components;  // source.low()..source.high()

    Matrix component(int i) const;
    static ChainMap zero(const ChainComplex& source, const ChainComplex& target, int shift);
    static ChainMap identity(const ChainComplex& x);
};

/// A-linearity and (−1)^n ∂^Y f_i = f_{i−1} ∂^X_i in every degree.
bool is_chain_map(const ChainMap& f);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g ∘ f
ChainMap operator+(const ChainMap& a, const ChainMap& b);
ChainMap scaled(const ChainMap& f, const Scalar& c);

/// Cone of f : X → Y: C_i = X_{i−1} ⊕ Y_i, ∂ = [[−∂^X, 0], [−f, ∂^Y]].
ChainComplex mapping_cone(const ChainMap& f);

struct GroupElement {
    int low = 0;
    std::vector<Matrix> g;  // degrees low..low+size−1
    Matrix at(int i) const { return g.at(static_cast<std::size_t>(i - low)); }
    static GroupElement identity(const ChainComplex& x);
};
GroupElement compose(const GroupElement& a, const GroupElement& b);
/// Conjugates each term and transports the differentials.
ChainComplex act(const GroupElement& g, const ChainComplex& x);

/// Space of chain maps X → Y[n] in coordinates given by one block per source
/// degree.
struct MapSpace {
    ChainComplex source, target;
    int shift;
    BlockLayout layout;
    Subspace space;

    ChainMap element(const Vector& v) const;
    Vector coordinates(const ChainMap& f) const;
    std::vector<ChainMap> basis() const;
};
MapSpace chain_map_space(const ChainComplex& x, const ChainComplex& y, int n);

struct HomotopyHom {
    std::size_t hom_dim;
    Subspace nullhomotopic;  // in chain_maps.layout coordinates
    MapSpace chain_maps;
};
/// Chain maps modulo maps of the form (−1)^n ∂^Y s_i + s_{i−1} ∂^X_i with
/// A-linear s_i : X_i → Y_{i+1−n}.
HomotopyHom homotopy_hom(const ChainComplex& x, const ChainComplex& y, int n);
/// The null-homotopic map built from homotopy components s (source window).
ChainMap nullhomotopic_map(const ChainComplex& x, const ChainComplex& y, int n, const std::vector<Matrix>& s);

struct HomologyGroup {
    std::size_t dim;
    Subspace cycles;
    Subspace boundaries;
};
HomologyGroup homology(const ChainComplex& x, int i);
std::vector<std::size_t> homology_dims(const ChainComplex& x);  // degrees low..high
bool is_acyclic(const ChainComplex& x);
bool is_quasi_isomorphism(const ChainMap& f);

/// Searches chain_map_space(X, Y, 0) for a degreewise invertible element.
IsoResult complexes_isomorphic(const ChainComplex& x, const ChainComplex& y, std::uint64_t seed = 0);

struct Classification {
    std::optional<int> left_degree;
    bool is_projective_complex;
    bool is_almost_projective;
};
Classification classify(const ChainComplex& x);

struct ProjectiveExtension {
    ChainComplex complex;
    ChainMap to_original;  // quasi-isomorphism X^(r) → X
};
/// r-fold extension to the left by projective covers.
ProjectiveExtension projective_extension(const ChainComplex& x, std::size_t r);

}  // namespace compvar

#include "compvar/complex.hpp"

#include "compvar/errors.hpp"

#include <algorithm>
#include <sstream>

namespace compvar {

namespace {

Scalar sign(int n) { return (n % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace

ChainComplex::ChainComplex(AlgebraPtr algebra, int low, std::vector<ModuleRep> terms, std::vector<Matrix> differentials)
    : algebra_(std::move(algebra)), low_(low), terms_(std::move(terms)), diffs_(std::move(differentials)),
      zero_term_(zero_module(algebra_)) {
    if (terms_.empty()) terms_.push_back(zero_term_);
    if (diffs_.size() + 1 != terms_.size()) throw DimensionMismatch("complex: need one differential between adjacent terms");
    for (const auto& t : terms_) {
        if (!same_algebra(t.algebra, algebra_)) throw ValidationError("complex: term over a different algebra");
        if (t.rho.size() != algebra_->dim()) throw DimensionMismatch("complex: term has the wrong number of action matrices");
        for (const auto& r : t.rho)
            if (r.rows() != t.dim || r.cols() != t.dim) throw DimensionMismatch("complex: action matrix shape mismatch");
    }
    for (std::size_t k = 0; k < diffs_.size(); ++k)
        if (diffs_[k].rows() != terms_[k].dim || diffs_[k].cols() != terms_[k + 1].dim)
            throw DimensionMismatch("complex: differential at degree " + std::to_string(low_ + 1 + static_cast<int>(k)) +
                                    " has the wrong shape");
}

ChainComplex ChainComplex::from_point(AlgebraPtr algebra, std::vector<ModuleRep> modules_desc,
                                      std::vector<Matrix> differentials_desc) {
    std::reverse(modules_desc.begin(), modules_desc.end());
    std::reverse(differentials_desc.begin(), differentials_desc.end());
    return ChainComplex(std::move(algebra), 0, std::move(modules_desc), std::move(differentials_desc));
}

ChainComplex ChainComplex::zero(AlgebraPtr algebra, int low, int high) {
    ModuleRep z = zero_module(algebra);
    std::size_t n = static_cast<std::size_t>(std::max(high - low + 1, 1));
    std::vector<Matrix> diffs(n - 1, Matrix(algebra->field(), 0, 0));
    return ChainComplex(algebra, low, std::vector<ModuleRep>(n, z), std::move(diffs));
}

std::size_t ChainComplex::dim(int i) const { return term(i).dim; }

const ModuleRep& ChainComplex::term(int i) const {
    if (i < low_ || i > high()) return zero_term_;
    return terms_[static_cast<std::size_t>(i - low_)];
}

Matrix ChainComplex::diff(int i) const {
    if (i <= low_ || i > high()) return Matrix(field(), dim(i - 1), dim(i));
    return diffs_[static_cast<std::size_t>(i - low_ - 1)];
}

std::size_t ChainComplex::total_dim() const {
    std::size_t n = 0;
    for (const auto& t : terms_) n += t.dim;
    return n;
}

std::optional<int> ChainComplex::left_degree() const {
    for (int i = high(); i >= low_; --i)
        if (dim(i) > 0) return i;
    return std::nullopt;
}

std::vector<std::size_t> ChainComplex::dims_desc() const {
    std::vector<std::size_t> out;
    for (int i = high(); i >= low_; --i) out.push_back(dim(i));
    return out;
}

ChainComplex ChainComplex::with_window(int lo, int hi) const {
    if (hi < lo) throw ValidationError("complex window is empty");
    for (int i = low_; i <= high(); ++i)
        if ((i < lo || i > hi) && dim(i) > 0) throw ValidationError("complex window drops a nonzero term");
    std::vector<ModuleRep> t;
    std::vector<Matrix> d;
    for (int i = lo; i <= hi; ++i) {
        t.push_back(term(i));
        if (i > lo) d.push_back(diff(i));
    }
    return ChainComplex(algebra_, lo, std::move(t), std::move(d));
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
    if (!same_algebra(a.algebra_, b.algebra_)) return false;
    int lo = std::min(a.low(), b.low()), hi = std::max(a.high(), b.high());
    for (int i = lo; i <= hi + 1; ++i) {
        if (a.dim(i) != b.dim(i)) return false;
        if (!(a.term(i).rho == b.term(i).rho) && a.dim(i) > 0) return false;
        if (!(a.diff(i) == b.diff(i))) return false;
    }
    return true;
}

std::string PointViolation::describe() const {
    std::ostringstream os;
    switch (condition) {
    case Condition::alpha:
        os << "(α) at i=" << degree << ": module relation fails for a_" << j + 1 << " a_" << k + 1;
        break;
    case Condition::beta:
        os << "(β) at i=" << degree << ": differential does not commute with a_" << j + 1;
        break;
    case Condition::gamma:
        os << "(γ) at i=" << degree << ": ∂_" << degree - 1 << " ∂_" << degree << " ≠ 0";
        break;
    }
    return os.str();
}

std::optional<PointViolation> validate_point(const ChainComplex& x) {
    for (int i = x.high(); i >= x.low(); --i)
        if (auto bad = validate_module(x.term(i)))
            return PointViolation{PointViolation::Condition::alpha, i, bad->j, bad->k};
    for (int i = x.high(); i > x.low(); --i) {
        Matrix d = x.diff(i);
        for (std::size_t j = 1; j < x.algebra()->dim(); ++j)
            if (!(d * x.rho(i, j) == x.rho(i - 1, j) * d)) return PointViolation{PointViolation::Condition::beta, i, j, 0};
    }
    for (int i = x.high(); i > x.low() + 1; --i)
        if (!(x.diff(i - 1) * x.diff(i)).is_zero()) return PointViolation{PointViolation::Condition::gamma, i, 0, 0};
    return std::nullopt;
}

void require_valid(const ChainComplex& x) {
    if (auto bad = validate_point(x)) throw ValidationError(bad->describe());
}

ChainComplex stalk(const ModuleRep& m, int degree) {
    int lo = std::min(degree, 0);
    std::vector<ModuleRep> terms;
    std::vector<Matrix> diffs;
    for (int i = lo; i <= degree; ++i) {
        terms.push_back(i == degree ? m : zero_module(m.algebra));
        if (i > lo) diffs.push_back(Matrix(m.field(), 0, i == degree ? m.dim : 0));
    }
    return ChainComplex(m.algebra, lo, std::move(terms), std::move(diffs));
}

ChainComplex shift(const ChainComplex& x, int n) {
    std::vector<ModuleRep> terms;
    std::vector<Matrix> diffs;
    for (int i = x.low(); i <= x.high(); ++i) {
        terms.push_back(x.term(i));
        if (i > x.low()) diffs.push_back(x.diff(i).scaled(sign(n)));
    }
    return ChainComplex(x.algebra(), x.low() + n, std::move(terms), std::move(diffs));
}

ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y) {
    if (!same_algebra(x.algebra(), y.algebra())) throw ValidationError("direct sum of complexes over different algebras");
    int lo = std::min(x.low(), y.low()), hi = std::max(x.high(), y.high());
    std::vector<ModuleRep> terms;
    std::vector<Matrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        terms.push_back(direct_sum(x.term(i), y.term(i)));
        if (i > lo) diffs.push_back(block_diagonal(x.diff(i), y.diff(i)));
    }
    return ChainComplex(x.algebra(), lo, std::move(terms), std::move(diffs));
}

// ---------------------------------------------------------------------------
// Chain maps

Matrix ChainMap::component(int i) const {
    if (i >= source.low() && i <= source.high() && !components.empty())
        return components[static_cast<std::size_t>(i - source.low())];
    return Matrix(source.field(), target.dim(i - shift), source.dim(i));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target, int shift) {
    ChainMap f{source, target, shift, {}};
    for (int i = source.low(); i <= source.high(); ++i)
        f.components.emplace_back(source.field(), target.dim(i - shift), source.dim(i));
    return f;
}

ChainMap ChainMap::identity(const ChainComplex& x) {
    ChainMap f{x, x, 0, {}};
    for (int i = x.low(); i <= x.high(); ++i) f.components.push_back(Matrix::identity(x.field(), x.dim(i)));
    return f;
}

bool is_chain_map(const ChainMap& f) {
    const ChainComplex &x = f.source, &y = f.target;
    const int n = f.shift;
    for (int i = x.low(); i <= x.high(); ++i) {
        Matrix c = f.component(i);
        if (c.rows() != y.dim(i - n) || c.cols() != x.dim(i)) return false;
        for (std::size_t j = 1; j < x.algebra()->dim(); ++j)
            if (!(c * x.rho(i, j) == y.rho(i - n, j) * c)) return false;
    }
    for (int i = x.low(); i <= x.high() + 1; ++i) {
        Matrix lhs = (y.diff(i - n) * f.component(i)).scaled(sign(n));
        Matrix rhs = f.component(i - 1) * x.diff(i);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    ChainMap out{f.source, g.target, f.shift + g.shift, {}};
    for (int i = f.source.low(); i <= f.source.high(); ++i)
        out.components.push_back(g.component(i - f.shift) * f.component(i));
    return out;
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
    if (a.shift != b.shift) throw ValidationError("sum of chain maps with different shifts");
    ChainMap out{a.source, a.target, a.shift, {}};
    for (int i = a.source.low(); i <= a.source.high(); ++i) out.components.push_back(a.component(i) + b.component(i));
    return out;
}

ChainMap scaled(const ChainMap& f, const Scalar& c) {
    ChainMap out = f;
    for (auto& m : out.components) m = m.scaled(c);
    return out;
}

ChainComplex mapping_cone(const ChainMap& f) {
    if (f.shift != 0) throw ValidationError("mapping cone needs a degree-preserving chain map");
    const ChainComplex &x = f.source, &y = f.target;
    const Field& fld = x.field();
    int lo = std::min(x.low() + 1, y.low()), hi = std::max(x.high() + 1, y.high());
    std::vector<ModuleRep> terms;
    std::vector<Matrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        terms.push_back(direct_sum(x.term(i - 1), y.term(i)));
        if (i == lo) continue;
        diffs.push_back(block2x2(-x.diff(i - 1), Matrix(fld, x.dim(i - 2), y.dim(i)), -f.component(i - 1), y.diff(i)));
    }
    return ChainComplex(x.algebra(), lo, std::move(terms), std::move(diffs));
}

GroupElement GroupElement::identity(const ChainComplex& x) {
    GroupElement g{x.low(), {}};
    for (int i = x.low(); i <= x.high(); ++i) g.g.push_back(Matrix::identity(x.field(), x.dim(i)));
    return g;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
    if (a.low != b.low || a.g.size() != b.g.size()) throw DimensionMismatch("group elements over different windows");
    GroupElement out{a.low, {}};
    for (std::size_t k = 0; k < a.g.size(); ++k) out.g.push_back(a.g[k] * b.g[k]);
    return out;
}

ChainComplex act(const GroupElement& g, const ChainComplex& x) {
    if (g.low != x.low() || g.g.size() != static_cast<std::size_t>(x.high() - x.low() + 1))
        throw DimensionMismatch("group element does not match the complex");
    std::vector<Matrix> inv;
    for (int i = x.low(); i <= x.high(); ++i) {
        Matrix gi = g.at(i);
        if (gi.rows() != x.dim(i) || gi.cols() != x.dim(i)) throw DimensionMismatch("group element block size mismatch");
        try {
            inv.push_back(inverse(gi));
        } catch (const std::domain_error&) {
            throw ValidationError("group element is singular at degree " + std::to_string(i));
        }
    }
    std::vector<ModuleRep> terms;
    std::vector<Matrix> diffs;
    for (int i = x.low(); i <= x.high(); ++i) {
        std::size_t k = static_cast<std::size_t>(i - x.low());
        ModuleRep t = x.term(i);
        for (auto& r : t.rho) r = g.g[k] * r * inv[k];
        terms.push_back(std::move(t));
        if (i > x.low()) diffs.push_back(g.g[k - 1] * x.diff(i) * inv[k]);
    }
    return ChainComplex(x.algebra(), x.low(), std::move(terms), std::move(diffs));
}

// ---------------------------------------------------------------------------
// Hom spaces

ChainMap MapSpace::element(const Vector& v) const {
    ChainMap f{source, target, shift, {}};
    for (std::size_t b = 0; b < layout.block_count(); ++b) f.components.push_back(layout.extract(source.field(), v, b));
    return f;
}

Vector MapSpace::coordinates(const ChainMap& f) const {
    std::vector<Matrix> blocks;
    for (int i = source.low(); i <= source.high(); ++i) blocks.push_back(f.component(i));
    return layout.pack(source.field(), blocks);
}

std::vector<ChainMap> MapSpace::basis() const {
    std::vector<ChainMap> out;
    for (const auto& v : space.basis()) out.push_back(element(v));
    return out;
}

namespace {

void require_same(const ChainComplex& x, const ChainComplex& y) {
    if (!same_algebra(x.algebra(), y.algebra())) throw ValidationError("complexes over different algebras");
}

void add_linearity(LinearSystem& sys, std::size_t block, const ModuleRep& from, const ModuleRep& to) {
    for (std::size_t j = 1; j < from.rho.size(); ++j) {
        std::size_t eq = sys.equation(to.dim, from.dim);
        sys.add_term(eq, block, nullptr, &from.rho[j]);
        sys.add_term(eq, block, &to.rho[j], nullptr, -1);
    }
}

}  // namespace

MapSpace chain_map_space(const ChainComplex& x, const ChainComplex& y, int n) {
    require_same(x, y);
    BlockLayout layout;
    for (int i = x.low(); i <= x.high(); ++i) layout.add(y.dim(i - n), x.dim(i));
    LinearSystem sys(x.field(), layout);
    auto block = [&](int i) { return static_cast<std::size_t>(i - x.low()); };
    for (int i = x.low(); i <= x.high(); ++i) add_linearity(sys, block(i), x.term(i), y.term(i - n));
    for (int i = x.low(); i <= x.high(); ++i) {
        // (−1)^n ∂^Y_{i−n} f_i − f_{i−1} ∂^X_i = 0
        std::size_t eq = sys.equation(y.dim(i - n - 1), x.dim(i));
        Matrix dy = y.diff(i - n);
        sys.add_term(eq, block(i), &dy, nullptr, sign(n));
        if (i - 1 >= x.low()) {
            Matrix dx = x.diff(i);
            sys.add_term(eq, block(i - 1), nullptr, &dx, -1);
        }
    }
    return MapSpace{x, y, n, layout, sys.solutions()};
}

ChainMap nullhomotopic_map(const ChainComplex& x, const ChainComplex& y, int n, const std::vector<Matrix>& s) {
    auto s_at = [&](int i) {
        if (i < x.low() || i > x.high()) return Matrix(x.field(), y.dim(i + 1 - n), x.dim(i));
        return s.at(static_cast<std::size_t>(i - x.low()));
    };
    ChainMap f{x, y, n, {}};
    for (int i = x.low(); i <= x.high(); ++i)
        f.components.push_back((y.diff(i + 1 - n) * s_at(i)).scaled(sign(n)) + s_at(i - 1) * x.diff(i));
    return f;
}

HomotopyHom homotopy_hom(const ChainComplex& x, const ChainComplex& y, int n) {
    MapSpace maps = chain_map_space(x, y, n);
    BlockLayout hl;
    for (int i = x.low(); i <= x.high(); ++i) hl.add(y.dim(i + 1 - n), x.dim(i));
    LinearSystem sys(x.field(), hl);
    for (int i = x.low(); i <= x.high(); ++i)
        add_linearity(sys, static_cast<std::size_t>(i - x.low()), x.term(i), y.term(i + 1 - n));
    std::vector<Vector> images;
    for (const auto& v : sys.solutions().basis())
        images.push_back(maps.coordinates(nullhomotopic_map(x, y, n, hl.unpack(x.field(), v))));
    Subspace null = Subspace::span(x.field(), maps.layout.size(), images);
    if (!maps.space.contains(null)) throw std::logic_error("null-homotopic maps are not chain maps");
    std::size_t d = maps.space.dim() - null.dim();
    return HomotopyHom{d, std::move(null), std::move(maps)};
}

HomologyGroup homology(const ChainComplex& x, int i) {
    Subspace cycles = kernel_basis(x.diff(i));
    Subspace boundaries = column_space(x.diff(i + 1));
    std::size_t d = cycles.dim() - boundaries.dim();
    return HomologyGroup{d, std::move(cycles), std::move(boundaries)};
}

std::vector<std::size_t> homology_dims(const ChainComplex& x) {
    std::vector<std::size_t> out;
    for (int i = x.low(); i <= x.high(); ++i) out.push_back(x.dim(i) - rank(x.diff(i)) - rank(x.diff(i + 1)));
    return out;
}

bool is_acyclic(const ChainComplex& x) {
    for (auto d : homology_dims(x))
        if (d != 0) return false;
    return true;
}

bool is_quasi_isomorphism(const ChainMap& f) { return is_acyclic(mapping_cone(f)); }

IsoResult complexes_isomorphic(const ChainComplex& x, const ChainComplex& y, std::uint64_t seed) {
    require_same(x, y);
    int lo = std::min(x.low(), y.low()), hi = std::max(x.high(), y.high());
    for (int i = lo; i <= hi; ++i)
        if (x.dim(i) != y.dim(i)) return IsoResult{IsoStatus::not_isomorphic, std::nullopt};
    ChainComplex xw = x.with_window(lo, hi), yw = y.with_window(lo, hi);
    if (homology_dims(xw) != homology_dims(yw)) return IsoResult{IsoStatus::not_isomorphic, std::nullopt};
    MapSpace xy = chain_map_space(xw, yw, 0);
    if (xw.is_zero()) {
        std::vector<Matrix> blocks(static_cast<std::size_t>(hi - lo + 1), Matrix(x.field(), 0, 0));
        return IsoResult{IsoStatus::isomorphic, std::move(blocks)};
    }
    if (xy.space.dim() != chain_map_space(xw, xw, 0).space.dim() || xy.space.dim() != chain_map_space(yw, yw, 0).space.dim())
        return IsoResult{IsoStatus::not_isomorphic, std::nullopt};
    std::vector<std::vector<Matrix>> basis;
    for (const auto& f : xy.basis()) basis.push_back(f.components);
    return find_invertible(x.field(), basis, seed);
}

Classification classify(const ChainComplex& x) {
    Classification c{x.left_degree(), true, true};
    if (!c.left_degree) return c;
    for (int i = x.low(); i <= *c.left_degree; ++i) {
        if (x.dim(i) == 0 || is_projective(x.term(i))) continue;
        c.is_projective_complex = false;
        if (i != *c.left_degree) c.is_almost_projective = false;
    }
    return c;
}

namespace {

ProjectiveExtension extend_once(const ChainComplex& x) {
    Classification c = classify(x);
    if (!c.is_almost_projective) throw NotAlmostProjective("projective extension needs an almost projective complex");
    if (c.is_projective_complex) return ProjectiveExtension{x, ChainMap::identity(x)};
    const int m = *c.left_degree;
    const Field& f = x.field();
    ProjectiveCover pc = projective_cover(x.term(m));
    Submodule k = submodule(pc.cover, kernel_basis(pc.projection));

    int lo = x.low(), hi = std::max(x.high(), m + 1);
    std::vector<ModuleRep> terms;
    std::vector<Matrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        if (i < m)
            terms.push_back(x.term(i));
        else if (i == m)
            terms.push_back(pc.cover);
        else if (i == m + 1)
            terms.push_back(k.module);
        else
            terms.push_back(zero_module(x.algebra()));
    }
    auto dim_at = [&](int i) { return terms[static_cast<std::size_t>(i - lo)].dim; };
    for (int i = lo + 1; i <= hi; ++i) {
        if (i < m)
            diffs.push_back(x.diff(i));
        else if (i == m)
            diffs.push_back(x.diff(m) * pc.projection);
        else if (i == m + 1)
            diffs.push_back(k.inclusion);
        else
            diffs.push_back(Matrix(f, dim_at(i - 1), dim_at(i)));
    }
    ChainComplex ext(x.algebra(), lo, std::move(terms), std::move(diffs));
    ChainMap map{ext, x, 0, {}};
    for (int i = lo; i <= hi; ++i) {
        if (i < m)
            map.components.push_back(Matrix::identity(f, x.dim(i)));
        else if (i == m)
            map.components.push_back(pc.projection);
        else
            map.components.emplace_back(f, x.dim(i), ext.dim(i));
    }
    return ProjectiveExtension{std::move(ext), std::move(map)};
}

}  // namespace

ProjectiveExtension projective_extension(const ChainComplex& x, std::size_t r) {
    if (x.is_zero()) throw ValidationError("projective extension of the zero complex");
    ProjectiveExtension acc{x, ChainMap::identity(x)};
    for (std::size_t step = 0; step < r; ++step) {
        ProjectiveExtension next = extend_once(acc.complex);
        acc = ProjectiveExtension{next.complex, compose(acc.to_original, next.to_original)};
    }
    if (!is_chain_map(acc.to_original) || !is_quasi_isomorphism(acc.to_original))
        throw std::logic_error("projective extension map is not a quasi-isomorphism");
    return acc;
}

}  // namespace compvar

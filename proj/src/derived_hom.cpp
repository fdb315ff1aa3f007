#include "compvar/derived_hom.hpp"

#include "compvar/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace compvar {

std::size_t replacement_steps(const ChainComplex& x, const ChainComplex& y, int n) {
    Classification c = classify(x);
    if (!c.is_almost_projective) throw NotAlmostProjective("derived Hom needs an almost projective source complex");
    if (c.is_projective_complex) return 0;
    std::optional<int> ly = y.left_degree();
    if (!ly) return 0;
    const int m = *c.left_degree;
    // Components into Y[n] and homotopies vanish from degree ly + n + 1 on,
    // and the replacement agrees with a full resolution below its left end.
    const int t = std::max(*ly + n + 1, m);
    return static_cast<std::size_t>(t - m);
}

std::size_t derived_hom_dim_with_extra(const ChainComplex& x, const ChainComplex& y, int n, std::size_t extra) {
    if (!same_algebra(x.algebra(), y.algebra())) throw ValidationError("derived Hom: complexes over different algebras");
    std::size_t r = replacement_steps(x, y, n);
    if (x.is_zero() || y.is_zero()) return 0;
    if (classify(x).is_projective_complex) return homotopy_hom(x, y, n).hom_dim;
    r += extra;
    if (r == 0) return homotopy_hom(x, y, n).hom_dim;
    return homotopy_hom(projective_extension(x, r).complex, y, n).hom_dim;
}

std::size_t derived_hom_dim(const ChainComplex& x, const ChainComplex& y, int n) {
    return derived_hom_dim_with_extra(x, y, n, 0);
}

namespace {

/// Block-diagonal matrix of all components of an endomorphism.
Matrix total_matrix(const ChainMap& f) {
    const ChainComplex& x = f.source;
    Matrix out(x.field(), x.total_dim(), x.total_dim());
    std::size_t off = 0;
    for (int i = x.low(); i <= x.high(); ++i) {
        out.set_block(off, off, f.component(i));
        off += x.dim(i);
    }
    return out;
}

bool kills_homology(const ChainMap& h) {
    const ChainComplex& x = h.source;
    for (int i = x.low(); i <= x.high(); ++i) {
        HomologyGroup hg = homology(x, i);
        Subspace img = image(h.component(i), hg.cycles);
        if (!hg.boundaries.contains(img)) return false;
    }
    return true;
}

struct Restriction {
    ChainComplex complex;
    ChainMap inclusion;
    ChainMap projection;
};

/// The subcomplex cut out by the image of an idempotent chain endomorphism.
Restriction restrict_to_image(const ChainMap& e) {
    const ChainComplex& x = e.source;
    const Field& f = x.field();
    std::vector<ModuleRep> terms;
    std::vector<Matrix> incl;
    std::vector<BasisCoordinates> coords;
    for (int i = x.low(); i <= x.high(); ++i) {
        Submodule sub = submodule(x.term(i), column_space(e.component(i)));
        std::vector<Vector> cols;
        for (std::size_t c = 0; c < sub.inclusion.cols(); ++c) cols.push_back(sub.inclusion.col(c));
        coords.emplace_back(f, x.dim(i), cols);
        terms.push_back(sub.module);
        incl.push_back(sub.inclusion);
    }
    auto idx = [&](int i) { return static_cast<std::size_t>(i - x.low()); };
    auto to_coords = [&](int i, const Matrix& m) {
        // columns of m lie in the image at degree i
        std::vector<Vector> cols;
        for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(coords[idx(i)].coordinates(m.col(c)));
        return cols.empty() ? Matrix(f, terms[idx(i)].dim, 0) : Matrix::from_columns(f, terms[idx(i)].dim, cols);
    };
    std::vector<Matrix> diffs;
    for (int i = x.low() + 1; i <= x.high(); ++i) diffs.push_back(to_coords(i - 1, x.diff(i) * incl[idx(i)]));
    ChainComplex sub(x.algebra(), x.low(), terms, diffs);
    ChainMap inc{sub, x, 0, incl};
    ChainMap proj{x, sub, 0, {}};
    for (int i = x.low(); i <= x.high(); ++i) proj.components.push_back(to_coords(i, e.component(i)));
    return Restriction{std::move(sub), std::move(inc), std::move(proj)};
}

}  // namespace

ChainMap EndAlgebraPackage::element(const Vector& coords) const {
    if (coords.size() != basis_maps.size()) throw DimensionMismatch("end algebra: coordinate count mismatch");
    const Field& f = bhat->field();
    ChainMap out = ChainMap::zero(basis_maps.front().source, basis_maps.front().source, 0);
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!f.is_zero(coords[k])) out = out + scaled(basis_maps[k], coords[k]);
    return out;
}

Vector EndAlgebraPackage::coordinates(const ChainMap& f) const {
    std::vector<Vector> ops;
    for (const auto& b : basis_maps) ops.push_back(total_matrix(b).flatten());
    BasisCoordinates bc(bhat->field(), ops.front().size(), ops);
    return bc.coordinates(total_matrix(f).flatten());
}

EndAlgebraPackage end_algebra(const ChainComplex& x) {
    require_valid(x);
    if (x.is_zero()) throw ValidationError("endomorphism algebra of the zero complex");
    const Field& f = x.field();
    HomotopyHom hh = homotopy_hom(x, x, 0);
    const MapSpace& ms = hh.chain_maps;

    // identity first, then echelon basis vectors that enlarge the span
    std::vector<Vector> coords{ms.coordinates(ChainMap::identity(x))};
    Subspace spanned = Subspace::span(f, ms.layout.size(), coords);
    for (std::size_t k = 0; k < ms.space.dim() && spanned.dim() < ms.space.dim(); ++k) {
        Vector v = ms.space.basis_vector(k);
        if (spanned.contains(v)) continue;
        coords.push_back(v);
        spanned = sum(spanned, Subspace::span(f, ms.layout.size(), {v}));
    }

    EndAlgebraPackage pkg{nullptr, {}, Subspace(f, coords.size()), Subspace(f, coords.size())};
    std::vector<Matrix> ops;
    std::vector<std::string> labels{"id"};
    for (std::size_t k = 0; k < coords.size(); ++k) {
        pkg.basis_maps.push_back(ms.element(coords[k]));
        ops.push_back(total_matrix(pkg.basis_maps.back()));
        if (k > 0) labels.push_back("f" + std::to_string(k));
    }
    pkg.bhat = algebra_from_operators(f, ops, true, labels);

    BasisCoordinates bc(f, ms.layout.size(), coords);
    std::vector<Vector> h;
    for (const auto& v : hh.nullhomotopic.basis()) h.push_back(bc.coordinates(v));
    pkg.H = Subspace::span(f, coords.size(), h);
    if (!is_two_sided_ideal(*pkg.bhat, pkg.H)) throw std::logic_error("null-homotopic maps do not form an ideal");
    for (const auto& v : pkg.H.basis())
        if (!kills_homology(pkg.element(v))) throw std::logic_error("null-homotopic map acts on homology");
    pkg.radical = radical(*pkg.bhat);
    return pkg;
}

Vector lift_idempotent(const FDAlgebra& b, const Vector& ebar, const Subspace& n) {
    const Field& f = b.field();
    auto defect = [&](const Vector& e) {
        Vector sq = b.multiply(e, e);
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = f.sub(sq[i], e[i]);
        return sq;
    };
    if (!n.contains(defect(ebar))) throw ValidationError("element is not idempotent modulo the ideal");
    std::optional<std::size_t> nu = nilpotency_index(b, n);
    if (!nu) throw ValidationError("idempotent lifting needs a nilpotent ideal");
    std::size_t rounds = 1;
    for (std::size_t p = 1; p < *nu; p *= 2) ++rounds;  // ⌈log₂ ν⌉ + 1

    Vector e = ebar;
    const Scalar three = f.from_int(3), two = f.from_int(2);
    for (std::size_t r = 0; r < rounds; ++r) {
        Vector e2 = b.multiply(e, e);
        Vector e3 = b.multiply(e2, e);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = f.sub(f.mul(three, e2[i]), f.mul(two, e3[i]));
    }
    Vector diff(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) diff[i] = f.sub(e[i], ebar[i]);
    if (!is_zero_vector(f, defect(e)) || !n.contains(diff)) throw std::logic_error("idempotent lifting did not converge");
    return e;
}

AcyclicSplit acyclic_splitter(const ChainComplex& x) {
    EndAlgebraPackage pkg = end_algebra(x);
    const FDAlgebra& b = *pkg.bhat;
    const Field& f = b.field();
    const std::size_t s = b.dim();
    const Subspace& j = pkg.radical;
    Subspace ideal = sum(pkg.H, j);

    // f̄ ∈ H + J acting as a two-sided identity on (H + J)/J
    std::vector<Vector> rows;
    Vector rhs;
    for (const auto& u : ideal.basis()) {
        Vector target = j.reduce(u);
        for (int side = 0; side < 2; ++side) {
            std::vector<Vector> cols;
            for (const auto& g : ideal.basis()) cols.push_back(j.reduce(side == 0 ? b.multiply(g, u) : b.multiply(u, g)));
            for (std::size_t c = 0; c < s; ++c) {
                Vector row(ideal.dim());
                for (std::size_t k = 0; k < ideal.dim(); ++k) row[k] = cols[k][c];
                rows.push_back(std::move(row));
                rhs.push_back(target[c]);
            }
        }
    }
    Vector fbar = zero_vector(f, s);
    if (ideal.dim() > 0) {
        auto c = solve(Matrix::from_rows(f, ideal.dim(), rows), rhs);
        if (!c)
            throw std::logic_error("no idempotent generator for (H+J)/J: dim H+J = " + std::to_string(ideal.dim()) +
                                   ", dim J = " + std::to_string(j.dim()));
        fbar = ideal.combination(*c);
    }
    Vector fl = lift_idempotent(b, fbar, j);
    Vector e = b.one();
    for (std::size_t i = 0; i < s; ++i) e[i] = f.sub(e[i], fl[i]);

    AcyclicSplit out{e, pkg.element(e), x, x, ChainMap::identity(x), ChainMap::identity(x)};
    ChainMap fmap = pkg.element(fl);
    for (int i = x.low(); i <= x.high(); ++i)
        if (rank(out.e_map.component(i)) + rank(fmap.component(i)) != x.dim(i))
            throw std::logic_error("idempotent does not split degree " + std::to_string(i));
    Restriction re = restrict_to_image(out.e_map);
    Restriction rf = restrict_to_image(fmap);
    out.xe = re.complex;
    out.xcomp = rf.complex;
    out.inclusion = re.inclusion;
    out.projection = re.projection;
    require_valid(out.xe);
    require_valid(out.xcomp);
    if (!is_acyclic(out.xcomp)) throw std::logic_error("split-off summand is not acyclic");
    return out;
}

std::size_t semisplit_ext_dim(const ChainComplex& x, const ChainComplex& y) {
    if (!same_algebra(x.algebra(), y.algebra())) throw ValidationError("extensions of complexes over different algebras");
    return homotopy_hom(x, y, 1).hom_dim;
}

ChainMap verdier_xi(const ChainComplex& x, const ChainComplex& y, const std::vector<Matrix>& sigma) {
    if (!same_algebra(x.algebra(), y.algebra())) throw ValidationError("extension data over different algebras");
    if (sigma.size() != static_cast<std::size_t>(x.high() - x.low() + 1))
        throw DimensionMismatch("extension data must cover the source window");
    ChainMap xi{x, y, 1, sigma};
    for (int i = x.low(); i <= x.high(); ++i) {
        const Matrix& c = sigma[static_cast<std::size_t>(i - x.low())];
        if (c.rows() != y.dim(i - 1) || c.cols() != x.dim(i)) throw DimensionMismatch("extension block has the wrong shape");
    }
    // ∂^E squares to zero iff ∂^Y σ_i + σ_{i−1} ∂^X_i = 0, the chain condition into Y[1]
    if (!is_chain_map(xi)) throw ValidationError("extension data does not define a complex of modules");
    return xi;
}

}  // namespace compvar

#include "compvar/module_rep.hpp"

#include "compvar/errors.hpp"
#include "compvar/linear_system.hpp"

#include <random>
#include <sstream>

namespace compvar {

Matrix ModuleRep::action(const Vector& a) const {
    const Field& f = field();
    Matrix out(f, dim, dim);
    for (std::size_t j = 0; j < rho.size(); ++j)
        if (!f.is_zero(a.at(j))) out = out + rho[j].scaled(a[j]);
    return out;
}

std::string ModuleViolation::describe() const {
    if (identity) return "the identity of the algebra does not act as the identity matrix";
    std::ostringstream os;
    os << "module relation fails for the product a_" << j + 1 << " a_" << k + 1;
    return os.str();
}

std::optional<ModuleViolation> validate_module(const ModuleRep& m) {
    const FDAlgebra& a = *m.algebra;
    const Field& f = a.field();
    if (m.rho.size() != a.dim()) throw DimensionMismatch("module: expected one action matrix per basis element");
    for (const auto& r : m.rho)
        if (r.rows() != m.dim || r.cols() != m.dim || !(r.field() == f))
            throw DimensionMismatch("module: action matrix has the wrong shape or field");
    if (!(m.rho[0] == Matrix::identity(f, m.dim))) return ModuleViolation{true, 0, 0};
    for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (!(m.rho[j] * m.rho[k] == m.action(a.basis_product(j, k)))) return ModuleViolation{false, j, k};
    return std::nullopt;
}

ModuleRep make_module(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> rho) {
    ModuleRep m{std::move(algebra), dim, std::move(rho)};
    if (auto bad = validate_module(m)) throw ValidationError(bad->describe());
    return m;
}

ModuleRep zero_module(AlgebraPtr algebra) {
    std::vector<Matrix> rho(algebra->dim(), Matrix(algebra->field(), 0, 0));
    return ModuleRep{std::move(algebra), 0, std::move(rho)};
}

ModuleRep regular_module(AlgebraPtr algebra) {
    std::vector<Matrix> rho;
    for (std::size_t j = 0; j < algebra->dim(); ++j) rho.push_back(algebra->left_matrix(j));
    std::size_t d = algebra->dim();
    return ModuleRep{std::move(algebra), d, std::move(rho)};
}

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
    if (!same_algebra(a.algebra, b.algebra)) throw ValidationError("direct sum of modules over different algebras");
    std::vector<Matrix> rho;
    for (std::size_t j = 0; j < a.rho.size(); ++j) rho.push_back(block_diagonal(a.rho[j], b.rho[j]));
    return ModuleRep{a.algebra, a.dim + b.dim, std::move(rho)};
}

ModuleRep direct_sum(const std::vector<ModuleRep>& parts, AlgebraPtr algebra) {
    ModuleRep out = zero_module(std::move(algebra));
    for (const auto& p : parts) out = direct_sum(out, p);
    return out;
}

ModuleRep conjugate(const ModuleRep& m, const Matrix& g) {
    Matrix gi = inverse(g);
    std::vector<Matrix> rho;
    for (const auto& r : m.rho) rho.push_back(g * r * gi);
    return ModuleRep{m.algebra, m.dim, std::move(rho)};
}

Submodule submodule(const ModuleRep& m, const Subspace& u) {
    const Field& f = m.field();
    std::vector<Vector> basis = u.basis();
    std::vector<Matrix> rho;
    for (const auto& r : m.rho) {
        Matrix a(f, u.dim(), u.dim());
        for (std::size_t t = 0; t < basis.size(); ++t) {
            auto c = u.coordinates(r.apply(basis[t]));
            if (!c) throw ValidationError("submodule: subspace is not invariant under the action");
            for (std::size_t k = 0; k < c->size(); ++k) a(k, t) = (*c)[k];
        }
        rho.push_back(std::move(a));
    }
    Matrix inc = basis.empty() ? Matrix(f, m.dim, 0) : Matrix::from_columns(f, m.dim, basis);
    return Submodule{ModuleRep{m.algebra, u.dim(), std::move(rho)}, std::move(inc)};
}

QuotientModule quotient_module(const ModuleRep& m, const Subspace& u) {
    const Field& f = m.field();
    std::vector<std::size_t> keep = u.non_pivots();
    std::size_t q = keep.size();
    auto project = [&](const Vector& x) {
        Vector r = u.reduce(x);
        Vector out(q);
        for (std::size_t k = 0; k < q; ++k) out[k] = r[keep[k]];
        return out;
    };
    Matrix proj(f, q, m.dim);
    for (std::size_t c = 0; c < m.dim; ++c) {
        Vector e = zero_vector(f, m.dim);
        e[c] = 1;
        Vector p = project(e);
        for (std::size_t k = 0; k < q; ++k) proj(k, c) = p[k];
    }
    std::vector<Matrix> rho;
    for (const auto& r : m.rho) {
        Matrix a(f, q, q);
        for (std::size_t t = 0; t < q; ++t) {
            Vector p = project(r.col(keep[t]));
            for (std::size_t k = 0; k < q; ++k) a(k, t) = p[k];
        }
        rho.push_back(std::move(a));
    }
    ModuleRep out{m.algebra, q, std::move(rho)};
    if (validate_module(out)) throw ValidationError("quotient: subspace is not a submodule");
    return QuotientModule{std::move(out), std::move(proj)};
}

Subspace hom_space(const ModuleRep& m, const ModuleRep& n) {
    if (!same_algebra(m.algebra, n.algebra)) throw ValidationError("hom space of modules over different algebras");
    BlockLayout layout;
    std::size_t fb = layout.add(n.dim, m.dim);
    LinearSystem sys(m.field(), layout);
    for (std::size_t j = 1; j < m.rho.size(); ++j) {
        std::size_t eq = sys.equation(n.dim, m.dim);
        sys.add_term(eq, fb, nullptr, &m.rho[j]);
        sys.add_term(eq, fb, &n.rho[j], nullptr, -1);
    }
    return sys.solutions();
}

std::vector<Matrix> hom_basis(const ModuleRep& m, const ModuleRep& n) {
    std::vector<Matrix> out;
    for (const auto& v : hom_space(m, n).basis()) out.push_back(Matrix::from_flat(m.field(), n.dim, m.dim, v));
    return out;
}

std::string to_string(IsoStatus s) {
    switch (s) {
    case IsoStatus::isomorphic:
        return "isomorphic";
    case IsoStatus::not_isomorphic:
        return "not isomorphic";
    case IsoStatus::probably_not_isomorphic:
        return "probably not isomorphic";
    }
    return "?";
}

namespace {

std::vector<Matrix> combine(const Field& f, const std::vector<std::vector<Matrix>>& basis, const Vector& c) {
    std::vector<Matrix> out;
    for (const auto& b : basis.front()) out.emplace_back(f, b.rows(), b.cols());
    for (std::size_t t = 0; t < basis.size(); ++t) {
        if (f.is_zero(c[t])) continue;
        for (std::size_t b = 0; b < out.size(); ++b) out[b] = out[b] + basis[t][b].scaled(c[t]);
    }
    return out;
}

bool all_invertible(const std::vector<Matrix>& blocks) {
    for (const auto& b : blocks)
        if (!is_invertible(b)) return false;
    return true;
}

}  // namespace

IsoResult find_invertible(const Field& f, const std::vector<std::vector<Matrix>>& basis, std::uint64_t seed) {
    if (basis.empty()) return IsoResult{IsoStatus::not_isomorphic, std::nullopt};
    for (const auto& b : basis.front())
        if (!b.is_square()) return IsoResult{IsoStatus::not_isomorphic, std::nullopt};
    const std::size_t k = basis.size();
    std::mt19937_64 rng(seed);
    auto found = [&](const Vector& c) -> std::optional<IsoResult> {
        auto blocks = combine(f, basis, c);
        if (all_invertible(blocks)) return IsoResult{IsoStatus::isomorphic, std::move(blocks)};
        return std::nullopt;
    };

    if (f.is_prime()) {
        const std::uint64_t q = f.order();
        std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
        for (int trial = 0; trial < 64; ++trial) {
            Vector c(k);
            for (auto& x : c) x = Scalar(static_cast<unsigned long>(dist(rng)));
            if (auto r = found(c)) return *r;
        }
        // exhaustive when q^k ≤ 10^6
        std::uint64_t total = 1;
        for (std::size_t t = 0; t < k && total <= 1000000; ++t) total *= q;
        if (total > 1000000) return IsoResult{IsoStatus::probably_not_isomorphic, std::nullopt};
        std::vector<std::uint64_t> digits(k, 0);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Vector c(k);
            for (std::size_t t = 0; t < k; ++t) c[t] = Scalar(static_cast<unsigned long>(digits[t]));
            if (auto r = found(c)) return *r;
            for (std::size_t t = 0; t < k; ++t) {
                if (++digits[t] < q) break;
                digits[t] = 0;
            }
        }
        return IsoResult{IsoStatus::not_isomorphic, std::nullopt};
    }

    for (int round = 0; round < 8; ++round) {
        long bound = 1L << (round + 1);
        std::uniform_int_distribution<long> dist(-bound, bound);
        for (int trial = 0; trial < 4; ++trial) {
            Vector c(k);
            for (auto& x : c) x = dist(rng);
            if (auto r = found(c)) return *r;
        }
    }
    return IsoResult{IsoStatus::probably_not_isomorphic, std::nullopt};
}

IsoResult is_isomorphic_modules(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed) {
    if (!same_algebra(m.algebra, n.algebra)) throw ValidationError("isomorphism test across different algebras");
    if (m.dim != n.dim) return IsoResult{IsoStatus::not_isomorphic, std::nullopt};
    if (m.dim == 0) return IsoResult{IsoStatus::isomorphic, std::vector<Matrix>{Matrix(m.field(), 0, 0)}};
    std::size_t hmn = hom_space(m, n).dim();
    if (hmn != hom_space(m, m).dim() || hmn != hom_space(n, n).dim())
        return IsoResult{IsoStatus::not_isomorphic, std::nullopt};
    std::vector<std::vector<Matrix>> basis;
    for (auto& h : hom_basis(m, n)) basis.push_back({std::move(h)});
    return find_invertible(m.field(), basis, seed);
}

TopInfo top_and_radical(const ModuleRep& m) {
    const FDAlgebra& a = *m.algebra;
    const Field& f = a.field();
    Subspace rad_a = radical(a);
    std::vector<Vector> gens;
    for (const auto& r : rad_a.basis()) {
        Matrix act = m.action(r);
        for (std::size_t c = 0; c < m.dim; ++c) gens.push_back(act.col(c));
    }
    TopInfo info{Subspace::span(f, m.dim, gens), 0, {}};
    info.top_dim = m.dim - info.radical.dim();
    if (a.idempotents()) {
        for (const auto& e : *a.idempotents()) {
            Subspace w = column_space(m.action(e));
            info.multiplicities.push_back(sum(w, info.radical).dim() - info.radical.dim());
        }
    }
    return info;
}

std::vector<ProjectiveData> projective_data(AlgebraPtr algebra) {
    const FDAlgebra& a = *algebra;
    if (!a.idempotents()) throw MissingIdempotents("algebra has no complete set of primitive idempotents");
    const Field& f = a.field();
    std::vector<ProjectiveData> out;
    for (const auto& e : *a.idempotents()) {
        Subspace u = column_space(a.right_matrix(e));
        std::vector<Vector> basis = u.basis();
        std::vector<Matrix> rho;
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Matrix act(f, u.dim(), u.dim());
            for (std::size_t t = 0; t < basis.size(); ++t) {
                Vector c = *u.coordinates(a.multiply(a.unit(j), basis[t]));
                for (std::size_t k = 0; k < c.size(); ++k) act(k, t) = c[k];
            }
            rho.push_back(std::move(act));
        }
        Vector gen = *u.coordinates(e);
        out.push_back(ProjectiveData{ModuleRep{algebra, u.dim(), std::move(rho)}, std::move(basis), std::move(gen)});
    }
    return out;
}

std::vector<ModuleRep> indecomposable_projectives(AlgebraPtr algebra) {
    std::vector<ModuleRep> out;
    for (auto& p : projective_data(std::move(algebra))) out.push_back(std::move(p.module));
    return out;
}

std::vector<ModuleRep> simple_modules(AlgebraPtr algebra) {
    const FDAlgebra& a = *algebra;
    if (!a.idempotents()) throw MissingIdempotents("algebra has no complete set of primitive idempotents");
    const Field& f = a.field();
    std::vector<Vector> basis = *a.idempotents();
    std::size_t n = basis.size();
    for (const auto& r : radical(a).basis()) basis.push_back(r);
    if (basis.size() != a.dim()) throw Error(ErrorKind::unsupported, "simple modules: algebra is not basic");
    BasisCoordinates coords(f, a.dim(), basis);
    std::vector<ModuleRep> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Matrix> rho;
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Matrix one(f, 1, 1);
            one(0, 0) = coords.coordinates(a.unit(j))[i];
            rho.push_back(std::move(one));
        }
        out.push_back(ModuleRep{algebra, 1, std::move(rho)});
    }
    return out;
}

ProjectiveCover projective_cover(const ModuleRep& m) {
    const Field& f = m.field();
    auto projectives = projective_data(m.algebra);
    TopInfo top = top_and_radical(m);
    const auto& idem = *m.algebra->idempotents();

    std::vector<ModuleRep> parts;
    std::vector<Vector> columns;
    Subspace span_so_far = top.radical;
    for (std::size_t i = 0; i < idem.size(); ++i) {
        Subspace w = column_space(m.action(idem[i]));
        for (const auto& x : w.basis()) {
            if (span_so_far.contains(x)) continue;
            span_so_far = sum(span_so_far, Subspace::span(f, m.dim, {x}));
            parts.push_back(projectives[i].module);
            for (const auto& b : projectives[i].basis_in_algebra) columns.push_back(m.action(b).apply(x));
        }
    }
    ModuleRep p = direct_sum(parts, m.algebra);
    Matrix pi = columns.empty() ? Matrix(f, m.dim, 0) : Matrix::from_columns(f, m.dim, columns);
    if (rank(pi) != m.dim) throw ValidationError("projective cover: projection is not surjective");
    if (!top_and_radical(p).radical.contains(kernel_basis(pi)))
        throw ValidationError("projective cover: kernel is not superfluous");
    return ProjectiveCover{std::move(p), std::move(pi), top.multiplicities};
}

bool is_projective(const ModuleRep& m) {
    if (m.dim == 0) return true;
    ProjectiveCover pc = projective_cover(m);
    auto sections = hom_basis(m, pc.cover);
    if (sections.empty()) return false;
    std::vector<Vector> cols;
    for (const auto& s : sections) cols.push_back((pc.projection * s).flatten());
    Matrix sys = Matrix::from_columns(m.field(), m.dim * m.dim, cols);
    return solve(sys, Matrix::identity(m.field(), m.dim).flatten()).has_value();
}

std::size_t ext1_dim_oracle(const ModuleRep& m, const ModuleRep& n) {
    if (!same_algebra(m.algebra, n.algebra)) throw ValidationError("Ext of modules over different algebras");
    if (m.dim == 0) return 0;
    ProjectiveCover pc = projective_cover(m);
    Submodule k = submodule(pc.cover, kernel_basis(pc.projection));
    std::size_t hom_k = hom_space(k.module, n).dim();
    std::vector<Vector> restricted;
    for (const auto& h : hom_basis(pc.cover, n)) restricted.push_back((h * k.inclusion).flatten());
    std::size_t image = Subspace::span(m.field(), n.dim * k.module.dim, restricted).dim();
    return hom_k - image;
}

AlgebraPtr endomorphism_algebra_op(const ModuleRep& m) {
    const Field& f = m.field();
    std::vector<Matrix> ops{Matrix::identity(f, m.dim)};
    Subspace seen = Subspace::span(f, m.dim * m.dim, {ops[0].flatten()});
    for (auto& h : hom_basis(m, m)) {
        if (seen.contains(h.flatten())) continue;
        seen = sum(seen, Subspace::span(f, m.dim * m.dim, {h.flatten()}));
        ops.push_back(std::move(h));
    }
    return algebra_from_operators(f, ops, true);
}

}  // namespace compvar

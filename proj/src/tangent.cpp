#include "compvar/tangent.hpp"

#include "compvar/derived_hom.hpp"
#include "compvar/errors.hpp"

#include <stdexcept>

namespace compvar {

namespace {

void require_point(const ChainComplex& x) {
    if (!x.is_point()) throw ValidationError("tangent computations need a complex in degrees m..0");
    require_valid(x);
}

std::size_t pos(int m, int degree) { return static_cast<std::size_t>(m - degree); }

}  // namespace

TangentCoordinates::TangentCoordinates(const ChainComplex& x)
    : field_(x.field()), m_(x.high()), s_(x.algebra()->dim()) {
    for (int i = m_; i >= 0; --i)
        for (std::size_t j = 0; j < s_; ++j) w_.push_back(layout_.add(x.dim(i), x.dim(i)));
    for (int i = m_; i >= 1; --i) v_.push_back(layout_.add(x.dim(i - 1), x.dim(i)));
}

std::size_t TangentCoordinates::w_block(int degree, std::size_t j) const {
    return w_.at(pos(m_, degree) * s_ + j);
}

std::size_t TangentCoordinates::v_block(int degree) const {
    if (degree < 1) throw std::out_of_range("no differential below degree 1");
    return v_.at(pos(m_, degree));
}

TangentVector TangentCoordinates::unpack(const Vector& v) const {
    TangentVector t;
    for (int i = m_; i >= 0; --i) {
        std::vector<Matrix> ds;
        for (std::size_t j = 0; j < s_; ++j) ds.push_back(layout_.extract(field_, v, w_block(i, j)));
        t.deltas.push_back(std::move(ds));
    }
    for (int i = m_; i >= 1; --i) t.sigmas.push_back(layout_.extract(field_, v, v_block(i)));
    return t;
}

Vector TangentCoordinates::pack(const TangentVector& t) const {
    if (t.deltas.size() != static_cast<std::size_t>(m_ + 1) || t.sigmas.size() != static_cast<std::size_t>(m_))
        throw DimensionMismatch("tangent vector has the wrong number of degrees");
    Vector v = zero_vector(field_, layout_.size());
    for (int i = m_; i >= 0; --i) {
        const auto& ds = t.deltas[pos(m_, i)];
        if (ds.size() != s_) throw DimensionMismatch("tangent vector needs one derivation matrix per basis element");
        for (std::size_t j = 0; j < s_; ++j) layout_.insert(v, w_block(i, j), ds[j]);
    }
    for (int i = m_; i >= 1; --i) layout_.insert(v, v_block(i), t.sigmas[pos(m_, i)]);
    return v;
}

std::vector<TangentVector> TangentSpace::basis() const {
    std::vector<TangentVector> out;
    for (const auto& v : space.basis()) out.push_back(coords.unpack(v));
    return out;
}

TangentSpace tangent_space_basis(const ChainComplex& x) {
    require_point(x);
    TangentCoordinates tc(x);
    const FDAlgebra& a = *x.algebra();
    const Field& f = x.field();
    const std::size_t s = a.dim();
    const int m = tc.top();
    LinearSystem sys(f, tc.layout());
    const Scalar minus_one = f.neg(f.one());

    for (int i = m; i >= 0; --i) {
        const std::size_t d = x.dim(i);
        if (d == 0) continue;
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = 0; k < s; ++k) {
                std::size_t eq = sys.equation(d, d);
                sys.add_term(eq, tc.w_block(i, j), nullptr, &x.rho(i, k));
                sys.add_term(eq, tc.w_block(i, k), &x.rho(i, j), nullptr);
                for (std::size_t l = 0; l < s; ++l) {
                    const Scalar& c = a.constant(j, k, l);
                    if (!f.is_zero(c)) sys.add_term(eq, tc.w_block(i, l), nullptr, nullptr, f.neg(c));
                }
            }
    }
    for (int i = m; i >= 1; --i) {
        if (x.dim(i) == 0 || x.dim(i - 1) == 0) continue;
        const Matrix d = x.diff(i);
        for (std::size_t j = 0; j < s; ++j) {
            std::size_t eq = sys.equation(x.dim(i - 1), x.dim(i));
            sys.add_term(eq, tc.v_block(i), nullptr, &x.rho(i, j));
            sys.add_term(eq, tc.w_block(i, j), &d, nullptr);
            sys.add_term(eq, tc.w_block(i - 1, j), nullptr, &d, minus_one);
            sys.add_term(eq, tc.v_block(i), &x.rho(i - 1, j), nullptr, minus_one);
        }
    }
    for (int i = m; i >= 2; --i) {
        if (x.dim(i) == 0 || x.dim(i - 2) == 0) continue;
        const Matrix di = x.diff(i), dl = x.diff(i - 1);
        std::size_t eq = sys.equation(x.dim(i - 2), x.dim(i));
        sys.add_term(eq, tc.v_block(i - 1), nullptr, &di);
        sys.add_term(eq, tc.v_block(i), &dl, nullptr);
    }
    return TangentSpace{tc, sys.solutions()};
}

bool is_tangent_vector(const ChainComplex& x, const TangentVector& t) {
    require_point(x);
    const FDAlgebra& a = *x.algebra();
    const Field& f = x.field();
    const std::size_t s = a.dim();
    const int m = x.high();
    if (t.deltas.size() != static_cast<std::size_t>(m + 1) || t.sigmas.size() != static_cast<std::size_t>(m))
        return false;
    auto delta = [&](int i, std::size_t j) -> Matrix {
        if (i < 0 || i > m) return Matrix(f, 0, 0);
        return t.deltas[pos(m, i)].at(j);
    };
    auto sigma = [&](int i) -> Matrix {
        if (i < 1 || i > m) return Matrix(f, x.dim(i - 1), x.dim(i));
        return t.sigmas[pos(m, i)];
    };
    for (int i = m; i >= 0; --i) {
        if (t.deltas[pos(m, i)].size() != s) return false;
        for (std::size_t j = 0; j < s; ++j) {
            const Matrix& dj = t.deltas[pos(m, i)][j];
            if (dj.rows() != x.dim(i) || dj.cols() != x.dim(i)) return false;
        }
    }
    for (int i = m; i >= 1; --i)
        if (sigma(i).rows() != x.dim(i - 1) || sigma(i).cols() != x.dim(i)) return false;

    for (int i = m; i >= 0; --i) {
        if (x.dim(i) == 0) continue;
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = 0; k < s; ++k) {
                Matrix lhs = delta(i, j) * x.rho(i, k) + x.rho(i, j) * delta(i, k);
                Matrix rhs(f, x.dim(i), x.dim(i));
                for (std::size_t l = 0; l < s; ++l)
                    if (!f.is_zero(a.constant(j, k, l))) rhs = rhs + delta(i, l).scaled(a.constant(j, k, l));
                if (!(lhs == rhs)) return false;
            }
    }
    for (int i = m; i >= 1; --i) {
        if (x.dim(i) == 0 || x.dim(i - 1) == 0) continue;
        for (std::size_t j = 0; j < s; ++j) {
            Matrix lhs = sigma(i) * x.rho(i, j) + x.diff(i) * delta(i, j);
            Matrix rhs = x.rho(i - 1, j) * sigma(i) + delta(i - 1, j) * x.diff(i);
            if (!(lhs == rhs)) return false;
        }
    }
    for (int i = m; i >= 2; --i)
        if (!(sigma(i - 1) * x.diff(i) + x.diff(i - 1) * sigma(i)).is_zero()) return false;
    return true;
}

TangentVector orbit_tangent_vector(const ChainComplex& x, const std::vector<Matrix>& t_desc) {
    const int m = x.high();
    const std::size_t s = x.algebra()->dim();
    if (t_desc.size() != static_cast<std::size_t>(m + 1)) throw DimensionMismatch("Lie element needs one matrix per degree");
    auto t = [&](int i) -> const Matrix& { return t_desc[pos(m, i)]; };
    TangentVector out;
    for (int i = m; i >= 0; --i) {
        if (t(i).rows() != x.dim(i) || t(i).cols() != x.dim(i)) throw DimensionMismatch("Lie element block has the wrong size");
        std::vector<Matrix> ds;
        for (std::size_t j = 0; j < s; ++j) ds.push_back(t(i) * x.rho(i, j) - x.rho(i, j) * t(i));
        out.deltas.push_back(std::move(ds));
    }
    for (int i = m; i >= 1; --i) out.sigmas.push_back(t(i - 1) * x.diff(i) - x.diff(i) * t(i));
    return out;
}

OrbitTangent orbit_tangent_basis(const ChainComplex& x) {
    require_point(x);
    const Field& f = x.field();
    const int m = x.high();
    TangentCoordinates tc(x);
    BlockLayout lie;
    for (int i = m; i >= 0; --i) lie.add(x.dim(i), x.dim(i));

    std::vector<Vector> images;
    for (std::size_t c = 0; c < lie.size(); ++c) {
        Vector e = zero_vector(f, lie.size());
        e[c] = f.one();
        images.push_back(tc.pack(orbit_tangent_vector(x, lie.unpack(f, e))));
    }
    Matrix map = images.empty() ? Matrix(f, tc.size(), 0) : Matrix::from_columns(f, tc.size(), images);
    Subspace img = column_space(map);
    std::size_t stab = lie.size() - img.dim();

    TangentSpace ts = tangent_space_basis(x);
    if (!ts.space.contains(img)) throw std::logic_error("orbit tangent vectors fail the tangent equations");
    return OrbitTangent{tc, img, stab};
}

std::size_t quotient_dim(const ChainComplex& x) {
    return tangent_space_basis(x).space.dim() - orbit_tangent_basis(x).space.dim();
}

ChiResult chi(const ChainComplex& x, const TangentVector& v) {
    if (!is_tangent_vector(x, v)) throw ValidationError("chi: not a tangent vector at this point");
    const Field& f = x.field();
    const std::size_t s = x.algebra()->dim();
    const int m = x.high();
    std::vector<ModuleRep> mods;
    for (int i = m; i >= 0; --i) {
        const std::size_t d = x.dim(i);
        ModuleRep z{x.algebra(), 2 * d, {}};
        for (std::size_t j = 0; j < s; ++j)
            z.rho.push_back(block2x2(x.rho(i, j), v.deltas[pos(m, i)][j], Matrix(f, d, d), x.rho(i, j)));
        mods.push_back(std::move(z));
    }
    std::vector<Matrix> diffs;
    for (int i = m; i >= 1; --i) {
        Matrix d = x.diff(i);
        diffs.push_back(block2x2(d, v.sigmas[pos(m, i)], Matrix(f, d.rows(), d.cols()), d));
    }
    ChainComplex z = ChainComplex::from_point(x.algebra(), std::move(mods), std::move(diffs));
    if (auto bad = validate_point(z)) throw std::logic_error("chi: extension fails " + bad->describe());

    ChainMap inc{x, z, 0, {}}, proj{z, x, 0, {}};
    for (int i = 0; i <= m; ++i) {
        const std::size_t d = x.dim(i);
        inc.components.push_back(vstack(Matrix::identity(f, d), Matrix(f, d, d)));
        proj.components.push_back(hstack(Matrix(f, d, d), Matrix::identity(f, d)));
    }
    if (!is_chain_map(inc) || !is_chain_map(proj)) throw std::logic_error("chi: structure maps are not chain maps");
    for (int i = 0; i <= m; ++i) {
        const std::size_t d = x.dim(i);
        Matrix pi = proj.component(i) * inc.component(i);
        if (!pi.is_zero() || rank(inc.component(i)) != d || rank(proj.component(i)) != d)
            throw std::logic_error("chi: sequence is not exact in degree " + std::to_string(i));
    }
    return ChiResult{std::move(z), std::move(inc), std::move(proj)};
}

std::optional<ChainMap> splitting_section(const ChiResult& c) {
    const ChainComplex& x = c.projection.target;
    const Field& f = x.field();
    MapSpace ms = chain_map_space(x, c.z, 0);
    // π ∘ s = id, stacked over all degrees, in the coefficients of ms's basis
    std::vector<ChainMap> basis = ms.basis();
    auto stacked = [&](const ChainMap& s) {
        Vector out;
        for (int i = x.low(); i <= x.high(); ++i) {
            Matrix comp = c.projection.component(i) * s.component(i);
            out.insert(out.end(), comp.flatten().begin(), comp.flatten().end());
        }
        return out;
    };
    Vector target;
    for (int i = x.low(); i <= x.high(); ++i) {
        Matrix id = Matrix::identity(f, x.dim(i));
        target.insert(target.end(), id.flatten().begin(), id.flatten().end());
    }
    if (basis.empty()) {
        if (!is_zero_vector(f, target)) return std::nullopt;
        return ChainMap::zero(x, c.z, 0);
    }
    std::vector<Vector> cols;
    for (const auto& b : basis) cols.push_back(stacked(b));
    auto coeffs = solve(Matrix::from_columns(f, target.size(), cols), target);
    if (!coeffs) return std::nullopt;
    ChainMap s = ChainMap::zero(x, c.z, 0);
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!f.is_zero((*coeffs)[k])) s = s + scaled(basis[k], (*coeffs)[k]);
    return s;
}

EtaResult eta(const ChainComplex& x, const TangentVector& v) {
    require_point(x);
    if (!classify(x).is_projective_complex) throw NotProjectiveComplex("eta is defined for complexes of projective modules");
    if (!is_tangent_vector(x, v)) throw ValidationError("eta: not a tangent vector at this point");
    const Field& f = x.field();
    const std::size_t s = x.algebra()->dim();
    const int m = x.high();

    EtaResult out{{}, ChainMap::zero(x, x, 1)};
    for (int i = m; i >= 0; --i) {
        const std::size_t d = x.dim(i);
        BlockLayout lay;
        std::size_t t = lay.add(d, d);
        LinearSystem sys(f, lay);
        const Scalar minus_one = f.neg(f.one());
        for (std::size_t j = 0; j < s && d > 0; ++j) {
            std::size_t eq = sys.equation(d, d);
            sys.add_term(eq, t, nullptr, &x.rho(i, j));
            sys.add_term(eq, t, &x.rho(i, j), nullptr, minus_one);
            sys.add_rhs(eq, v.deltas[pos(m, i)][j]);
        }
        auto sol = sys.particular_solution();
        if (!sol) throw std::logic_error("eta: derivation in degree " + std::to_string(i) + " is not inner");
        out.t_desc.push_back(lay.extract(f, *sol, t));
    }
    auto t = [&](int i) -> const Matrix& { return out.t_desc[pos(m, i)]; };
    for (int i = 1; i <= m; ++i) {
        Matrix corrected = v.sigmas[pos(m, i)] - (t(i - 1) * x.diff(i) - x.diff(i) * t(i));
        out.map.components[static_cast<std::size_t>(i - x.low())] = corrected;
    }
    if (!is_chain_map(out.map)) throw std::logic_error("eta: corrected deformation is not a chain map");
    return out;
}

EtaKernel eta_kernel(const ChainComplex& x) {
    TangentSpace ts = tangent_space_basis(x);
    HomotopyHom hh = homotopy_hom(x, x, 1);
    const Field& f = x.field();
    const std::size_t n = hh.chain_maps.layout.size();
    std::vector<Vector> cols;
    for (const auto& b : ts.basis()) cols.push_back(hh.chain_maps.coordinates(eta(x, b).map));
    std::vector<Vector> null = hh.nullhomotopic.basis();
    std::vector<Vector> all = cols;
    all.insert(all.end(), null.begin(), null.end());

    EtaKernel out{Subspace(f, ts.coords.size()), 0, hh.hom_dim};
    if (all.empty()) return out;
    Matrix en = Matrix::from_columns(f, n, all);
    std::vector<Vector> ker;
    for (const auto& k : kernel_basis(en).basis()) {
        Vector c(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(cols.size()));
        ker.push_back(ts.space.combination(c));
    }
    out.kernel = Subspace::span(f, ts.coords.size(), ker);
    out.rank = rank(en) - hh.nullhomotopic.dim();
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::equality: return "equality";
        case Verdict::embedding: return "embedding";
        case Verdict::violation: return "violation";
    }
    return "violation";
}

TangentComparison compare_tangent_with_derived_hom(const ChainComplex& x) {
    require_point(x);
    Classification c = classify(x);
    if (!c.is_almost_projective) throw NotAlmostProjective("the tangent comparison needs an almost projective complex");
    TangentSpace ts = tangent_space_basis(x);
    OrbitTangent ot = orbit_tangent_basis(x);
    TangentComparison r{};
    r.tangent_dim = ts.space.dim();
    r.orbit_dim = ot.space.dim();
    r.stabilizer_dim = ot.stabilizer_lie_dim;
    r.quotient = r.tangent_dim - r.orbit_dim;
    r.derived_hom_dim = derived_hom_dim(x, x, 1);
    r.projective = c.is_projective_complex;
    if (r.projective)
        r.verdict = r.quotient == r.derived_hom_dim ? Verdict::equality : Verdict::violation;
    else
        r.verdict = r.quotient <= r.derived_hom_dim ? Verdict::embedding : Verdict::violation;
    return r;
}

bool is_rigid(const ChainComplex& x) {
    if (!classify(x).is_almost_projective) throw NotAlmostProjective("rigidity is decided for almost projective complexes");
    return derived_hom_dim(x, x, 1) == 0;
}

RigidityCheck open_orbit_check(const ChainComplex& x) {
    RigidityCheck r{is_rigid(x), quotient_dim(x), true};
    r.ok = !r.rigid || r.quotient == 0;
    return r;
}

VoigtReport voigt_check(const ModuleRep& m, int degree) {
    VoigtReport r{quotient_dim(stalk(m, degree)), ext1_dim_oracle(m, m), false, false};
    r.ok = r.quotient <= r.ext1;
    r.equality = r.quotient == r.ext1;
    return r;
}

}  // namespace compvar

#include "compvar/algebra.hpp"

#include "compvar/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace compvar {

FDAlgebra::FDAlgebra(Field field, std::size_t dim, std::vector<std::string> labels)
    : field_(field), dim_(dim), labels_(std::move(labels)), c_(dim * dim * dim, Scalar(0)) {
    if (dim == 0) throw ValidationError("algebra dimension must be positive");
    if (labels_.empty()) {
        labels_.push_back("1");
        for (std::size_t j = 1; j < dim; ++j) labels_.push_back("a" + std::to_string(j + 1));
    }
    if (labels_.size() != dim) throw DimensionMismatch("algebra: label count differs from dimension");
}

Vector FDAlgebra::basis_product(std::size_t j, std::size_t k) const {
    Vector out(dim_);
    for (std::size_t l = 0; l < dim_; ++l) out[l] = constant(j, k, l);
    return out;
}

Vector FDAlgebra::multiply(const Vector& x, const Vector& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("algebra: element length mismatch");
    Vector out = zero_vector(field_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        if (field_.is_zero(x[j])) continue;
        for (std::size_t k = 0; k < dim_; ++k) {
            if (field_.is_zero(y[k])) continue;
            Scalar xy = field_.mul(x[j], y[k]);
            for (std::size_t l = 0; l < dim_; ++l) {
                const Scalar& c = constant(j, k, l);
                if (!field_.is_zero(c)) out[l] = field_.add(out[l], field_.mul(xy, c));
            }
        }
    }
    return out;
}

Vector FDAlgebra::unit(std::size_t j) const {
    Vector v = zero_vector(field_, dim_);
    v.at(j) = 1;
    return v;
}

Matrix FDAlgebra::left_matrix(std::size_t j) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t k = 0; k < dim_; ++k)
        for (std::size_t l = 0; l < dim_; ++l) m(l, k) = constant(j, k, l);
    return m;
}

Matrix FDAlgebra::right_matrix(std::size_t j) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t k = 0; k < dim_; ++k)
        for (std::size_t l = 0; l < dim_; ++l) m(l, k) = constant(k, j, l);
    return m;
}

Matrix FDAlgebra::left_matrix(const Vector& a) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        if (!field_.is_zero(a[j])) m = m + left_matrix(j).scaled(a[j]);
    return m;
}

Matrix FDAlgebra::right_matrix(const Vector& a) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        if (!field_.is_zero(a[j])) m = m + right_matrix(j).scaled(a[j]);
    return m;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (!a || !b) return false;
    return a == b || *a == *b;
}

std::string AlgebraViolation::describe() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::identity:
        os << "identity law fails: a_1 a_" << k + 1 << " or a_" << k + 1 << " a_1 has wrong coefficient at a_"
           << l + 1;
        break;
    case Kind::associativity:
        os << "associativity fails: (a_" << j + 1 << " a_" << k + 1 << ") a_" << l + 1 << " and a_" << j + 1
           << " (a_" << k + 1 << " a_" << l + 1 << ") differ at a_" << v + 1;
        break;
    case Kind::idempotents:
        os << "idempotents " << j + 1 << ", " << k + 1 << " are not complete and orthogonal";
        break;
    }
    return os.str();
}

std::optional<AlgebraViolation> validate_algebra(const FDAlgebra& a) {
    const Field& f = a.field();
    std::size_t s = a.dim();
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t l = 0; l < s; ++l) {
            Scalar want = k == l ? 1 : 0;
            if (a.constant(0, k, l) != want || a.constant(k, 0, l) != want)
                return AlgebraViolation{AlgebraViolation::Kind::identity, 0, k, l, 0};
        }
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t k = 0; k < s; ++k)
            for (std::size_t l = 0; l < s; ++l)
                for (std::size_t v = 0; v < s; ++v) {
                    Scalar lhs = 0, rhs = 0;
                    for (std::size_t u = 0; u < s; ++u) {
                        lhs = f.add(lhs, f.mul(a.constant(j, k, u), a.constant(u, l, v)));
                        rhs = f.add(rhs, f.mul(a.constant(k, l, u), a.constant(j, u, v)));
                    }
                    if (lhs != rhs) return AlgebraViolation{AlgebraViolation::Kind::associativity, j, k, l, v};
                }
    if (const auto& es = a.idempotents()) {
        Vector total = zero_vector(f, s);
        for (std::size_t i = 0; i < es->size(); ++i) {
            for (std::size_t j = 0; j < es->size(); ++j) {
                Vector p = a.multiply((*es)[i], (*es)[j]);
                Vector want = i == j ? (*es)[i] : zero_vector(f, s);
                if (p != want) return AlgebraViolation{AlgebraViolation::Kind::idempotents, i, j, 0, 0};
            }
            for (std::size_t l = 0; l < s; ++l) total[l] = f.add(total[l], (*es)[i][l]);
        }
        if (total != a.one()) return AlgebraViolation{AlgebraViolation::Kind::idempotents, 0, 0, 0, 0};
    }
    return std::nullopt;
}

AlgebraPtr make_algebra(FDAlgebra a) {
    if (auto bad = validate_algebra(a)) throw ValidationError(bad->describe());
    return std::make_shared<const FDAlgebra>(std::move(a));
}

// ---------------------------------------------------------------------------
// Quiver algebras

std::vector<std::size_t> QuiverPresentation::parse_path(const std::string& text) const {
    auto find = [&](const std::string& label) {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].label == label) return i;
        throw ParseError("unknown arrow '" + label + "' in path '" + text + "'");
    };
    std::vector<std::string> factors;
    if (text.find('*') != std::string::npos) {
        std::string cur;
        for (char c : text) {
            if (c == '*') {
                factors.push_back(cur);
                cur.clear();
            } else if (c != ' ') {
                cur.push_back(c);
            }
        }
        factors.push_back(cur);
    } else {
        for (char c : text)
            if (c != ' ') factors.emplace_back(1, c);
    }
    // written as a product, so the rightmost factor is walked first
    std::vector<std::size_t> walk;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) walk.push_back(find(*it));
    return walk;
}

std::string QuiverPresentation::path_label(const std::vector<std::size_t>& walk) const {
    std::string out;
    for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
        if (!out.empty()) out += "*";
        out += arrows[*it].label;
    }
    return out;
}

namespace {

struct Path {
    std::size_t source, target;
    std::vector<std::size_t> walk;
};

bool path_less(const Path& a, const Path& b) {
    if (a.walk.size() != b.walk.size()) return a.walk.size() < b.walk.size();
    if (a.walk.empty()) return a.source < b.source;
    return a.walk < b.walk;
}

}  // namespace

AlgebraPtr path_algebra(const QuiverPresentation& q, const Field& field) {
    const std::size_t n = q.vertex_count, N = q.nilpotency_bound;
    if (n == 0) throw ValidationError("quiver needs at least one vertex");
    if (N == 0) throw ValidationError("nilpotency bound must be at least 1");
    for (const auto& a : q.arrows)
        if (a.source >= n || a.target >= n) throw ValidationError("arrow '" + a.label + "' has an invalid endpoint");

    // all paths of length < N, shortest first
    std::vector<Path> paths;
    for (std::size_t v = 0; v < n; ++v) paths.push_back({v, v, {}});
    for (std::size_t begin = 0, len = 1; len < N; ++len) {
        std::size_t end = paths.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t a = 0; a < q.arrows.size(); ++a)
                if (q.arrows[a].source == paths[i].target) {
                    Path p = paths[i];
                    p.walk.push_back(a);
                    p.target = q.arrows[a].target;
                    paths.push_back(std::move(p));
                }
        begin = end;
    }
    std::stable_sort(paths.begin(), paths.end(), path_less);
    const std::size_t P = paths.size();
    // coordinate c of the path space holds paths[P-1-c]: longest paths pivot first
    std::map<std::vector<std::size_t>, std::size_t> nontrivial_index;
    for (std::size_t i = n; i < P; ++i) nontrivial_index[paths[i].walk] = i;
    auto coord = [&](std::size_t path_idx) { return P - 1 - path_idx; };

    auto walk_endpoints = [&](const std::vector<std::size_t>& w) {
        return std::pair{q.arrows[w.front()].source, q.arrows[w.back()].target};
    };

    std::vector<Vector> generators;
    for (const auto& rel : q.relations) {
        if (rel.empty()) continue;
        for (const auto& term : rel) {
            if (term.walk.size() < 2) throw ValidationError("relations must be combinations of paths of length >= 2");
            for (auto a : term.walk)
                if (a >= q.arrows.size()) throw ValidationError("relation refers to an unknown arrow");
        }
        auto [s0, t0] = walk_endpoints(rel.front().walk);
        for (const auto& term : rel) {
            for (std::size_t i = 1; i < term.walk.size(); ++i)
                if (q.arrows[term.walk[i - 1]].target != q.arrows[term.walk[i]].source)
                    throw ValidationError("relation term '" + q.path_label(term.walk) + "' is not a path");
            if (walk_endpoints(term.walk) != std::pair{s0, t0})
                throw ValidationError("relation terms are not parallel");
        }
        // u·rel·w for all paths w ending at s0 and u starting at t0
        for (const auto& w : paths) {
            if (w.target != s0) continue;
            for (const auto& u : paths) {
                if (u.source != t0) continue;
                Vector g = zero_vector(field, P);
                bool any = false;
                for (const auto& term : rel) {
                    std::vector<std::size_t> full = w.walk;
                    full.insert(full.end(), term.walk.begin(), term.walk.end());
                    full.insert(full.end(), u.walk.begin(), u.walk.end());
                    if (full.size() >= N) continue;
                    std::size_t c = coord(nontrivial_index.at(full));
                    g[c] = field.add(g[c], term.coeff);
                    any = true;
                }
                if (any && !is_zero_vector(field, g)) generators.push_back(std::move(g));
            }
        }
    }
    Subspace ideal = Subspace::span(field, P, generators);

    // surviving paths in basis order
    std::vector<std::size_t> survivors;  // indices into paths
    {
        std::vector<bool> is_pivot(P, false);
        for (auto c : ideal.pivots()) is_pivot[c] = true;
        for (std::size_t i = 0; i < P; ++i)
            if (!is_pivot[coord(i)]) survivors.push_back(i);
    }
    const std::size_t s = survivors.size();
    std::vector<std::size_t> position(P, s);
    for (std::size_t b = 0; b < s; ++b) position[survivors[b]] = b;

    // product of basis paths in the old basis (e_1..e_n, paths)
    auto old_product = [&](std::size_t bj, std::size_t bk) {
        const Path& p = paths[survivors[bj]];
        const Path& r = paths[survivors[bk]];
        Vector out = zero_vector(field, s);
        if (r.target != p.source) return out;
        std::vector<std::size_t> full = r.walk;
        full.insert(full.end(), p.walk.begin(), p.walk.end());
        if (full.size() >= N) return out;
        std::size_t idx = full.empty() ? p.source : nontrivial_index.at(full);
        Vector v = zero_vector(field, P);
        v[coord(idx)] = 1;
        Vector red = ideal.reduce(v);
        for (std::size_t i = 0; i < P; ++i)
            if (!field.is_zero(red[coord(i)])) out[position[i]] = red[coord(i)];
        return out;
    };

    // new basis: 1 = Σ e_v, e_2, ..., e_n, then paths
    auto new_in_old = [&](std::size_t j) {
        Vector v = zero_vector(field, s);
        if (j == 0)
            for (std::size_t u = 0; u < n; ++u) v[u] = 1;
        else
            v[j] = 1;
        return v;
    };
    auto old_to_new = [&](Vector x) {
        for (std::size_t k = 1; k < n; ++k) x[k] = field.sub(x[k], x[0]);
        return x;
    };

    std::vector<std::string> labels;
    labels.push_back("1");
    for (std::size_t v = 1; v < n; ++v) labels.push_back("e" + std::to_string(v + 1));
    for (std::size_t b = n; b < s; ++b) labels.push_back(q.path_label(paths[survivors[b]].walk));

    FDAlgebra alg(field, s, labels);
    for (std::size_t j = 0; j < s; ++j) {
        Vector xj = new_in_old(j);
        for (std::size_t k = 0; k < s; ++k) {
            Vector xk = new_in_old(k);
            Vector prod = zero_vector(field, s);
            for (std::size_t a = 0; a < s; ++a) {
                if (field.is_zero(xj[a])) continue;
                for (std::size_t b = 0; b < s; ++b) {
                    if (field.is_zero(xk[b])) continue;
                    Vector ab = old_product(a, b);
                    Scalar c = field.mul(xj[a], xk[b]);
                    for (std::size_t l = 0; l < s; ++l) prod[l] = field.add(prod[l], field.mul(c, ab[l]));
                }
            }
            Vector nc = old_to_new(prod);
            for (std::size_t l = 0; l < s; ++l) alg.set_constant(j, k, l, nc[l]);
        }
    }

    std::vector<Vector> idem;
    {
        Vector e1 = zero_vector(field, s);
        e1[0] = 1;
        for (std::size_t v = 1; v < n; ++v) e1[v] = field.neg(field.one());
        idem.push_back(e1);
        for (std::size_t v = 1; v < n; ++v) idem.push_back(alg.unit(v));
    }
    alg.set_idempotents(std::move(idem));
    std::vector<Vector> arrow_ideal;
    for (std::size_t b = n; b < s; ++b) arrow_ideal.push_back(alg.unit(b));
    alg.set_radical_hint(Subspace::span(field, s, arrow_ideal));
    return make_algebra(std::move(alg));
}

AlgebraPtr ground_field_algebra(const Field& field) {
    QuiverPresentation q;
    q.vertex_count = 1;
    q.nilpotency_bound = 1;
    return path_algebra(q, field);
}

AlgebraPtr truncated_polynomial_algebra(const Field& field, std::size_t n) {
    QuiverPresentation q;
    q.vertex_count = 1;
    q.arrows.push_back({0, 0, "x"});
    q.nilpotency_bound = n;
    return path_algebra(q, field);
}

AlgebraPtr linear_quiver_algebra(const Field& field, std::size_t n) {
    QuiverPresentation q;
    q.vertex_count = n;
    for (std::size_t v = 0; v + 1 < n; ++v) q.arrows.push_back({v, v + 1, std::string(1, static_cast<char>('a' + v))});
    q.nilpotency_bound = n;
    return path_algebra(q, field);
}

// ---------------------------------------------------------------------------

Subspace center(const FDAlgebra& a) {
    const Field& f = a.field();
    std::size_t s = a.dim();
    // rows (j,l), column k: coefficient of a_l in a_k a_j - a_j a_k
    Matrix m(f, s * s, s);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t l = 0; l < s; ++l)
            for (std::size_t k = 0; k < s; ++k) m(j * s + l, k) = f.sub(a.constant(k, j, l), a.constant(j, k, l));
    return kernel_basis(m);
}

bool is_two_sided_ideal(const FDAlgebra& a, const Subspace& ideal) {
    for (const auto& x : ideal.basis())
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Vector aj = a.unit(j);
            if (!ideal.contains(a.multiply(aj, x)) || !ideal.contains(a.multiply(x, aj))) return false;
        }
    return true;
}

std::optional<std::size_t> nilpotency_index(const FDAlgebra& a, const Subspace& ideal) {
    Subspace power = ideal;
    for (std::size_t k = 1; k <= a.dim() + 1; ++k) {
        if (power.dim() == 0) return k;
        std::vector<Vector> next;
        for (const auto& x : power.basis())
            for (const auto& y : ideal.basis()) next.push_back(a.multiply(x, y));
        Subspace np = Subspace::span(a.field(), a.dim(), next);
        if (np == power) return std::nullopt;
        power = np;
    }
    return std::nullopt;
}

Subspace radical(const FDAlgebra& a) {
    const Field& f = a.field();
    std::size_t s = a.dim();
    Subspace rad(f, s);
    if (a.radical_hint()) {
        rad = *a.radical_hint();
    } else {
        if (f.is_prime() && f.characteristic() <= s)
            throw UnsupportedCharacteristic("radical: trace form criterion needs characteristic 0 or p > " +
                                            std::to_string(s) + ", got " + f.name());
        Vector tr(s);
        for (std::size_t l = 0; l < s; ++l) {
            Scalar t = 0;
            for (std::size_t m = 0; m < s; ++m) t = f.add(t, a.constant(l, m, m));
            tr[l] = t;
        }
        // row j, column k: tr(L_{a_k a_j})
        Matrix form(f, s, s);
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = 0; k < s; ++k) {
                Scalar t = 0;
                for (std::size_t l = 0; l < s; ++l) t = f.add(t, f.mul(a.constant(k, j, l), tr[l]));
                form(j, k) = t;
            }
        rad = kernel_basis(form);
    }
    if (!is_two_sided_ideal(a, rad) || !nilpotency_index(a, rad))
        throw ValidationError("radical: computed subspace is not a nilpotent two-sided ideal");
    return rad;
}

AlgebraPtr opposite_algebra(const FDAlgebra& a) {
    FDAlgebra op(a.field(), a.dim(), a.labels());
    for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k)
            for (std::size_t l = 0; l < a.dim(); ++l) op.set_constant(j, k, l, a.constant(k, j, l));
    if (a.idempotents()) op.set_idempotents(*a.idempotents());
    if (a.radical_hint()) op.set_radical_hint(*a.radical_hint());
    return make_algebra(std::move(op));
}

AlgebraPtr algebra_from_operators(const Field& field, const std::vector<Matrix>& ops, bool opposite,
                                  std::vector<std::string> labels) {
    if (ops.empty()) throw ValidationError("operator algebra needs a basis");
    const Matrix& id = ops.front();
    if (!id.is_square() || !(id == Matrix::identity(field, id.rows())))
        throw ValidationError("operator algebra: first basis element must be the identity");
    std::vector<Vector> flat;
    for (const auto& m : ops) flat.push_back(m.flatten());
    BasisCoordinates coords(field, id.rows() * id.cols(), flat);
    std::size_t s = ops.size();
    FDAlgebra alg(field, s, std::move(labels));
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t k = 0; k < s; ++k) {
            Matrix p = opposite ? ops[k] * ops[j] : ops[j] * ops[k];
            auto c = coords.try_coordinates(p.flatten());
            if (!c) throw ValidationError("operator algebra: basis is not closed under composition");
            for (std::size_t l = 0; l < s; ++l) alg.set_constant(j, k, l, (*c)[l]);
        }
    return make_algebra(std::move(alg));
}

}  // namespace compvar

#include "compvar/scan.hpp"

#include "compvar/errors.hpp"

#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>

namespace compvar {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t power(std::uint64_t q, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t k = 0; k < e; ++k) {
        if (r > saturated / q) return saturated;
        r *= q;
    }
    return r;
}

void check_spec(const ScanSpec& spec) {
    if (!spec.algebra) throw ValidationError("scan: missing algebra");
    if (spec.algebra->field().is_rational()) throw UnsupportedCharacteristic("enumeration needs a finite field");
    if (spec.dims_desc.empty()) throw ValidationError("scan: empty dimension vector");
    if (spec.pinned_modules) {
        const auto& mods = *spec.pinned_modules;
        if (mods.size() != spec.dims_desc.size()) throw DimensionMismatch("scan: one pinned module per degree");
        for (std::size_t k = 0; k < mods.size(); ++k) {
            if (mods[k].dim != spec.dims_desc[k]) throw DimensionMismatch("scan: pinned module has the wrong dimension");
            if (!same_algebra(mods[k].algebra, spec.algebra)) throw ValidationError("scan: pinned module over another algebra");
            if (auto bad = validate_module(mods[k])) throw ValidationError("scan: pinned module invalid: " + bad->describe());
        }
    }
}

/// Calls visit with every vector in F_q^n, last coordinate fastest.
template <typename Visit>
void for_each_vector(const Field& f, std::size_t n, Visit visit) {
    const std::uint32_t q = f.characteristic();
    std::vector<std::uint32_t> digits(n, 0);
    Vector v(n, Scalar(0));
    while (true) {
        visit(v);
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++digits[k] < q) {
                v[k] = Scalar(static_cast<unsigned long>(digits[k]));
                break;
            }
            digits[k] = 0;
            v[k] = Scalar(0);
            if (k == 0) return;
        }
        if (n == 0) return;
    }
}

std::vector<ModuleRep> module_structures(const ScanSpec& spec, std::size_t pos) {
    if (spec.pinned_modules) return {(*spec.pinned_modules)[pos]};
    const AlgebraPtr& a = spec.algebra;
    const Field& f = a->field();
    const std::size_t d = spec.dims_desc[pos], s = a->dim();
    std::vector<ModuleRep> out;
    for_each_vector(f, (s - 1) * d * d, [&](const Vector& v) {
        ModuleRep m{a, d, {Matrix::identity(f, d)}};
        for (std::size_t j = 1; j < s; ++j) {
            Vector part(v.begin() + static_cast<std::ptrdiff_t>((j - 1) * d * d),
                        v.begin() + static_cast<std::ptrdiff_t>(j * d * d));
            m.rho.push_back(Matrix::from_flat(f, d, d, part));
        }
        if (!validate_module(m)) out.push_back(std::move(m));
    });
    return out;
}

std::string key(const ChainComplex& x) {
    std::string k;
    auto put = [&](const Matrix& m) {
        for (const auto& e : m.flatten()) {
            k += e.get_str();
            k += ',';
        }
        k += ';';
    };
    for (int i = x.high(); i >= x.low(); --i) {
        for (const auto& r : x.term(i).rho) put(r);
        if (i > x.low()) put(x.diff(i));
    }
    return k;
}

std::vector<std::size_t> normalize(const std::vector<std::size_t>& labels) {
    std::map<std::size_t, std::size_t> seen;
    std::vector<std::size_t> out;
    for (auto l : labels) {
        auto it = seen.find(l);
        if (it == seen.end()) it = seen.emplace(l, seen.size()).first;
        out.push_back(it->second);
    }
    return out;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

/// Invertible elements of the group acting on the slice in one degree:
/// GL_d, or the automorphisms of the pinned module.
std::optional<std::vector<Matrix>> degree_group(const ScanSpec& spec, std::size_t pos, std::uint64_t limit) {
    const Field& f = spec.algebra->field();
    const std::size_t d = spec.dims_desc[pos];
    std::vector<Matrix> basis;
    if (spec.pinned_modules) {
        basis = hom_basis((*spec.pinned_modules)[pos], (*spec.pinned_modules)[pos]);
    } else {
        for (std::size_t k = 0; k < d * d; ++k) {
            Matrix e(f, d, d);
            e(k / d, k % d) = 1;
            basis.push_back(e);
        }
    }
    if (power(f.characteristic(), basis.size()) > (limit > saturated / 16 ? saturated : limit * 16)) return std::nullopt;
    std::vector<Matrix> out;
    for_each_vector(f, basis.size(), [&](const Vector& c) {
        Matrix g(f, d, d);
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!f.is_zero(c[k])) g = g + basis[k].scaled(c[k]);
        if (is_invertible(g)) out.push_back(std::move(g));
    });
    return out;
}

}  // namespace

std::uint64_t free_coordinate_count(const ScanSpec& spec) {
    check_spec(spec);
    const std::uint64_t s = spec.algebra->dim();
    std::uint64_t n = 0;
    const auto& d = spec.dims_desc;
    if (!spec.pinned_modules)
        for (auto di : d) n += (s - 1) * di * di;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) n += d[k] * d[k + 1];
    return n;
}

std::vector<ChainComplex> enumerate_points(const ScanSpec& spec, const ScanBudget& budget) {
    const std::uint64_t count = free_coordinate_count(spec);
    const Field& f = spec.algebra->field();
    const std::uint64_t total = power(f.characteristic(), count);
    if (total > budget.max_points)
        throw BudgetExceeded("enumeration needs " + std::to_string(f.characteristic()) + "^" + std::to_string(count) +
                                 " candidate points, budget is " + std::to_string(budget.max_points),
                             total);
    const auto& d = spec.dims_desc;
    const std::size_t levels = d.size();
    std::vector<std::vector<ModuleRep>> options;
    for (std::size_t k = 0; k < levels; ++k) options.push_back(module_structures(spec, k));

    std::size_t diff_coords = 0;
    for (std::size_t k = 0; k + 1 < levels; ++k) diff_coords += d[k] * d[k + 1];

    std::vector<ChainComplex> out;
    std::vector<std::size_t> choice(levels, 0);
    std::function<void(std::size_t)> pick = [&](std::size_t k) {
        if (k < levels) {
            for (choice[k] = 0; choice[k] < options[k].size(); ++choice[k]) pick(k + 1);
            return;
        }
        std::vector<ModuleRep> mods;
        for (std::size_t l = 0; l < levels; ++l) mods.push_back(options[l][choice[l]]);
        for_each_vector(f, diff_coords, [&](const Vector& v) {
            std::vector<Matrix> diffs;
            std::size_t off = 0;
            for (std::size_t l = 0; l + 1 < levels; ++l) {
                std::size_t n = d[l + 1] * d[l];
                Vector part(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + n));
                diffs.push_back(Matrix::from_flat(f, d[l + 1], d[l], part));
                off += n;
            }
            ChainComplex x = ChainComplex::from_point(spec.algebra, mods, diffs);
            if (!validate_point(x)) out.push_back(std::move(x));
        });
    };
    pick(0);
    return out;
}

OrbitCensus orbit_census(const std::vector<ChainComplex>& points, const ScanSpec& spec, const ScanBudget& budget) {
    check_spec(spec);
    const Field& f = spec.algebra->field();
    OrbitCensus out;
    for (std::size_t p = 0; p < points.size(); ++p) {
        std::optional<std::size_t> cls;
        for (std::size_t c = 0; c < out.representatives.size() && !cls; ++c) {
            const ChainComplex& rep = points[out.representatives[c]];
            IsoResult r = complexes_isomorphic(points[p], rep, budget.seed);
            if (r.status == IsoStatus::probably_not_isomorphic) {
                std::uint64_t k = chain_map_space(points[p], rep, 0).space.dim();
                throw BudgetExceeded("isomorphism test is not exhaustive for a " + std::to_string(k) +
                                         "-dimensional space of chain maps",
                                     power(f.characteristic(), k));
            }
            if (r.isomorphic()) cls = c;
        }
        if (!cls) {
            cls = out.representatives.size();
            out.representatives.push_back(p);
        }
        out.class_of.push_back(*cls);
    }

    // explicit orbits of the group acting on the slice
    std::vector<std::vector<Matrix>> groups;
    std::uint64_t size = 1;
    for (std::size_t k = 0; k < spec.dims_desc.size(); ++k) {
        auto g = degree_group(spec, k, budget.max_group_elements);
        if (!g) return out;
        size = size > saturated / std::max<std::uint64_t>(g->size(), 1) ? saturated : size * g->size();
        groups.push_back(std::move(*g));
    }
    out.group_size = size;
    if (size > budget.max_group_elements) return out;

    std::map<std::string, std::size_t> index;
    for (std::size_t p = 0; p < points.size(); ++p) index.emplace(key(points[p]), p);
    UnionFind uf(points.size());
    const std::size_t levels = groups.size();
    for (std::size_t p = 0; p < points.size(); ++p) {
        std::vector<std::size_t> choice(levels, 0);
        while (true) {
            GroupElement g{0, {}};
            for (std::size_t l = levels; l-- > 0;) g.g.push_back(groups[l][choice[l]]);  // ascending degrees
            auto it = index.find(key(act(g, points[p])));
            if (it == index.end()) throw std::logic_error("group action leaves the enumerated slice");
            uf.unite(p, it->second);
            std::size_t l = 0;
            while (l < levels && ++choice[l] == groups[l].size()) choice[l++] = 0;
            if (l == levels) break;
        }
    }
    std::vector<std::size_t> orbit(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) orbit[p] = uf.find(p);
    out.group_checked = true;
    out.partitions_agree = normalize(orbit) == normalize(out.class_of);
    return out;
}

RigidCensus rigid_census(const ScanSpec& spec, const ScanBudget& budget) {
    std::vector<ChainComplex> points = enumerate_points(spec, budget);
    RigidCensus out{points.size(), 0, 0, orbit_census(points, spec, budget), {}};
    out.orbit_count = out.orbits.representatives.size();
    std::vector<std::size_t> class_size(out.orbit_count, 0);
    for (auto c : out.orbits.class_of) ++class_size[c];
    // rigidity and almost projectivity are isomorphism invariants, so one
    // representative per class decides
    for (std::size_t c = 0; c < out.orbit_count; ++c) {
        const ChainComplex& x = points[out.orbits.representatives[c]];
        if (!classify(x).is_almost_projective) continue;
        out.almost_projective += class_size[c];
        if (!is_rigid(x)) continue;
        RigidityCheck chk = open_orbit_check(x);
        out.rigid.push_back(RigidClass{x, class_size[c], chk.quotient, chk.ok});
    }
    return out;
}

}  // namespace compvar

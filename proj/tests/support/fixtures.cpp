#include "fixtures.hpp"

#include <stdexcept>

namespace fixtures {

Matrix random_unimodular(const Field& f, std::size_t n, std::mt19937_64& rng) {
    Matrix g = Matrix::identity(f, n);
    if (n < 2) {
        if (n == 1 && rng() % 2) g(0, 0) = f.neg(f.one());
        return g;
    }
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (std::size_t step = 0; step < 3 * n; ++step) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        Matrix e = Matrix::identity(f, n);
        e.set(i, j, coeff(rng));
        g = e * g;
    }
    return g;
}

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, dist(rng));
    return m;
}

std::size_t log_exact(std::size_t count, std::size_t p) {
    std::size_t k = 0;
    while (count > 1) {
        if (count % p != 0) throw std::logic_error("count is not a prime power");
        count /= p;
        ++k;
    }
    return k;
}

}  // namespace fixtures

namespace fixtures {

std::vector<ModuleRep> building_blocks(AlgebraPtr a) {
    std::vector<ModuleRep> out = indecomposable_projectives(a);
    for (auto& s : simple_modules(a)) out.push_back(s);
    out.push_back(regular_module(a));
    return out;
}

Matrix random_hom(const ModuleRep& m, const ModuleRep& n, std::mt19937_64& rng) {
    const Field& f = m.field();
    Matrix h(f, n.dim, m.dim);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (const auto& b : hom_basis(m, n)) h = h + b.scaled(coeff(rng));
    return h;
}

ChainComplex two_term(const ModuleRep& top, const ModuleRep& bottom, const Matrix& d) {
    return ChainComplex::from_point(top.algebra, {top, bottom}, {d});
}

ChainComplex mult_x_complex(const Field& f) {
    auto a = dual_numbers(f);
    ModuleRep reg = regular_module(a);
    return two_term(reg, reg, a->left_matrix(1));
}

ChainComplex scalar_complex(const Field& f, long c) {
    auto k = ground_field_algebra(f);
    ModuleRep one = regular_module(k);
    Matrix d(f, 1, 1);
    d.set(0, 0, c);
    return two_term(one, one, d);
}

ChainComplex arrow_complex(const Field& f) {
    auto a = a2(f);
    auto p = indecomposable_projectives(a);
    return two_term(p[1], p[0], hom_basis(p[1], p[0]).front());
}

GroupElement random_group_element(const ChainComplex& x, std::mt19937_64& rng) {
    GroupElement g{x.low(), {}};
    for (int i = x.low(); i <= x.high(); ++i) g.g.push_back(random_unimodular(x.field(), x.dim(i), rng));
    return g;
}

ChainComplex random_point(AlgebraPtr a, std::mt19937_64& rng, int max_degree, std::size_t max_total) {
    auto blocks = building_blocks(a);
    int m = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
    ChainComplex x = ChainComplex::zero(a, 0, m);
    int pieces = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < pieces; ++k) {
        const ModuleRep& top = blocks[rng() % blocks.size()];
        const ModuleRep& bottom = blocks[rng() % blocks.size()];
        ChainComplex piece = ChainComplex::zero(a);
        if (m > 0 && rng() % 2) {
            int deg = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
            piece = shift(two_term(top, bottom, random_hom(top, bottom, rng)), deg - 1);
        } else {
            piece = stalk(top, static_cast<int>(rng() % static_cast<std::uint64_t>(m + 1)));
        }
        if (x.total_dim() + piece.total_dim() > max_total) continue;
        x = direct_sum(x, piece);
    }
    x = x.with_window(0, m);
    return act(random_group_element(x, rng), x);
}

}  // namespace fixtures

namespace fixtures {

ChainComplex random_projective_point(AlgebraPtr a, std::mt19937_64& rng, int max_degree, std::size_t max_total) {
    auto blocks = indecomposable_projectives(a);
    blocks.push_back(regular_module(a));
    int m = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
    ChainComplex x = ChainComplex::zero(a, 0, m);
    int pieces = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < pieces; ++k) {
        const ModuleRep& top = blocks[rng() % blocks.size()];
        const ModuleRep& bottom = blocks[rng() % blocks.size()];
        ChainComplex piece = ChainComplex::zero(a);
        if (m > 0 && rng() % 3 != 0) {
            int deg = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
            piece = shift(two_term(top, bottom, random_hom(top, bottom, rng)), deg - 1);
        } else {
            piece = stalk(top, static_cast<int>(rng() % static_cast<std::uint64_t>(m + 1)));
        }
        if (x.total_dim() + piece.total_dim() > max_total) continue;
        x = direct_sum(x, piece);
    }
    x = x.with_window(0, m);
    return act(random_group_element(x, rng), x);
}

ChainComplex random_almost_projective_point(AlgebraPtr a, std::mt19937_64& rng, std::size_t max_total) {
    std::vector<ModuleRep> nonproj;
    for (auto& s : simple_modules(a))
        if (!is_projective(s)) nonproj.push_back(s);
    if (nonproj.empty()) throw std::invalid_argument("algebra has no non-projective simple module");
    auto proj = indecomposable_projectives(a);
    const ModuleRep& top = nonproj[rng() % nonproj.size()];
    const ModuleRep& bottom = proj[rng() % proj.size()];
    int m = 1 + static_cast<int>(rng() % 2);
    ChainComplex x = shift(two_term(top, bottom, random_hom(top, bottom, rng)), m - 1);
    if (m == 2 || rng() % 2) {
        std::size_t budget = max_total > x.total_dim() ? max_total - x.total_dim() : 0;
        ChainComplex base = random_projective_point(a, rng, m - 1, budget);
        if (base.total_dim() <= budget) x = direct_sum(x, base.with_window(0, m));
    }
    x = x.with_window(0, m);
    return act(random_group_element(x, rng), x);
}

}  // namespace fixtures

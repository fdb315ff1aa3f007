#pragma once

#include "compvar/algebra.hpp"
#include "compvar/complex.hpp"
#include "compvar/module_rep.hpp"

#include <random>

namespace fixtures {

using namespace compvar;

/// K[x]/(x²) with basis {1, x}.
inline AlgebraPtr dual_numbers(const Field& f) { return truncated_polynomial_algebra(f, 2); }
/// Path algebra of 1 → 2 with basis {1, e2, a}.
inline AlgebraPtr a2(const Field& f) { return linear_quiver_algebra(f, 2); }

/// Random invertible integer matrix: a product of elementary matrices, so the
/// determinant is ±1 over every field.
Matrix random_unimodular(const Field& f, std::size_t n, std::mt19937_64& rng);
Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int bound = 2);

/// All matrices of a shape over a prime field, for brute-force oracles.
template <typename Visit>
void for_each_matrix(const Field& f, std::size_t r, std::size_t c, Visit visit) {
    std::size_t n = r * c;
    std::vector<std::uint32_t> digits(n, 0);
    std::uint32_t p = f.characteristic();
    while (true) {
        Matrix m(f, r, c);
        for (std::size_t k = 0; k < n; ++k) m(k / c, k % c) = Scalar(static_cast<unsigned long>(digits[k]));
        visit(m);
        std::size_t k = 0;
        while (k < n && ++digits[k] == p) digits[k++] = 0;
        if (k == n) break;
    }
}

/// Modules used to assemble random complexes: indecomposable projectives,
/// simples and the regular module.
std::vector<ModuleRep> building_blocks(AlgebraPtr a);
/// Random element of Hom_A(m, n).
Matrix random_hom(const ModuleRep& m, const ModuleRep& n, std::mt19937_64& rng);

/// Two-term point (top → bottom) in degrees 1, 0.
ChainComplex two_term(const ModuleRep& top, const ModuleRep& bottom, const Matrix& d);
/// (A → A) over K[x]/(x²) with ∂ = multiplication by x.
ChainComplex mult_x_complex(const Field& f);
/// A = K, d = (1, 1), ∂ = c.
ChainComplex scalar_complex(const Field& f, long c);
/// P2 → P1 over the A2 path algebra, ∂ = the arrow.
ChainComplex arrow_complex(const Field& f);
/// Random valid point with left window [0, m]: direct sums of stalks and
/// two-term pieces, conjugated by a random group element.
ChainComplex random_point(AlgebraPtr a, std::mt19937_64& rng, int max_degree = 2, std::size_t max_total = 8);
/// Same, built from projective modules only.
ChainComplex random_projective_point(AlgebraPtr a, std::mt19937_64& rng, int max_degree = 2, std::size_t max_total = 8);
/// A non-projective simple in the leftmost degree (1 or 2) mapping into a
/// projective, optionally summed with a projective point.
ChainComplex random_almost_projective_point(AlgebraPtr a, std::mt19937_64& rng, std::size_t max_total = 8);
GroupElement random_group_element(const ChainComplex& x, std::mt19937_64& rng);

/// log_p of a count that must be a power of p.
std::size_t log_exact(std::size_t count, std::size_t p);

}  // namespace fixtures

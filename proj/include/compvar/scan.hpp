#pragma once

#include "compvar/tangent.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace compvar {

struct ScanBudget {
    std::uint64_t max_points = 10000;
    std::uint64_t max_group_elements = 10000;
    std::uint64_t seed = 0;
};

/// A slice of the complex variety over a finite field: dimension vector
/// d_m..d_0, optionally with every module structure fixed.
struct ScanSpec {
    AlgebraPtr algebra;
    std::vector<std::size_t> dims_desc;
    std::optional<std::vector<ModuleRep>> pinned_modules;  // X_m..X_0
};

/// Number of free coordinates: Σ_i (s−1)·d_i² action entries (a_1 = 1 acts
/// as the identity) unless modules are pinned, plus Σ_i d_{i−1}·d_i.
std::uint64_t free_coordinate_count(const ScanSpec& spec);

/// All valid points of the slice, in lexicographic order of coordinates.
/// Throws BudgetExceeded when q^count exceeds max_points.
std::vector<ChainComplex> enumerate_points(const ScanSpec& spec, const ScanBudget& budget);

struct OrbitCensus {
    std::vector<std::size_t> class_of;         // class index per point
    std::vector<std::size_t> representatives;  // first point of each class
    bool group_checked = false;                // G-orbits were enumerated
    bool partitions_agree = false;
    std::uint64_t group_size = 0;
};
/// Partitions points into isomorphism classes. When the group acting on the
/// slice is small enough it is enumerated and its orbits compared with the
/// isomorphism partition.
OrbitCensus orbit_census(const std::vector<ChainComplex>& points, const ScanSpec& spec, const ScanBudget& budget);

struct RigidClass {
    ChainComplex representative;
    std::size_t points;
    std::size_t quotient;
    bool check_ok;
};
struct RigidCensus {
    std::size_t point_count;
    std::size_t almost_projective;
    std::size_t orbit_count;
    OrbitCensus orbits;
    std::vector<RigidClass> rigid;
};
RigidCensus rigid_census(const ScanSpec& spec, const ScanBudget& budget);

}  // namespace compvar

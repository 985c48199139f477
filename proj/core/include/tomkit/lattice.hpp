#pragma once

#include <cstdint>
#include <vector>

namespace tomkit {

/// A lattice point of a dilated simplex: d nonnegative coordinates whose sum
/// is the level.
using LatticePoint = std::vector<int>;

std::uint64_t binomial(int n, int k);

int level_of(const LatticePoint& p);

/// Number of lattice points of level*Delta^{d-1}.
std::uint64_t lattice_count(int level, int d);

/// All lattice points of level*Delta^{d-1} in colexicographic order: the
/// last coordinate varies slowest.
std::vector<LatticePoint> lattice_points(int level, int d);

/// Rank of p in the colexicographic order of lattice_points(level_of(p), d).
std::uint64_t colex_rank(const LatticePoint& p);

LatticePoint unit_vector(int d, int j);
LatticePoint constant_vector(int d, int value);

/// p with coordinate j shifted by delta (may go negative; callers check).
LatticePoint shifted(LatticePoint p, int j, int delta);

bool is_nonnegative(const LatticePoint& p);

/// Bit mask of coordinates that are at least 1.
std::uint64_t support_mask(const LatticePoint& p);

}  // namespace tomkit

#include "tomkit/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tomkit {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

int level_of(const LatticePoint& p) { return std::accumulate(p.begin(), p.end(), 0); }

std::uint64_t lattice_count(int level, int d) {
  if (level < 0 || d < 1) return 0;
  return binomial(level + d - 1, d - 1);
}

namespace {

void fill_colex(int level, int d, LatticePoint& current, std::vector<LatticePoint>& out) {
  if (d == 1) {
    current[0] = level;
    out.push_back(current);
    return;
  }
  for (int last = 0; last <= level; ++last) {
    current[d - 1] = last;
    fill_colex(level - last, d - 1, current, out);
  }
  current[d - 1] = 0;
}

}  // namespace

std::vector<LatticePoint> lattice_points(int level, int d) {
  if (d < 1) throw std::invalid_argument("lattice_points: d must be positive");
  std::vector<LatticePoint> out;
  if (level < 0) return out;
  out.reserve(lattice_count(level, d));
  LatticePoint current(static_cast<std::size_t>(d), 0);
  fill_colex(level, d, current, out);
  return out;
}

std::uint64_t colex_rank(const LatticePoint& p) {
  std::uint64_t rank = 0;
  int remaining = level_of(p);
  for (int k = static_cast<int>(p.size()) - 1; k >= 1; --k) {
    // Points with a smaller k-th coordinate (and equal later ones) come first.
    for (int c = 0; c < p[k]; ++c) rank += lattice_count(remaining - c, k);
    remaining -= p[k];
  }
  return rank;
}

LatticePoint unit_vector(int d, int j) {
  LatticePoint p(static_cast<std::size_t>(d), 0);
  p.at(static_cast<std::size_t>(j)) = 1;
  return p;
}

LatticePoint constant_vector(int d, int value) {
  return LatticePoint(static_cast<std::size_t>(d), value);
}

LatticePoint shifted(LatticePoint p, int j, int delta) {
  p.at(static_cast<std::size_t>(j)) += delta;
  return p;
}

bool is_nonnegative(const LatticePoint& p) {
  return std::all_of(p.begin(), p.end(), [](int x) { return x >= 0; });
}

std::uint64_t support_mask(const LatticePoint& p) {
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] >= 1) mask |= std::uint64_t{1} << j;
  }
  return mask;
}

}  // namespace tomkit

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tomkit/bigraph.hpp"
#include "tomkit/lattice.hpp"
#include "tomkit/report.hpp"

namespace tomkit {

/// A fine mixed subdivision of n*Delta^{d-1}, given by its cells as
/// spanning trees of K_{n,d}.
struct FineMixedSubdivision {
  int n = 0;
  int d = 0;
  std::vector<BiGraph> cells;
};

/// Cells sorted, so equal subdivisions compare equal.
FineMixedSubdivision canonical(FineMixedSubdivision s);

enum class FmsMode { full, linkage_only, compat_only };

/// C(n+d-2, n-1), the number of cells of every fine mixed subdivision.
std::uint64_t expected_cell_count(int n, int d);

/// Axiom audit. Full mode checks the spanning tree, tree linkage and
/// compatibility axioms (plus distinct, nonempty); the single-axiom modes
/// check spanning trees, distinctness, the cell count and the named axiom.
/// Throws std::invalid_argument if a cell has a different ambient size.
ValidationReport validate_fms(const FineMixedSubdivision& s, FmsMode mode);

/// Both endpoints have degree at least 2 in the cell.
bool is_internal_edge(const BiGraph& cell, Edge e);

struct LinkagePartner {
  BiGraph cell;
  Edge edge;
};

/// The other cell sharing all edges of `cell` but `edge`. Returns nullopt for
/// an edge touching a leaf. Throws std::invalid_argument if the cell or edge
/// is absent and ValidationError if an internal edge has no partner or more
/// than one.
std::optional<LinkagePartner> tree_linkage_partner(const FineMixedSubdivision& s,
                                                   const BiGraph& cell, Edge edge);

/// RD(cell) - 1. Throws std::invalid_argument if some right degree is 0.
LatticePoint position(const BiGraph& cell);

/// Vertices position + e_j of the base simplex.
std::vector<LatticePoint> base_simplex(const BiGraph& cell);

/// LD(cell) - 1.
LatticePoint left_position(const BiGraph& cell);

/// Positions and left positions each biject with the lattice points of the
/// matching dilated simplex.
ValidationReport check_degree_bijection(const FineMixedSubdivision& s);

/// LD is a permutation of (d, 1, ..., 1).
bool is_unmixed(const BiGraph& cell);

/// Whether a cell's position lies in origin + (m-1)Delta.
bool position_within(const LatticePoint& pos, const LatticePoint& origin);

/// Unmixed cells inside origin + m*Delta, where origin has level n - m.
/// Throws std::invalid_argument for an origin of the wrong level or size.
int spread_out_count(const FineMixedSubdivision& s, const LatticePoint& origin, int m);

/// Union of the cells whose positions lie in origin + (m-1)Delta.
BiGraph cell_union(const FineMixedSubdivision& s, const LatticePoint& origin, int m);

/// Cells indexed by position (colexicographic rank).
class CellIndex {
 public:
  /// Throws ValidationError if two cells share a position.
  explicit CellIndex(const FineMixedSubdivision& s);
  /// nullptr when no cell has this position.
  const BiGraph* at(const LatticePoint& pos) const;

 private:
  int level_ = 0;
  std::vector<std::optional<BiGraph>> slots_;
};

}  // namespace tomkit

#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "tomkit/fms.hpp"
#include "tomkit/report.hpp"

namespace tomkit {

/// An edge {u, v} of the tree-linkage graph. The cells at t + e_u and
/// t + e_v differ in (near_u, u) and (near_v, v).
struct LinkageEdge {
  int u = 0;
  int v = 0;
  int near_u = 0;
  int near_v = 0;

  friend bool operator==(const LinkageEdge&, const LinkageEdge&) = default;
};

/// The labeled graph on [d] built from the d cells at positions t + e_j.
struct TreeLinkageCovector {
  int n = 0;
  int d = 0;
  LatticePoint t;
  /// Sorted by (u, v), u < v.
  std::vector<LinkageEdge> edges;
  /// Per right vertex, the mask of left indices labeling it.
  std::vector<std::uint64_t> vertex_labels;
  /// The intersection of the d cells.
  BiGraph core_tope;
};

/// Builds the covector at t (level n - 2) and asserts its invariants, the
/// near-label rule at every vertex and pull reconstruction of every cell.
/// Throws std::invalid_argument for n < 2 or a bad t, ValidationError when a
/// cell is missing or an invariant fails.
TreeLinkageCovector build_covector(const FineMixedSubdivision& s, const LatticePoint& t);

/// The covector at every lattice point of (n - 2) Delta, in colex order.
std::vector<TreeLinkageCovector> all_covectors(const FineMixedSubdivision& s);

/// Core tope plus, for each edge, the near label at the endpoint closer to j.
BiGraph covector_pull(const TreeLinkageCovector& c, int j);

/// Incident edges plus vertex labels, per right vertex.
LatticePoint augmented_degrees(const TreeLinkageCovector& c);

/// Spanning tree on [d], distinct near labels per edge, each left index a
/// vertex label once, core tope a tope, augmented degrees t + 2.
ValidationReport check_covector_invariants(const TreeLinkageCovector& c);

/// The vertices on the tree path from a to b, both included. Throws
/// std::invalid_argument if b is unreachable.
std::vector<int> covector_path(const TreeLinkageCovector& c, int a, int b);

/// Along every path, no two equal edge labels point at each other and no
/// edge label points at an equal vertex label; edges labeled i are oriented
/// away from the vertex labeled i.
ValidationReport check_path_labels(const TreeLinkageCovector& c);

nlohmann::json to_json(const TreeLinkageCovector& c);

}  // namespace tomkit

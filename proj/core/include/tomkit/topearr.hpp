#pragma once

#include <optional>
#include <vector>

#include "tomkit/bigraph.hpp"
#include "tomkit/fms.hpp"
#include "tomkit/lattice.hpp"
#include "tomkit/report.hpp"

namespace tomkit {

/// One tope per lattice point v of n*Delta^{d-1}, stored densely in
/// colexicographic order of the positions.
class TopeArrangement {
 public:
  TopeArrangement() = default;
  /// Topes in colexicographic order of their intended positions. Throws
  /// std::invalid_argument if the count or an ambient size is wrong.
  TopeArrangement(int n, int d, std::vector<BiGraph> topes);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  const std::vector<BiGraph>& topes() const noexcept { return topes_; }
  /// Throws std::out_of_range for a point outside n*Delta^{d-1}.
  const BiGraph& at(const LatticePoint& v) const;
  bool has_point(const LatticePoint& v) const;

  friend bool operator==(const TopeArrangement&, const TopeArrangement&) = default;

 private:
  int n_ = 0;
  int d_ = 0;
  std::vector<BiGraph> topes_;
};

enum class ArrangementLevel { tope_arrangement, pre_trianguloid, trianguloid };

/// Structural checks (tope, right degrees equal the position), then the axioms
/// of the requested level: pairwise compatibility; the combinatorial sector
/// axiom; the sector axiom plus the hexagon axiom.
ValidationReport validate_arrangement(const TopeArrangement& a, ArrangementLevel level);

/// Right degree vectors equal positions and every entry is a tope.
ValidationReport check_structure(const TopeArrangement& a);

/// For adjacent positions v - e_j = v' - e_j', j != j': the j-neighbours of
/// T_{v'} form a subset of those of T_v.
ValidationReport check_sector(const TopeArrangement& a);

/// Hexagon axiom over distinct triples.
ValidationReport check_hexagon(const TopeArrangement& a);

/// Union of T_{u + e_j} over all j, for u at level n - 1.
BiGraph delta_union(const TopeArrangement& a, const LatticePoint& u);

/// delta_union checked: a spanning tree with right degrees u + 1 whose j-pull
/// is T_{u + e_j} for every j. Throws ValidationError otherwise.
BiGraph delta_covector(const TopeArrangement& a, const LatticePoint& u);

/// Delta-linkage at every u, as a report.
ValidationReport check_delta_linkage(const TopeArrangement& a);

struct NablaCovector {
  BiGraph graph;
  /// Spanning tree on [n] + supp(w) with left degrees 1 or 2.
  bool tree = false;
  /// When tree: T_{w - e_j} is the disjoint union of the Chow covector and
  /// the j-push, for every j in supp(w).
  bool decomposition = false;
};

/// Union of T_{w - e_j} over j in supp(w), for w at level n + 1.
NablaCovector nabla_covector(const TopeArrangement& a, const LatticePoint& w);

/// Nabla-linkage (tree and decomposition) at every w, as a report.
ValidationReport check_nabla_linkage(const TopeArrangement& a);

struct ChowCovector {
  BiGraph graph;
  LatticePoint anchor;
};

/// Intersection of T_{w - e_j} over j in supp(w). Throws ValidationError if
/// it is not a partial left semi-matching with right degrees w - 1_supp(w).
ChowCovector chow_covector(const TopeArrangement& a, const LatticePoint& w);

/// Every Chow covector has the stated degrees and T_v is the union of
/// Omega(v + e_j) over j.
ValidationReport check_chow(const TopeArrangement& a);

/// Every tope inside a Delta-linkage covector is the stored tope at its
/// position. nullopt when some nabla union is cyclic (hypothesis fails).
std::optional<ValidationReport> refinement_closure_check(const TopeArrangement& a);

/// Interpolation between the j'-pull (first) and the j-pull (last) of a
/// spanning tree along the path from j to j'. Entry k orients the first k
/// path edges towards j and the rest towards j'; it has position
/// w - e_{j_k} where w = position(j-pull) + e_{j'}.
std::vector<BiGraph> tug_of_war_trace(const BiGraph& tree, int j, int j_prime);

/// The right-vertex path j = j_0, ..., j_l = j' used by tug_of_war_trace.
std::vector<int> right_path(const BiGraph& tree, int j, int j_prime);

/// The unique tope of some cell with right degrees v, for every v. Throws
/// ValidationError if two cells disagree or a position is uncovered.
TopeArrangement topes_from_fms(const FineMixedSubdivision& s);

/// Delta-linkage covectors of a pre-trianguloid as a cell collection.
FineMixedSubdivision fms_from_arrangement(const TopeArrangement& a);

/// T^{-1}(j) as a mask of left vertices.
inline std::uint64_t preimage(const BiGraph& tope, int j) { return tope.column(j); }

}  // namespace tomkit

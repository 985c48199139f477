#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "tomkit/bigraph.hpp"
#include "tomkit/report.hpp"

namespace tomkit {

/// A generic tropical oriented matroid given by its full set of types.
///
/// Each type is stored as its graph. In an extended matroid types may have
/// empty coordinates (semitypes); otherwise every left degree is at least 1.
class GenericTom {
 public:
  GenericTom() = default;
  GenericTom(int n, int d, std::vector<BiGraph> types, bool extended = false);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  bool extended() const noexcept { return extended_; }
  /// Sorted, without duplicates.
  const std::vector<BiGraph>& types() const noexcept { return types_; }
  bool contains(const BiGraph& g) const { return lookup_.count(g) > 0; }

  friend bool operator==(const GenericTom& a, const GenericTom& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.extended_ == b.extended_ && a.types_ == b.types_;
  }

 private:
  int n_ = 0;
  int d_ = 0;
  bool extended_ = false;
  std::vector<BiGraph> types_;
  std::unordered_set<BiGraph, BiGraphHash> lookup_;
};

/// Every left degree is at least 1.
bool is_honest(const BiGraph& g);

/// Generic, boundary, surrounding, compatibility and elimination axioms.
/// For an extended matroid elimination is audited on the reduction, and
/// every semitype must refine an honest type.
ValidationReport validate_tom(const GenericTom& t);

/// A type W with W_i = U_i | V_i and W_k in {U_k, V_k} elsewhere, trying the
/// choices in increasing order (bit k of the choice picks V_k). nullopt if
/// none is a type of t.
std::optional<BiGraph> elimination_witness(const GenericTom& t, const BiGraph& u,
                                           const BiGraph& v, int i);

/// The types that are spanning trees.
std::vector<BiGraph> tree_types(const GenericTom& t);
/// The types that are topes.
std::vector<BiGraph> topes(const GenericTom& t);

/// All honest subgraphs of the given trees.
GenericTom generate_from_tree_types(const std::vector<BiGraph>& trees, int n, int d);

/// All honest acyclic graphs compatible with every given tope.
GenericTom reconstruct_from_topes(const std::vector<BiGraph>& topes, int n, int d);

/// Adds every semitype obtained by emptying some coordinates.
GenericTom completion(const GenericTom& t);
/// Keeps the honest types only.
GenericTom reduction(const GenericTom& t);

/// An honest type of t containing the semitype. Throws std::invalid_argument
/// if the semitype is not in t and ValidationError if no honest type
/// contains it.
BiGraph refine_to_honest(const BiGraph& semitype, const GenericTom& t);

}  // namespace tomkit

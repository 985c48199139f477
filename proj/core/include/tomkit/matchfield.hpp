#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tomkit/bigraph.hpp"
#include "tomkit/lattice.hpp"
#include "tomkit/report.hpp"

namespace tomkit {

/// Calls fn on every k-element subset of {0..size-1}, in increasing numeric
/// order of the masks.
void for_each_subset(int size, int k, const std::function<void(std::uint64_t)>& fn);
std::vector<std::uint64_t> subsets(int size, int k);

/// One bijection sigma -> [d] per d-subset sigma of the left set [n'].
///
/// In a pointed field the left set is [n] followed by the pointed copies of
/// [d]: pointed vertex j sits at left index n + j and is forced onto right j.
struct MatchingField {
  int n_prime = 0;
  int d = 0;
  bool pointed = false;
  /// sigma mask -> perfect matching between sigma and [d] inside K_{n',d}.
  std::map<std::uint64_t, BiGraph> assignments;

  /// Number of unpointed left vertices.
  int n() const noexcept { return pointed ? n_prime - d : n_prime; }
  /// Throws std::out_of_range for a missing sigma.
  const BiGraph& at(std::uint64_t sigma) const;
};

/// Every d-subset present once with a perfect matching onto [d], and the
/// pointed constraint when the flag is set.
ValidationReport check_well_formed(const MatchingField& f);

enum class LinkageVariant { strong, weak, three_element, exchange, elimination };

inline constexpr LinkageVariant kLinkageVariants[] = {
    LinkageVariant::strong, LinkageVariant::weak, LinkageVariant::three_element,
    LinkageVariant::exchange, LinkageVariant::elimination};

const char* variant_name(LinkageVariant v);

/// Evaluates one formulation of the linkage axiom, literally.
ValidationReport check_linkage(const MatchingField& f, LinkageVariant variant);

struct LinkageCovector {
  BiGraph graph;
  std::uint64_t tau = 0;
  bool linkage = false;
};

/// Union of the matchings of the d-subsets of tau. `linkage` records whether
/// it is a spanning tree on tau + [d] with all right degrees 2. Throws
/// std::invalid_argument if tau does not have d + 1 elements.
LinkageCovector linkage_covector(const MatchingField& f, std::uint64_t tau);

/// For every (d-1)-subset rho, the union over sigma containing rho is a
/// forest; unpointed vertices of rho have degree 2, every other covered left
/// vertex degree 1.
ValidationReport check_strong_inverse_linkage(const MatchingField& f);

/// One partial matching per pair (I, J) of equal-size subsets of [n] and [d].
struct MatchingStack {
  int n = 0;
  int d = 0;
  std::map<std::pair<std::uint64_t, std::uint64_t>, BiGraph> assignments;

  /// Throws std::out_of_range for a missing pair.
  const BiGraph& at(std::uint64_t left, std::uint64_t right) const;
};

/// Every equal-size pair present once with a perfect matching between them.
ValidationReport check_well_formed(const MatchingStack& s);

enum class EnsembleLevel { semi, full };

/// Closure and left linkage; right linkage too at the full level.
ValidationReport validate_ensemble(const MatchingStack& s, EnsembleLevel level);

/// Union of M_{I - i, J} over i in I and M_{I, J + j} over j outside J, for
/// |I| = |J| + 1.
BiGraph extended_left_linkage_covector(const MatchingStack& s, std::uint64_t left,
                                       std::uint64_t right);

/// Every extended left linkage covector is a tree on I + [d] with right
/// degrees 2 on J and 1 elsewhere.
ValidationReport check_extended_left_linkage(const MatchingStack& s);

/// Pointed field -> stack. Throws std::invalid_argument if f is not pointed
/// or violates the pointed constraint.
MatchingStack reduce_pointed(const MatchingField& f);

/// Stack -> pointed (n + d, d) field. Throws std::invalid_argument for a
/// malformed stack.
MatchingField complete_stack(const MatchingStack& s);

/// One partial tope with right degree vector v per k-subset, k = |v|.
struct TopeField {
  int n_prime = 0;
  int d = 0;
  LatticePoint type;
  std::map<std::uint64_t, BiGraph> assignments;

  int thickness() const { return level_of(type); }
  const BiGraph& at(std::uint64_t sigma) const;
};

/// A matching field read as a tope field of type (1, ..., 1).
TopeField as_tope_field(const MatchingField& f);

/// The linkage covector of a tope field over a (k+1)-subset.
BiGraph tope_linkage_covector(const TopeField& tf, std::uint64_t tau);

/// Every linkage covector is a tree with right degrees type + 1.
ValidationReport check_tope_field_linkage(const TopeField& tf);

/// The j-amalgamation: the j-pull of every linkage covector. Throws
/// std::invalid_argument if the field is maximal and ValidationError if a
/// covector is not a tree with right degrees type + 1.
TopeField amalgamate(const TopeField& tf, int j);

/// Iterated amalgamation of a linkage matching field up to every type,
/// memoized by type.
class AmalgamationCache {
 public:
  explicit AmalgamationCache(const MatchingField& f);
  /// Tope field of the given type (all coordinates at least 1, level at most
  /// n'). Reaches it by amalgamating at the smallest coordinate that exceeds
  /// its base value first.
  const TopeField& field(const LatticePoint& type);
  /// The single tope of the maximal field of this type (level n').
  const BiGraph& tope(const LatticePoint& type);

 private:
  std::map<LatticePoint, TopeField> cache_;
};

}  // namespace tomkit

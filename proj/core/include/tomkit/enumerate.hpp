#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "tomkit/objects.hpp"

namespace tomkit {

enum class EnumKind {
  fms,
  pre_trianguloid,
  trianguloid,
  tope_arrangement,
  matching_field,
  linkage_matching_field
};

const char* enum_kind_name(EnumKind kind);
std::optional<EnumKind> enum_kind_from_name(std::string_view name);

struct EnumerationTask {
  EnumKind kind = EnumKind::fms;
  /// Left size; n' for the field kinds.
  int n = 1;
  int d = 1;
  /// Search nodes allowed before giving up; nullopt for no limit.
  std::optional<std::uint64_t> node_budget;
  /// Worker threads over the top-level branches; 0 picks the hardware count.
  int threads = 1;
  /// Keep one object per orbit of the S_n x S_d relabeling action.
  bool quotient = false;
  /// Largest n + d accepted; 0 picks default_size_limit(kind).
  int max_n_plus_d = 0;
};

/// Desk-scale bound on n + d per kind.
int default_size_limit(EnumKind kind);

struct EnumerationStats {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  /// False when the node budget ran out; the count is then a lower bound.
  bool complete = true;
};

/// Calls sink on every valid object of the kind exactly once, in a fixed
/// order that does not depend on the thread count. Objects are canonical:
/// cells sorted, topes by position. Throws std::invalid_argument for sizes
/// out of range.
EnumerationStats enumerate(const EnumerationTask& task, const std::function<void(const ObjectHandle&)>& sink);

/// Same search without materializing the stream.
EnumerationStats count(const EnumerationTask& task);

/// All valid objects, or throws std::runtime_error if the budget ran out.
std::vector<ObjectHandle> enumerate_all(const EnumerationTask& task);

/// Every left semi-matching of K_{n,d} with right degree vector v, sorted.
std::vector<BiGraph> topes_at(int n, const LatticePoint& v);

/// Spanning trees of K_{n,d} with right degree vector v, sorted.
std::vector<BiGraph> trees_at(int n, const LatticePoint& v);

/// g with left vertex i renamed to left[i] and right j to right[j].
BiGraph relabel(const BiGraph& g, const std::vector<int>& left, const std::vector<int>& right);

}  // namespace tomkit

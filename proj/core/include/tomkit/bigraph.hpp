#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace tomkit {

enum class Side { left, right };

/// An edge (i, j) of K_{n,d}; both indices are 0-based.
struct Edge {
  int left = 0;
  int right = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A subgraph of the complete bipartite graph K_{n,d}.
///
/// Left vertices are 0..n-1, right vertices are 0..d-1. Storage is a dense
/// bit matrix: one 64-bit row per left vertex, so both sides are limited to
/// kMaxSide vertices. Set semantics on edges.
class BiGraph {
 public:
  static constexpr int kMaxSide = 64;

  BiGraph() = default;
  BiGraph(int n, int d);
  BiGraph(int n, int d, std::initializer_list<Edge> edges);
  BiGraph(int n, int d, std::span<const Edge> edges);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }

  bool has_edge(int i, int j) const;
  BiGraph& add_edge(int i, int j);
  BiGraph& remove_edge(int i, int j);
  BiGraph& set_row(int i, std::uint64_t mask);

  /// Right neighbours of left vertex i as a bit mask.
  std::uint64_t row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  /// Left neighbours of right vertex j as a bit mask.
  std::uint64_t column(int j) const;

  int left_degree(int i) const;
  int right_degree(int j) const;
  int edge_count() const;
  bool empty() const;

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const;

  /// Left vertices of positive degree, as a mask.
  std::uint64_t left_support() const;
  /// Right vertices of positive degree, as a mask.
  std::uint64_t right_support() const;

  bool is_subgraph_of(const BiGraph& other) const;

  BiGraph& operator|=(const BiGraph& other);
  BiGraph& operator&=(const BiGraph& other);
  BiGraph& operator-=(const BiGraph& other);
  friend BiGraph operator|(BiGraph a, const BiGraph& b) { return a |= b; }
  friend BiGraph operator&(BiGraph a, const BiGraph& b) { return a &= b; }
  friend BiGraph operator-(BiGraph a, const BiGraph& b) { return a -= b; }

  friend bool operator==(const BiGraph&, const BiGraph&) = default;
  /// Orders by (n, d), then by the sorted edge list.
  friend std::strong_ordering operator<=>(const BiGraph& a, const BiGraph& b);

  std::size_t hash() const noexcept;

 private:
  void check_edge(int i, int j) const;
  void check_same_shape(const BiGraph& other) const;

  int n_ = 0;
  int d_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct BiGraphHash {
  std::size_t operator()(const BiGraph& g) const noexcept { return g.hash(); }
};

struct DegreeVector {
  Side side = Side::left;
  std::vector<int> values;
  friend bool operator==(const DegreeVector&, const DegreeVector&) = default;
};

DegreeVector degree_vector(const BiGraph& g, Side side);

struct GraphClass {
  bool forest = false;
  bool spanning_tree = false;
  bool tope = false;  // left semi-matching
  bool right_semimatching = false;
  bool partial_matching = false;
  bool partial_left_semimatching = false;
  bool partial_right_semimatching = false;
};

GraphClass classify(const BiGraph& g);

bool is_forest(const BiGraph& g);
bool is_spanning_tree(const BiGraph& g);
bool is_tope(const BiGraph& g);

/// True iff every edge lies inside left_mask x right_mask and the graph is a
/// spanning tree on exactly those vertices.
bool is_tree_on(const BiGraph& g, std::uint64_t left_mask,
                std::uint64_t right_mask);

/// True iff g is a spanning tree on its support (the vertices of positive
/// degree) and has at least one edge.
bool is_tree_on_support(const BiGraph& g);

/// Two vertex sets and the matching each graph induces between them.
struct CompatibilityWitness {
  std::uint64_t left_set = 0;
  std::uint64_t right_set = 0;
  BiGraph first_matching;
  BiGraph second_matching;
};

/// Compatibility of two forests: the compatibility graph U(g, h) contains no
/// simple directed cycle of length at least 4. Throws std::invalid_argument
/// if either input is not a forest or the shapes differ.
bool are_compatible(const BiGraph& g, const BiGraph& h);

/// A nontrivial cycle of U(g, h) read back as two distinct perfect matchings
/// on the same vertex sets; nullopt iff the forests are compatible.
std::optional<CompatibilityWitness> compatibility_witness(const BiGraph& g,
                                                          const BiGraph& h);

struct Vertex {
  Side side = Side::left;
  int index = 0;
};

enum class PushPull { push, pull };

/// Push or pull of a tree relative to one of its vertices.
///
/// Orient every edge away from (push) or towards (pull) the chosen vertex.
/// For a left vertex keep the edges oriented right-to-left; for a right
/// vertex keep the edges oriented left-to-right. The input must be a
/// spanning tree on its support and the vertex must lie in the support.
BiGraph push_pull(const BiGraph& tree, Vertex v, PushPull mode);

/// Order-preserving compaction after removing one vertex.
struct MinorResult {
  BiGraph graph;
  /// old index -> new index on the affected side; -1 for the removed vertex.
  std::vector<int> index_map;
};

MinorResult single_vertex_minor(const BiGraph& g, Vertex v);

/// Restriction of g to the kept vertices with order-preserving renumbering.
BiGraph restrict_graph(const BiGraph& g, std::uint64_t keep_left,
                       std::uint64_t keep_right);

/// Calls fn on every subgraph of g whose rows are all nonempty.
void for_each_honest_subgraph(const BiGraph& g,
                              const std::function<void(const BiGraph&)>& fn);

/// Calls fn on every subgraph of g (2^|E| of them).
void for_each_subgraph(const BiGraph& g,
                       const std::function<void(const BiGraph&)>& fn);

/// Calls fn on every tope (one edge per left vertex) contained in g.
void for_each_tope_in(const BiGraph& g,
                      const std::function<void(const BiGraph&)>& fn);

/// The complete bipartite graph K_{n,d}.
BiGraph complete_graph(int n, int d);

/// All spanning trees of K_{n,d}, in increasing BiGraph order.
std::vector<BiGraph> spanning_trees(int n, int d);

}  // namespace tomkit

template <>
struct std::hash<tomkit::BiGraph> {
  std::size_t operator()(const tomkit::BiGraph& g) const noexcept {
    return g.hash();
  }
};

#include "tomkit/bigraph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tomkit {
namespace {

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

class UnionFind {
 public:
  explicit UnionFind(int size) : parent_(static_cast<std::size_t>(size)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  /// Returns false when a and b were already joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Arc structure of the compatibility graph U(g, h): left vertex i is node i,
// right vertex j is node n + j. Edges of g point left-to-right, edges of h
// point right-to-left.
struct CompatDigraph {
  int n = 0;
  int d = 0;
  std::vector<std::vector<int>> out;

  CompatDigraph(const BiGraph& g, const BiGraph& h)
      : n(g.n()), d(g.d()), out(static_cast<std::size_t>(g.n() + g.d())) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) {
        if (g.has_edge(i, j)) out[i].push_back(n + j);
        if (h.has_edge(i, j)) out[n + j].push_back(i);
      }
    }
  }
  int size() const { return n + d; }
};

std::vector<int> strongly_connected_components(const CompatDigraph& dg) {
  // Iterative Tarjan.
  const int size = dg.size();
  std::vector<int> index(size, -1), low(size, 0), comp(size, -1);
  std::vector<bool> on_stack(size, false);
  std::vector<int> stack;
  int counter = 0;
  int comp_count = 0;
  struct Frame {
    int v;
    std::size_t next;
  };
  for (int root = 0; root < size; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& succ = dg.out[f.v];
      if (f.next < succ.size()) {
        int w = succ[f.next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      int v = f.v;
      frames.pop_back();
      if (!frames.empty()) {
        low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
        } while (w != v);
        ++comp_count;
      }
    }
  }
  return comp;
}

// Shortest path from `from` to `to` that does not use the arc skip_from ->
// skip_to. Returns the node sequence or an empty vector.
std::vector<int> shortest_path(const CompatDigraph& dg, int from, int to,
                               int skip_from, int skip_to) {
  std::vector<int> prev(dg.size(), -2);
  std::deque<int> queue{from};
  prev[from] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (int w : dg.out[v]) {
      if (v == skip_from && w == skip_to) continue;
      if (prev[w] != -2) continue;
      prev[w] = v;
      queue.push_back(w);
    }
  }
  if (prev[to] == -2) return {};
  std::vector<int> path;
  for (int v = to; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

void require_forest_pair(const BiGraph& g, const BiGraph& h) {
  if (g.n() != h.n() || g.d() != h.d()) {
    throw std::invalid_argument("are_compatible: graphs have different shapes");
  }
  if (!is_forest(g) || !is_forest(h)) {
    throw std::invalid_argument("are_compatible: inputs must be forests");
  }
}

}  // namespace

BiGraph::BiGraph(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 1 || n > kMaxSide || d > kMaxSide) {
    throw std::invalid_argument("BiGraph: sides must lie in 1..64, got (" +
                                std::to_string(n) + ", " + std::to_string(d) +
                                ")");
  }
  rows_.assign(static_cast<std::size_t>(n), 0);
}

BiGraph::BiGraph(int n, int d, std::initializer_list<Edge> edges)
    : BiGraph(n, d, std::span<const Edge>(edges.begin(), edges.size())) {}

BiGraph::BiGraph(int n, int d, std::span<const Edge> edges) : BiGraph(n, d) {
  for (const Edge& e : edges) add_edge(e.left, e.right);
}

void BiGraph::check_edge(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= d_) {
    throw std::out_of_range("BiGraph: edge (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") out of range");
  }
}

void BiGraph::check_same_shape(const BiGraph& other) const {
  if (n_ != other.n_ || d_ != other.d_) {
    throw std::invalid_argument("BiGraph: shape mismatch");
  }
}

bool BiGraph::has_edge(int i, int j) const {
  check_edge(i, j);
  return (rows_[i] >> j) & 1U;
}

BiGraph& BiGraph::add_edge(int i, int j) {
  check_edge(i, j);
  rows_[i] |= std::uint64_t{1} << j;
  return *this;
}

BiGraph& BiGraph::remove_edge(int i, int j) {
  check_edge(i, j);
  rows_[i] &= ~(std::uint64_t{1} << j);
  return *this;
}

BiGraph& BiGraph::set_row(int i, std::uint64_t mask) {
  check_edge(i, 0);
  if (mask & ~low_mask(d_)) throw std::out_of_range("BiGraph: row mask");
  rows_[i] = mask;
  return *this;
}

std::uint64_t BiGraph::column(int j) const {
  check_edge(0, j);
  std::uint64_t mask = 0;
  for (int i = 0; i < n_; ++i) {
    if ((rows_[i] >> j) & 1U) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

int BiGraph::left_degree(int i) const {
  check_edge(i, 0);
  return std::popcount(rows_[i]);
}

int BiGraph::right_degree(int j) const { return std::popcount(column(j)); }

int BiGraph::edge_count() const {
  int count = 0;
  for (auto r : rows_) count += std::popcount(r);
  return count;
}

bool BiGraph::empty() const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](std::uint64_t r) { return r == 0; });
}

std::vector<Edge> BiGraph::edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < n_; ++i) {
    for (std::uint64_t r = rows_[i]; r; r &= r - 1) {
      out.push_back({i, std::countr_zero(r)});
    }
  }
  return out;
}

std::uint64_t BiGraph::left_support() const {
  std::uint64_t mask = 0;
  for (int i = 0; i < n_; ++i) {
    if (rows_[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::uint64_t BiGraph::right_support() const {
  std::uint64_t mask = 0;
  for (auto r : rows_) mask |= r;
  return mask;
}

bool BiGraph::is_subgraph_of(const BiGraph& other) const {
  check_same_shape(other);
  for (int i = 0; i < n_; ++i) {
    if (rows_[i] & ~other.rows_[i]) return false;
  }
  return true;
}

BiGraph& BiGraph::operator|=(const BiGraph& other) {
  check_same_shape(other);
  for (int i = 0; i < n_; ++i) rows_[i] |= other.rows_[i];
  return *this;
}

BiGraph& BiGraph::operator&=(const BiGraph& other) {
  check_same_shape(other);
  for (int i = 0; i < n_; ++i) rows_[i] &= other.rows_[i];
  return *this;
}

BiGraph& BiGraph::operator-=(const BiGraph& other) {
  check_same_shape(other);
  for (int i = 0; i < n_; ++i) rows_[i] &= ~other.rows_[i];
  return *this;
}

std::strong_ordering operator<=>(const BiGraph& a, const BiGraph& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.d_ <=> b.d_; c != 0) return c;
  // Lexicographic comparison of the sorted edge lists, row by row.
  for (int i = 0; i < a.n_; ++i) {
    std::uint64_t ra = a.rows_[i], rb = b.rows_[i];
    if (ra == rb) continue;
    int x = std::countr_zero(ra ^ rb);
    bool a_has = (ra >> x) & 1U;
    const BiGraph& other = a_has ? b : a;
    std::uint64_t other_row = a_has ? rb : ra;
    bool other_continues = (other_row >> x) != 0;
    for (int k = i + 1; !other_continues && k < other.n_; ++k) {
      other_continues = other.rows_[k] != 0;
    }
    // The graph holding edge (i, x) is smaller iff the other list continues.
    bool a_less = a_has ? other_continues : !other_continues;
    return a_less ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t BiGraph::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(n_) * 1000003U ^
                  static_cast<std::size_t>(d_);
  for (auto r : rows_) {
    h ^= std::hash<std::uint64_t>{}(r) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

DegreeVector degree_vector(const BiGraph& g, Side side) {
  DegreeVector dv{side, {}};
  if (side == Side::left) {
    for (int i = 0; i < g.n(); ++i) dv.values.push_back(g.left_degree(i));
  } else {
    dv.values.assign(static_cast<std::size_t>(g.d()), 0);
    for (int i = 0; i < g.n(); ++i) {
      for (std::uint64_t r = g.row(i); r; r &= r - 1) {
        ++dv.values[std::countr_zero(r)];
      }
    }
  }
  return dv;
}

bool is_forest(const BiGraph& g) {
  UnionFind uf(g.n() + g.d());
  for (const Edge& e : g.edges()) {
    if (!uf.unite(e.left, g.n() + e.right)) return false;
  }
  return true;
}

bool is_spanning_tree(const BiGraph& g) {
  return g.edge_count() == g.n() + g.d() - 1 && is_forest(g);
}

bool is_tope(const BiGraph& g) {
  for (int i = 0; i < g.n(); ++i) {
    if (std::popcount(g.row(i)) != 1) return false;
  }
  return true;
}

bool is_tree_on(const BiGraph& g, std::uint64_t left_mask,
                std::uint64_t right_mask) {
  const int vertices = std::popcount(left_mask) + std::popcount(right_mask);
  if (vertices == 0) return false;
  for (int i = 0; i < g.n(); ++i) {
    std::uint64_t r = g.row(i);
    if (!r) continue;
    if (!((left_mask >> i) & 1U) || (r & ~right_mask)) return false;
  }
  return g.edge_count() == vertices - 1 && is_forest(g);
}

bool is_tree_on_support(const BiGraph& g) {
  return !g.empty() && is_tree_on(g, g.left_support(), g.right_support());
}

GraphClass classify(const BiGraph& g) {
  GraphClass c;
  c.forest = is_forest(g);
  c.spanning_tree = c.forest && g.edge_count() == g.n() + g.d() - 1;
  auto ld = degree_vector(g, Side::left).values;
  auto rd = degree_vector(g, Side::right).values;
  auto all = [](const std::vector<int>& v, auto pred) {
    return std::all_of(v.begin(), v.end(), pred);
  };
  c.tope = all(ld, [](int x) { return x == 1; });
  c.right_semimatching = all(rd, [](int x) { return x == 1; });
  c.partial_left_semimatching = all(ld, [](int x) { return x <= 1; });
  c.partial_right_semimatching = all(rd, [](int x) { return x <= 1; });
  c.partial_matching = c.partial_left_semimatching && c.partial_right_semimatching;
  return c;
}

bool are_compatible(const BiGraph& g, const BiGraph& h) {
  require_forest_pair(g, h);
  CompatDigraph dg(g, h);
  auto comp = strongly_connected_components(dg);
  const int n = g.n();
  std::vector<int> comp_size(dg.size(), 0);
  std::vector<int> comp_edges(dg.size(), 0);
  for (int v = 0; v < dg.size(); ++v) ++comp_size[comp[v]];
  // Inside a strongly connected component every cycle is a 2-cycle iff all
  // arcs come in opposite pairs and the underlying graph is a tree.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < g.d(); ++j) {
      bool in_g = g.has_edge(i, j), in_h = h.has_edge(i, j);
      if (!in_g && !in_h) continue;
      if (comp[i] != comp[n + j]) continue;
      if (in_g != in_h) return false;
      ++comp_edges[comp[i]];
    }
  }
  for (int c = 0; c < dg.size(); ++c) {
    if (comp_size[c] > 0 && comp_edges[c] != comp_size[c] - 1) return false;
  }
  return true;
}

std::optional<CompatibilityWitness> compatibility_witness(const BiGraph& g,
                                                          const BiGraph& h) {
  require_forest_pair(g, h);
  CompatDigraph dg(g, h);
  std::vector<int> best;
  for (int u = 0; u < dg.size(); ++u) {
    for (int v : dg.out[u]) {
      auto path = shortest_path(dg, v, u, v, u);
      if (path.size() < 3) continue;  // the arc v->u itself is excluded
      if (best.empty() || path.size() < best.size()) {
        best = path;
        best.insert(best.begin(), u);
        best.pop_back();  // cycle u -> v -> ... -> (back to u)
      }
    }
  }
  if (best.empty()) return std::nullopt;
  const int n = g.n();
  CompatibilityWitness w{0, 0, BiGraph(g.n(), g.d()), BiGraph(g.n(), g.d())};
  for (std::size_t k = 0; k < best.size(); ++k) {
    int a = best[k];
    int b = best[(k + 1) % best.size()];
    if (a < n) {
      w.left_set |= std::uint64_t{1} << a;
      w.first_matching.add_edge(a, b - n);
    } else {
      w.right_set |= std::uint64_t{1} << (a - n);
      w.second_matching.add_edge(b, a - n);
    }
  }
  return w;
}

BiGraph push_pull(const BiGraph& tree, Vertex v, PushPull mode) {
  if (!is_tree_on_support(tree)) {
    throw std::invalid_argument("push_pull: input is not a tree on its support");
  }
  const bool on_left = v.side == Side::left;
  const int limit = on_left ? tree.n() : tree.d();
  if (v.index < 0 || v.index >= limit) {
    throw std::invalid_argument("push_pull: vertex out of range");
  }
  const std::uint64_t support =
      on_left ? tree.left_support() : tree.right_support();
  if (!((support >> v.index) & 1U)) {
    throw std::invalid_argument("push_pull: vertex not in the tree's support");
  }
  // Root the tree at v. For every non-root vertex the edge to its parent is
  // kept when the child lies on the left side (left push, right pull) or on
  // the right side (left pull, right push).
  const bool keep_left_children = on_left == (mode == PushPull::push);
  const int n = tree.n();
  BiGraph out(tree.n(), tree.d());
  std::vector<bool> seen(static_cast<std::size_t>(tree.n() + tree.d()), false);
  std::deque<int> queue;
  int root = on_left ? v.index : n + v.index;
  seen[root] = true;
  queue.push_back(root);
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (x < n) {
      for (std::uint64_t r = tree.row(x); r; r &= r - 1) {
        int j = std::countr_zero(r);
        if (seen[n + j]) continue;
        seen[n + j] = true;
        queue.push_back(n + j);
        if (!keep_left_children) out.add_edge(x, j);
      }
    } else {
      int j = x - n;
      for (std::uint64_t c = tree.column(j); c; c &= c - 1) {
        int i = std::countr_zero(c);
        if (seen[i]) continue;
        seen[i] = true;
        queue.push_back(i);
        if (keep_left_children) out.add_edge(i, j);
      }
    }
  }
  return out;
}

MinorResult single_vertex_minor(const BiGraph& g, Vertex v) {
  const bool on_left = v.side == Side::left;
  const int count = on_left ? g.n() : g.d();
  if (v.index < 0 || v.index >= count) {
    throw std::invalid_argument("single_vertex_minor: vertex out of range");
  }
  if (count == 1) {
    throw std::invalid_argument(
        "single_vertex_minor: cannot remove the only vertex on a side");
  }
  MinorResult result;
  result.index_map.resize(static_cast<std::size_t>(count));
  for (int k = 0, next = 0; k < count; ++k) {
    result.index_map[k] = k == v.index ? -1 : next++;
  }
  std::uint64_t keep_left = low_mask(g.n());
  std::uint64_t keep_right = low_mask(g.d());
  (on_left ? keep_left : keep_right) &= ~(std::uint64_t{1} << v.index);
  result.graph = restrict_graph(g, keep_left, keep_right);
  return result;
}

BiGraph restrict_graph(const BiGraph& g, std::uint64_t keep_left,
                       std::uint64_t keep_right) {
  keep_left &= low_mask(g.n());
  keep_right &= low_mask(g.d());
  BiGraph out(std::popcount(keep_left), std::popcount(keep_right));
  int new_i = 0;
  for (int i = 0; i < g.n(); ++i) {
    if (!((keep_left >> i) & 1U)) continue;
    std::uint64_t row = g.row(i), compact = 0;
    int new_j = 0;
    for (int j = 0; j < g.d(); ++j) {
      if (!((keep_right >> j) & 1U)) continue;
      if ((row >> j) & 1U) compact |= std::uint64_t{1} << new_j;
      ++new_j;
    }
    out.set_row(new_i++, compact);
  }
  return out;
}

namespace {

template <bool kNonempty>
void subgraph_rows(const BiGraph& g, BiGraph& current, int i,
                   const std::function<void(const BiGraph&)>& fn) {
  if (i == g.n()) {
    fn(current);
    return;
  }
  const std::uint64_t row = g.row(i);
  // Enumerate submasks of row in increasing numeric order.
  std::uint64_t sub = 0;
  while (true) {
    if (!kNonempty || sub != 0) {
      current.set_row(i, sub);
      subgraph_rows<kNonempty>(g, current, i + 1, fn);
    }
    if (sub == row) break;
    sub = (sub - row) & row;
  }
  current.set_row(i, 0);
}

}  // namespace

void for_each_honest_subgraph(const BiGraph& g,
                              const std::function<void(const BiGraph&)>& fn) {
  for (int i = 0; i < g.n(); ++i) {
    if (g.row(i) == 0) return;
  }
  BiGraph current(g.n(), g.d());
  subgraph_rows<true>(g, current, 0, fn);
}

void for_each_subgraph(const BiGraph& g,
                       const std::function<void(const BiGraph&)>& fn) {
  BiGraph current(g.n(), g.d());
  subgraph_rows<false>(g, current, 0, fn);
}

void for_each_tope_in(const BiGraph& g,
                      const std::function<void(const BiGraph&)>& fn) {
  BiGraph current(g.n(), g.d());
  std::function<void(int)> rec = [&](int i) {
    if (i == g.n()) {
      fn(current);
      return;
    }
    for (std::uint64_t r = g.row(i); r; r &= r - 1) {
      current.set_row(i, r & (~r + 1));
      rec(i + 1);
    }
    current.set_row(i, 0);
  };
  rec(0);
}

BiGraph complete_graph(int n, int d) {
  BiGraph g(n, d);
  for (int i = 0; i < n; ++i) g.set_row(i, low_mask(d));
  return g;
}

std::vector<BiGraph> spanning_trees(int n, int d) {
  std::vector<Edge> all;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) all.push_back({i, j});
  }
  const int needed = n + d - 1;
  std::vector<BiGraph> out;
  BiGraph current(n, d);
  // Choose edges in order; only accept an edge that joins two components.
  std::function<void(std::size_t, int, std::vector<int>)> rec =
      [&](std::size_t next, int chosen, std::vector<int> comp) {
        if (chosen == needed) {
          out.push_back(current);
          return;
        }
        if (static_cast<int>(all.size() - next) < needed - chosen) return;
        for (std::size_t k = next; k < all.size(); ++k) {
          const Edge& e = all[k];
          int a = comp[e.left], b = comp[n + e.right];
          if (a == b) continue;
          std::vector<int> merged = comp;
          for (int& c : merged) {
            if (c == a) c = b;
          }
          current.add_edge(e.left, e.right);
          rec(k + 1, chosen + 1, std::move(merged));
          current.remove_edge(e.left, e.right);
        }
      };
  std::vector<int> comp(static_cast<std::size_t>(n + d));
  std::iota(comp.begin(), comp.end(), 0);
  rec(0, 0, comp);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tomkit

#include "tomkit/treelink.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <stdexcept>
#include <string>

#include "tomkit/json_io.hpp"

namespace tomkit {

namespace {

int near_at(const LinkageEdge& e, int x) { return x == e.u ? e.near_u : e.near_v; }
int other_end(const LinkageEdge& e, int x) { return x == e.u ? e.v : e.u; }

std::vector<std::vector<int>> incident_edges(const TreeLinkageCovector& c) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(c.d));
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    out[static_cast<std::size_t>(c.edges[k].u)].push_back(static_cast<int>(k));
    out[static_cast<std::size_t>(c.edges[k].v)].push_back(static_cast<int>(k));
  }
  return out;
}

/// BFS from root: distance and the edge used to reach each vertex (-1 if none).
struct Bfs {
  std::vector<int> dist;
  std::vector<int> via;
};

Bfs bfs(const TreeLinkageCovector& c, int root) {
  auto inc = incident_edges(c);
  Bfs out{std::vector<int>(static_cast<std::size_t>(c.d), -1), std::vector<int>(static_cast<std::size_t>(c.d), -1)};
  std::queue<int> q;
  out.dist[static_cast<std::size_t>(root)] = 0;
  q.push(root);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int k : inc[static_cast<std::size_t>(x)]) {
      int y = other_end(c.edges[static_cast<std::size_t>(k)], x);
      if (out.dist[static_cast<std::size_t>(y)] >= 0) continue;
      out.dist[static_cast<std::size_t>(y)] = out.dist[static_cast<std::size_t>(x)] + 1;
      out.via[static_cast<std::size_t>(y)] = k;
      q.push(y);
    }
  }
  return out;
}

int vertex_labeled(const TreeLinkageCovector& c, int i) {
  for (int j = 0; j < c.d; ++j)
    if ((c.vertex_labels[static_cast<std::size_t>(j)] >> i) & 1U) return j;
  return -1;
}

nlohmann::json edge_json(const LinkageEdge& e) {
  return {{"u", e.u + 1}, {"v", e.v + 1}, {"near_u", e.near_u + 1}, {"near_v", e.near_v + 1}};
}

}  // namespace

TreeLinkageCovector build_covector(const FineMixedSubdivision& s, const LatticePoint& t) {
  if (s.n < 2) throw std::invalid_argument("tree-linkage covectors need n >= 2");
  if (static_cast<int>(t.size()) != s.d || !is_nonnegative(t) || level_of(t) != s.n - 2) {
    throw std::invalid_argument("t must be a lattice point of (n-2)Delta^{d-1}");
  }
  CellIndex index(s);
  std::vector<BiGraph> cells;
  for (int j = 0; j < s.d; ++j) {
    const BiGraph* cell = index.at(shifted(t, j, 1));
    if (!cell) {
      ValidationReport r;
      r.fail("missing_cell", {{"position", shifted(t, j, 1)}});
      throw ValidationError("no cell at a position t + e_j", r);
    }
    cells.push_back(*cell);
  }

  TreeLinkageCovector c{s.n, s.d, t, {}, std::vector<std::uint64_t>(static_cast<std::size_t>(s.d), 0),
                        complete_graph(s.n, s.d)};
  for (const auto& cell : cells) c.core_tope &= cell;
  for (int j = 0; j < s.d; ++j) c.vertex_labels[static_cast<std::size_t>(j)] = c.core_tope.column(j);
  for (int u = 0; u < s.d; ++u) {
    for (int v = u + 1; v < s.d; ++v) {
      BiGraph only_u = cells[static_cast<std::size_t>(u)];
      only_u -= cells[static_cast<std::size_t>(v)];
      BiGraph only_v = cells[static_cast<std::size_t>(v)];
      only_v -= cells[static_cast<std::size_t>(u)];
      if (only_u.edge_count() != 1 || only_v.edge_count() != 1) continue;
      Edge a = only_u.edges().front(), b = only_v.edges().front();
      if (a.right != u || b.right != v) continue;
      c.edges.push_back({u, v, a.left, b.left});
    }
  }

  ValidationReport r = check_covector_invariants(c);
  if (r.verdict()) {
    auto inc = incident_edges(c);
    for (int j = 0; j < s.d; ++j) {
      const BiGraph& cell = cells[static_cast<std::size_t>(j)];
      for (std::uint64_t col = cell.column(j); col; col &= col - 1) {
        int i = std::countr_zero(col);
        if (cell.left_degree(i) < 2) continue;
        int count = 0;
        for (int k : inc[static_cast<std::size_t>(j)]) count += near_at(c.edges[static_cast<std::size_t>(k)], j) == i;
        if (count != 1) r.fail("near_label_rule", {{"vertex", j + 1}, {"label", i + 1}, {"count", count}});
      }
      if (covector_pull(c, j) != cell) {
        r.fail("pull", {{"vertex", j + 1}, {"expected", graph_to_json(cell)},
                        {"actual", graph_to_json(covector_pull(c, j))}});
      }
    }
  }
  if (!r.verdict()) throw ValidationError("tree-linkage covector invariant failed", r);
  return c;
}

std::vector<TreeLinkageCovector> all_covectors(const FineMixedSubdivision& s) {
  std::vector<TreeLinkageCovector> out;
  for (const auto& t : lattice_points(s.n - 2, s.d)) out.push_back(build_covector(s, t));
  return out;
}

BiGraph covector_pull(const TreeLinkageCovector& c, int j) {
  if (j < 0 || j >= c.d) throw std::invalid_argument("covector_pull: right index out of range");
  auto dist = bfs(c, j).dist;
  BiGraph out = c.core_tope;
  for (const auto& e : c.edges) {
    int closer = dist[static_cast<std::size_t>(e.u)] < dist[static_cast<std::size_t>(e.v)] ? e.u : e.v;
    out.add_edge(near_at(e, closer), closer);
  }
  return out;
}

LatticePoint augmented_degrees(const TreeLinkageCovector& c) {
  LatticePoint out(static_cast<std::size_t>(c.d), 0);
  for (const auto& e : c.edges) {
    ++out[static_cast<std::size_t>(e.u)];
    ++out[static_cast<std::size_t>(e.v)];
  }
  for (int j = 0; j < c.d; ++j) out[static_cast<std::size_t>(j)] += std::popcount(c.vertex_labels[static_cast<std::size_t>(j)]);
  return out;
}

ValidationReport check_covector_invariants(const TreeLinkageCovector& c) {
  ValidationReport r;
  auto dist = bfs(c, 0).dist;
  bool connected = std::none_of(dist.begin(), dist.end(), [](int x) { return x < 0; });
  if (!connected || static_cast<int>(c.edges.size()) != c.d - 1) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : c.edges) edges.push_back(edge_json(e));
    r.fail("tree", {{"edges", edges}, {"connected", connected}});
  }
  for (const auto& e : c.edges) {
    if (e.near_u == e.near_v) r.fail("near_labels", edge_json(e));
  }
  std::uint64_t seen = 0;
  for (int j = 0; j < c.d; ++j) {
    std::uint64_t labels = c.vertex_labels[static_cast<std::size_t>(j)];
    if (seen & labels) r.fail("vertex_labels", {{"vertex", j + 1}, {"repeated", mask_to_json(seen & labels)}});
    seen |= labels;
  }
  std::uint64_t all_left = c.n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << c.n) - 1;
  if (seen != all_left) r.fail("vertex_labels", {{"missing", mask_to_json(all_left & ~seen)}});
  if (!is_tope(c.core_tope)) r.fail("core_tope", {{"core_tope", graph_to_json(c.core_tope)}});
  auto aug = augmented_degrees(c);
  LatticePoint expected = c.t;
  for (int& x : expected) x += 2;
  if (aug != expected) r.fail("augmented_degree", {{"expected", expected}, {"actual", aug}});
  return r;
}

std::vector<int> covector_path(const TreeLinkageCovector& c, int a, int b) {
  auto tree = bfs(c, a);
  if (tree.dist[static_cast<std::size_t>(b)] < 0) throw std::invalid_argument("covector_path: unreachable vertex");
  std::vector<int> out{b};
  for (int x = b; x != a;) {
    x = other_end(c.edges[static_cast<std::size_t>(tree.via[static_cast<std::size_t>(x)])], x);
    out.push_back(x);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

ValidationReport check_path_labels(const TreeLinkageCovector& c) {
  ValidationReport r;
  for (int a = 0; a < c.d; ++a) {
    auto tree = bfs(c, a);
    for (int b = 0; b < c.d; ++b) {
      if (a == b || tree.dist[static_cast<std::size_t>(b)] < 0) continue;
      auto path = covector_path(c, a, b);
      const int len = static_cast<int>(path.size()) - 1;
      // near[k] = i_k at path[k] towards path[k+1]; far[k] = i'_k at path[k].
      std::vector<int> near(static_cast<std::size_t>(len + 1), -1), far(static_cast<std::size_t>(len + 1), -1);
      for (int k = 0; k < len; ++k) {
        int x = path[static_cast<std::size_t>(k)], y = path[static_cast<std::size_t>(k + 1)];
        auto it = std::find_if(c.edges.begin(), c.edges.end(), [&](const LinkageEdge& e) {
          return (e.u == x && e.v == y) || (e.u == y && e.v == x);
        });
        near[static_cast<std::size_t>(k)] = near_at(*it, x);
        far[static_cast<std::size_t>(k + 1)] = near_at(*it, y);
      }
      auto where = [&](int k, int k2, int label) {
        nlohmann::json p = nlohmann::json::array();
        for (int x : path) p.push_back(x + 1);
        return nlohmann::json{{"path", p}, {"k", k}, {"k_prime", k2}, {"label", label + 1}};
      };
      for (int k = 1; k <= len - 1; ++k)
        for (int k2 = k; k2 <= len - 1; ++k2)
          if (far[static_cast<std::size_t>(k)] == near[static_cast<std::size_t>(k2)])
            r.fail("edge_labels_point_at_each_other", where(k, k2, far[static_cast<std::size_t>(k)]));
      for (int k = 0; k <= len; ++k) {
        for (std::uint64_t labels = c.vertex_labels[static_cast<std::size_t>(path[static_cast<std::size_t>(k)])]; labels;
             labels &= labels - 1) {
          int i = std::countr_zero(labels);
          for (int k2 = k; k2 <= len - 1; ++k2)
            if (near[static_cast<std::size_t>(k2)] == i) r.fail("edge_label_points_at_vertex_label", where(k, k2, i));
          for (int k2 = 1; k2 <= k; ++k2)
            if (far[static_cast<std::size_t>(k2)] == i) r.fail("edge_label_points_at_vertex_label", where(k, k2, i));
        }
      }
    }
  }
  for (const auto& e : c.edges) {
    for (int x : {e.u, e.v}) {
      int i = near_at(e, x);
      int w = vertex_labeled(c, i);
      if (w < 0) continue;
      auto dist = bfs(c, w).dist;
      if (dist[static_cast<std::size_t>(x)] <= dist[static_cast<std::size_t>(other_end(e, x))]) {
        r.fail("label_orientation", {{"edge", edge_json(e)}, {"end", x + 1}, {"labeled_vertex", w + 1}});
      }
    }
  }
  return r;
}

nlohmann::json to_json(const TreeLinkageCovector& c) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : c.edges) edges.push_back(edge_json(e));
  nlohmann::json labels = nlohmann::json::object();
  for (int j = 0; j < c.d; ++j) labels[std::to_string(j + 1)] = mask_to_json(c.vertex_labels[static_cast<std::size_t>(j)]);
  return {{"kind", "tree_linkage_covector"},
          {"t", c.t},
          {"edges", std::move(edges)},
          {"vertex_labels", std::move(labels)},
          {"core_tope", graph_to_json(c.core_tope)}};
}

}  // namespace tomkit

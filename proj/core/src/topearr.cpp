#include "tomkit/topearr.hpp"

#include <bit>
#include <deque>
#include <stdexcept>

#include "tomkit/json_io.hpp"

namespace tomkit {
namespace {

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

nlohmann::json point_json(const LatticePoint& p) { return nlohmann::json(p); }

std::vector<int> support_indices(const LatticePoint& w) {
  std::vector<int> out;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] >= 1) out.push_back(static_cast<int>(j));
  }
  return out;
}

}  // namespace

TopeArrangement::TopeArrangement(int n, int d, std::vector<BiGraph> topes)
    : n_(n), d_(d), topes_(std::move(topes)) {
  if (n < 1 || d < 1) throw std::invalid_argument("TopeArrangement: n and d must be positive");
  if (topes_.size() != lattice_count(n, d)) {
    throw std::invalid_argument("TopeArrangement: need one tope per lattice point");
  }
  for (const auto& t : topes_) {
    if (t.n() != n || t.d() != d) {
      throw std::invalid_argument("TopeArrangement: tope has a different ambient size");
    }
  }
}

bool TopeArrangement::has_point(const LatticePoint& v) const {
  return static_cast<int>(v.size()) == d_ && is_nonnegative(v) && level_of(v) == n_;
}

const BiGraph& TopeArrangement::at(const LatticePoint& v) const {
  if (!has_point(v)) throw std::out_of_range("TopeArrangement: position out of range");
  return topes_[colex_rank(v)];
}

ValidationReport check_structure(const TopeArrangement& a) {
  ValidationReport report;
  for (const auto& v : lattice_points(a.n(), a.d())) {
    const BiGraph& t = a.at(v);
    if (!is_tope(t) || degree_vector(t, Side::right).values != v) {
      report.fail("structure", {{"position", point_json(v)}, {"tope", graph_to_json(t)}});
    }
  }
  return report;
}

ValidationReport check_sector(const TopeArrangement& a) {
  ValidationReport report;
  for (const auto& v : lattice_points(a.n(), a.d())) {
    for (int j = 0; j < a.d(); ++j) {
      if (v[j] < 1) continue;
      for (int j2 = 0; j2 < a.d(); ++j2) {
        if (j2 == j) continue;
        LatticePoint v2 = shifted(shifted(v, j, -1), j2, 1);
        std::uint64_t outer = preimage(a.at(v), j);
        std::uint64_t inner = preimage(a.at(v2), j);
        if ((inner & ~outer) == 0 && std::popcount(outer) == std::popcount(inner) + 1) continue;
        report.fail("sector", {{"v", point_json(v)}, {"v_prime", point_json(v2)}, {"right", j + 1}});
      }
    }
  }
  return report;
}

ValidationReport check_hexagon(const TopeArrangement& a) {
  ValidationReport report;
  for (const auto& w : lattice_points(a.n() + 1, a.d())) {
    auto supp = support_indices(w);
    for (int j1 : supp) {
      for (int j2 : supp) {
        for (int j3 : supp) {
          if (j1 == j2 || j2 == j3 || j1 == j3) continue;
          const BiGraph& t1 = a.at(shifted(w, j1, -1));
          const BiGraph& t2 = a.at(shifted(w, j2, -1));
          const BiGraph& t3 = a.at(shifted(w, j3, -1));
          if (preimage(t1, j2) == preimage(t3, j2)) continue;
          if (preimage(t1, j3) == preimage(t2, j3)) continue;
          report.fail("hexagon",
                      {{"w", point_json(w)}, {"j1", j1 + 1}, {"j2", j2 + 1}, {"j3", j3 + 1}});
        }
      }
    }
  }
  return report;
}

ValidationReport validate_arrangement(const TopeArrangement& a, ArrangementLevel level) {
  ValidationReport report = check_structure(a);
  if (!report.verdict()) return report;
  switch (level) {
    case ArrangementLevel::tope_arrangement: {
      const auto& ts = a.topes();
      for (std::size_t x = 0; x < ts.size(); ++x) {
        for (std::size_t y = x + 1; y < ts.size(); ++y) {
          if (are_compatible(ts[x], ts[y])) continue;
          report.fail("compatibility", {{"first", graph_to_json(ts[x])},
                                        {"second", graph_to_json(ts[y])}});
        }
      }
      break;
    }
    case ArrangementLevel::pre_trianguloid:
      report.absorb(check_sector(a));
      break;
    case ArrangementLevel::trianguloid:
      report.absorb(check_sector(a));
      report.absorb(check_hexagon(a));
      break;
  }
  return report;
}

BiGraph delta_union(const TopeArrangement& a, const LatticePoint& u) {
  if (static_cast<int>(u.size()) != a.d() || !is_nonnegative(u) || level_of(u) != a.n() - 1) {
    throw std::invalid_argument("delta_union: u must lie at level n - 1");
  }
  BiGraph out(a.n(), a.d());
  for (int j = 0; j < a.d(); ++j) out |= a.at(shifted(u, j, 1));
  return out;
}

namespace {

// Empty string when the Delta-linkage conditions hold at u.
std::string delta_problem(const TopeArrangement& a, const LatticePoint& u, const BiGraph& tree) {
  if (!is_spanning_tree(tree)) return "not a spanning tree";
  auto rd = degree_vector(tree, Side::right).values;
  for (int j = 0; j < a.d(); ++j) {
    if (rd[j] != u[j] + 1) return "right degrees differ from u + 1";
  }
  for (int j = 0; j < a.d(); ++j) {
    if (push_pull(tree, {Side::right, j}, PushPull::pull) != a.at(shifted(u, j, 1))) {
      return "pull does not recover the tope";
    }
  }
  return {};
}

}  // namespace

BiGraph delta_covector(const TopeArrangement& a, const LatticePoint& u) {
  BiGraph tree = delta_union(a, u);
  if (auto problem = delta_problem(a, u, tree); !problem.empty()) {
    ValidationReport r;
    r.fail("delta_linkage", {{"u", point_json(u)}, {"union", graph_to_json(tree)}, {"reason", problem}});
    throw ValidationError("delta_covector: " + problem, r);
  }
  return tree;
}

ValidationReport check_delta_linkage(const TopeArrangement& a) {
  ValidationReport report;
  if (a.n() < 1) return report;
  for (const auto& u : lattice_points(a.n() - 1, a.d())) {
    BiGraph tree = delta_union(a, u);
    if (auto problem = delta_problem(a, u, tree); !problem.empty()) {
      report.fail("delta_linkage",
                  {{"u", point_json(u)}, {"union", graph_to_json(tree)}, {"reason", problem}});
    }
  }
  return report;
}

namespace {

BiGraph chow_intersection(const TopeArrangement& a, const LatticePoint& w) {
  BiGraph out = complete_graph(a.n(), a.d());
  for (int j : support_indices(w)) out &= a.at(shifted(w, j, -1));
  return out;
}

bool chow_degrees_ok(const BiGraph& omega, const LatticePoint& w) {
  for (int i = 0; i < omega.n(); ++i) {
    if (omega.left_degree(i) > 1) return false;
  }
  auto rd = degree_vector(omega, Side::right).values;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (rd[j] != (w[j] >= 1 ? w[j] - 1 : 0)) return false;
  }
  return true;
}

void require_level(const TopeArrangement& a, const LatticePoint& w) {
  if (static_cast<int>(w.size()) != a.d() || !is_nonnegative(w) || level_of(w) != a.n() + 1) {
    throw std::invalid_argument("w must lie at level n + 1");
  }
}

}  // namespace

NablaCovector nabla_covector(const TopeArrangement& a, const LatticePoint& w) {
  require_level(a, w);
  NablaCovector c{BiGraph(a.n(), a.d()), false, false};
  auto supp = support_indices(w);
  for (int j : supp) c.graph |= a.at(shifted(w, j, -1));
  c.tree = is_tree_on(c.graph, low_mask(a.n()), support_mask(w));
  for (int i = 0; i < a.n() && c.tree; ++i) {
    int deg = c.graph.left_degree(i);
    if (deg != 1 && deg != 2) c.tree = false;
  }
  if (c.tree) {
    const BiGraph omega = chow_intersection(a, w);
    c.decomposition = true;
    for (int j : supp) {
      BiGraph push = push_pull(c.graph, {Side::right, j}, PushPull::push);
      if (!(omega & push).empty() || (omega | push) != a.at(shifted(w, j, -1))) {
        c.decomposition = false;
      }
    }
  }
  return c;
}

ValidationReport check_nabla_linkage(const TopeArrangement& a) {
  ValidationReport report;
  for (const auto& w : lattice_points(a.n() + 1, a.d())) {
    auto c = nabla_covector(a, w);
    if (!c.tree) {
      report.fail("nabla_tree", {{"w", point_json(w)}, {"union", graph_to_json(c.graph)}});
    } else if (!c.decomposition) {
      report.fail("nabla_decomposition", {{"w", point_json(w)}, {"union", graph_to_json(c.graph)}});
    }
  }
  return report;
}

ChowCovector chow_covector(const TopeArrangement& a, const LatticePoint& w) {
  require_level(a, w);
  ChowCovector c{chow_intersection(a, w), w};
  if (!chow_degrees_ok(c.graph, w)) {
    ValidationReport r;
    r.fail("chow_degrees", {{"w", point_json(w)}, {"omega", graph_to_json(c.graph)}});
    throw ValidationError("chow_covector: unexpected degrees", r);
  }
  return c;
}

ValidationReport check_chow(const TopeArrangement& a) {
  ValidationReport report;
  for (const auto& w : lattice_points(a.n() + 1, a.d())) {
    BiGraph omega = chow_intersection(a, w);
    if (!chow_degrees_ok(omega, w)) {
      report.fail("chow_degrees", {{"w", point_json(w)}, {"omega", graph_to_json(omega)}});
    }
  }
  for (const auto& v : lattice_points(a.n(), a.d())) {
    BiGraph rebuilt(a.n(), a.d());
    for (int j = 0; j < a.d(); ++j) rebuilt |= chow_intersection(a, shifted(v, j, 1));
    if (rebuilt != a.at(v)) {
      report.fail("chow_reconstruction", {{"v", point_json(v)}, {"union", graph_to_json(rebuilt)}});
    }
  }
  return report;
}

std::optional<ValidationReport> refinement_closure_check(const TopeArrangement& a) {
  for (const auto& w : lattice_points(a.n() + 1, a.d())) {
    if (!is_forest(nabla_covector(a, w).graph)) return std::nullopt;
  }
  ValidationReport report;
  for (const auto& u : lattice_points(a.n() - 1, a.d())) {
    BiGraph tree = delta_union(a, u);
    if (!is_spanning_tree(tree)) {
      report.fail("delta_linkage", {{"u", point_json(u)}, {"union", graph_to_json(tree)}});
      continue;
    }
    for_each_tope_in(tree, [&](const BiGraph& t) {
      auto pos = degree_vector(t, Side::right).values;
      if (a.at(pos) != t) {
        report.fail("refinement_closure", {{"u", point_json(u)}, {"tope", graph_to_json(t)}});
      }
    });
  }
  return report;
}

namespace {

// Node path in a tree from node `from` to node `to`; right vertex j is node
// n + j.
std::vector<int> node_path(const BiGraph& tree, int from, int to) {
  const int n = tree.n();
  std::vector<int> prev(static_cast<std::size_t>(n + tree.d()), -2);
  std::deque<int> queue{from};
  prev[from] = -1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    auto visit = [&](int y) {
      if (prev[y] != -2) return;
      prev[y] = x;
      queue.push_back(y);
    };
    if (x < n) {
      for (std::uint64_t r = tree.row(x); r; r &= r - 1) visit(n + std::countr_zero(r));
    } else {
      for (std::uint64_t c = tree.column(x - n); c; c &= c - 1) visit(std::countr_zero(c));
    }
  }
  if (prev[to] == -2) throw std::invalid_argument("path endpoints are not connected");
  std::vector<int> path;
  for (int x = to; x != -1; x = prev[x]) path.push_back(x);
  return {path.rbegin(), path.rend()};
}

}  // namespace

std::vector<int> right_path(const BiGraph& tree, int j, int j_prime) {
  if (!is_spanning_tree(tree)) throw std::invalid_argument("right_path: not a spanning tree");
  std::vector<int> out;
  for (int x : node_path(tree, tree.n() + j, tree.n() + j_prime)) {
    if (x >= tree.n()) out.push_back(x - tree.n());
  }
  return out;
}

std::vector<BiGraph> tug_of_war_trace(const BiGraph& tree, int j, int j_prime) {
  if (!is_spanning_tree(tree)) throw std::invalid_argument("tug_of_war_trace: not a spanning tree");
  const int n = tree.n();
  auto path = node_path(tree, n + j, n + j_prime);  // j_0, i_1, j_1, ..., i_l, j_l
  BiGraph current = push_pull(tree, {Side::right, j_prime}, PushPull::pull);
  std::vector<BiGraph> trace{current};
  for (std::size_t k = 1; k + 1 < path.size(); k += 2) {
    int i = path[k];
    int towards_j = path[k - 1] - n;
    current.set_row(i, std::uint64_t{1} << towards_j);
    trace.push_back(current);
  }
  return trace;
}

TopeArrangement topes_from_fms(const FineMixedSubdivision& s) {
  const auto points = lattice_points(s.n, s.d);
  std::vector<std::optional<BiGraph>> slots(points.size());
  ValidationReport report;
  for (const auto& cell : s.cells) {
    if (cell.n() != s.n || cell.d() != s.d) {
      throw std::invalid_argument("topes_from_fms: cell has a different ambient size");
    }
    for_each_tope_in(cell, [&](const BiGraph& t) {
      auto& slot = slots[colex_rank(degree_vector(t, Side::right).values)];
      if (!slot) {
        slot = t;
      } else if (*slot != t) {
        report.fail("tope_ambiguity", {{"first", graph_to_json(*slot)}, {"second", graph_to_json(t)}});
      }
    });
  }
  std::vector<BiGraph> topes;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!slots[k]) {
      report.fail("tope_missing", {{"position", point_json(points[k])}});
      continue;
    }
    topes.push_back(*slots[k]);
  }
  if (!report.verdict()) throw ValidationError("topes_from_fms: invalid subdivision", report);
  return TopeArrangement(s.n, s.d, std::move(topes));
}

FineMixedSubdivision fms_from_arrangement(const TopeArrangement& a) {
  FineMixedSubdivision s{a.n(), a.d(), {}};
  for (const auto& u : lattice_points(a.n() - 1, a.d())) s.cells.push_back(delta_covector(a, u));
  return s;
}

}  // namespace tomkit

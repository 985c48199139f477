#include "tomkit/fms.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "tomkit/json_io.hpp"

namespace tomkit {
namespace {

using GraphSet = std::unordered_set<BiGraph, BiGraphHash>;

void require_shapes(const FineMixedSubdivision& s) {
  if (s.n < 1 || s.d < 1) throw std::invalid_argument("fms: n and d must be positive");
  for (const auto& c : s.cells) {
    if (c.n() != s.n || c.d() != s.d) {
      throw std::invalid_argument("fms: cell has a different ambient size");
    }
  }
}

// Left and right vertices reachable from left vertex `start` in g.
std::pair<std::uint64_t, std::uint64_t> component_of_left(const BiGraph& g, int start) {
  std::uint64_t left = std::uint64_t{1} << start, right = 0;
  std::deque<std::pair<bool, int>> queue{{true, start}};
  while (!queue.empty()) {
    auto [is_left, v] = queue.front();
    queue.pop_front();
    if (is_left) {
      for (std::uint64_t r = g.row(v) & ~right; r; r &= r - 1) {
        int j = std::countr_zero(r);
        right |= std::uint64_t{1} << j;
        queue.push_back({false, j});
      }
    } else {
      for (std::uint64_t c = g.column(v) & ~left; c; c &= c - 1) {
        int i = std::countr_zero(c);
        left |= std::uint64_t{1} << i;
        queue.push_back({true, i});
      }
    }
  }
  return {left, right};
}

// Every cell other than `cell` that equals cell - edge + e' for some e'.
std::vector<LinkagePartner> partners(const GraphSet& cells, const BiGraph& cell, Edge edge) {
  BiGraph rest = cell;
  rest.remove_edge(edge.left, edge.right);
  auto [left, right] = component_of_left(rest, edge.left);
  std::vector<LinkagePartner> found;
  for (int i = 0; i < cell.n(); ++i) {
    for (int j = 0; j < cell.d(); ++j) {
      bool i_side = (left >> i) & 1U;
      bool j_side = (right >> j) & 1U;
      if (i_side == j_side) continue;  // must reconnect the two components
      if (i == edge.left && j == edge.right) continue;
      BiGraph candidate = rest;
      candidate.add_edge(i, j);
      if (cells.count(candidate)) found.push_back({candidate, {i, j}});
    }
  }
  return found;
}

}  // namespace

FineMixedSubdivision canonical(FineMixedSubdivision s) {
  std::sort(s.cells.begin(), s.cells.end());
  return s;
}

std::uint64_t expected_cell_count(int n, int d) { return binomial(n + d - 2, n - 1); }

bool is_internal_edge(const BiGraph& cell, Edge e) {
  return cell.has_edge(e.left, e.right) && cell.left_degree(e.left) >= 2 &&
         cell.right_degree(e.right) >= 2;
}

ValidationReport validate_fms(const FineMixedSubdivision& s, FmsMode mode) {
  require_shapes(s);
  ValidationReport report;
  std::vector<const BiGraph*> trees;
  for (const auto& c : s.cells) {
    if (is_spanning_tree(c)) {
      trees.push_back(&c);
    } else {
      report.fail("spanning_tree", {{"cell", graph_to_json(c)}});
    }
  }
  std::vector<BiGraph> sorted = s.cells;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k] == sorted[k - 1]) report.fail("distinct", {{"cell", graph_to_json(sorted[k])}});
  }
  if (mode == FmsMode::full) {
    if (s.cells.empty()) report.fail("nonempty", nlohmann::json::object());
  } else {
    const auto expected = expected_cell_count(s.n, s.d);
    if (s.cells.size() != expected) {
      report.fail("cell_count", {{"expected", expected}, {"actual", s.cells.size()}});
    }
  }
  if (mode != FmsMode::compat_only) {
    GraphSet set;
    for (const auto* t : trees) set.insert(*t);
    for (const auto* t : trees) {
      for (const Edge& e : t->edges()) {
        if (!is_internal_edge(*t, e)) continue;
        auto found = partners(set, *t, e);
        if (found.empty()) {
          report.fail("tree_linkage", {{"cell", graph_to_json(*t)}, {"edge", edge_to_json(e)}});
        } else if (found.size() > 1) {
          report.fail("tree_linkage_unique",
                      {{"cell", graph_to_json(*t)}, {"edge", edge_to_json(e)},
                       {"partners", {graph_to_json(found[0].cell), graph_to_json(found[1].cell)}}});
        }
      }
    }
  }
  if (mode != FmsMode::linkage_only) {
    for (std::size_t a = 0; a < trees.size(); ++a) {
      for (std::size_t b = a + 1; b < trees.size(); ++b) {
        auto w = compatibility_witness(*trees[a], *trees[b]);
        if (!w) continue;
        report.fail("compatibility", {{"first", graph_to_json(*trees[a])},
                                      {"second", graph_to_json(*trees[b])},
                                      {"left_set", mask_to_json(w->left_set)},
                                      {"right_set", mask_to_json(w->right_set)},
                                      {"first_matching", graph_to_json(w->first_matching)},
                                      {"second_matching", graph_to_json(w->second_matching)}});
      }
    }
  }
  return report;
}

std::optional<LinkagePartner> tree_linkage_partner(const FineMixedSubdivision& s,
                                                   const BiGraph& cell, Edge edge) {
  require_shapes(s);
  if (std::find(s.cells.begin(), s.cells.end(), cell) == s.cells.end()) {
    throw std::invalid_argument("tree_linkage_partner: cell not in subdivision");
  }
  if (!cell.has_edge(edge.left, edge.right)) {
    throw std::invalid_argument("tree_linkage_partner: edge not in cell");
  }
  if (!is_internal_edge(cell, edge)) return std::nullopt;
  GraphSet set(s.cells.begin(), s.cells.end());
  auto found = partners(set, cell, edge);
  if (found.size() != 1) {
    ValidationReport r;
    r.fail(found.empty() ? "tree_linkage" : "tree_linkage_unique",
           {{"cell", graph_to_json(cell)}, {"edge", edge_to_json(edge)}});
    throw ValidationError("tree_linkage_partner: internal edge without a unique partner", r);
  }
  return found.front();
}

LatticePoint position(const BiGraph& cell) {
  LatticePoint p = degree_vector(cell, Side::right).values;
  for (int& x : p) {
    if (x == 0) throw std::invalid_argument("position: a right vertex has degree 0");
    --x;
  }
  return p;
}

std::vector<LatticePoint> base_simplex(const BiGraph& cell) {
  LatticePoint p = position(cell);
  std::vector<LatticePoint> out;
  for (int j = 0; j < cell.d(); ++j) out.push_back(shifted(p, j, 1));
  return out;
}

LatticePoint left_position(const BiGraph& cell) {
  LatticePoint p = degree_vector(cell, Side::left).values;
  for (int& x : p) {
    if (x == 0) throw std::invalid_argument("left_position: a left vertex has degree 0");
    --x;
  }
  return p;
}

ValidationReport check_degree_bijection(const FineMixedSubdivision& s) {
  require_shapes(s);
  ValidationReport report;
  auto check = [&](const char* axiom, int level, int dim, auto&& pos_of) {
    std::vector<int> hits(lattice_count(level, dim), 0);
    for (const auto& c : s.cells) {
      LatticePoint p;
      try {
        p = pos_of(c);
      } catch (const std::invalid_argument&) {
        report.fail(axiom, {{"cell", graph_to_json(c)}, {"reason", "zero degree"}});
        continue;
      }
      if (level_of(p) != level) {
        report.fail(axiom, {{"cell", graph_to_json(c)}, {"position", p}});
        continue;
      }
      ++hits[colex_rank(p)];
    }
    auto points = lattice_points(level, dim);
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (hits[k] != 1) report.fail(axiom, {{"point", points[k]}, {"cells", hits[k]}});
    }
  };
  check("right_degree_bijection", s.n - 1, s.d, [](const BiGraph& c) { return position(c); });
  check("left_degree_bijection", s.d - 1, s.n, [](const BiGraph& c) { return left_position(c); });
  return report;
}

bool is_unmixed(const BiGraph& cell) {
  auto ld = degree_vector(cell, Side::left).values;
  if (cell.d() == 1) return std::all_of(ld.begin(), ld.end(), [](int x) { return x == 1; });
  int big = 0;
  for (int x : ld) {
    if (x == cell.d()) {
      ++big;
    } else if (x != 1) {
      return false;
    }
  }
  return big == 1;
}

bool position_within(const LatticePoint& pos, const LatticePoint& origin) {
  if (pos.size() != origin.size()) return false;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    if (pos[k] < origin[k]) return false;
  }
  return true;
}

namespace {

void require_origin(const FineMixedSubdivision& s, const LatticePoint& origin, int m) {
  if (m < 1 || m > s.n) throw std::invalid_argument("spread-out: m must lie in 1..n");
  if (static_cast<int>(origin.size()) != s.d || !is_nonnegative(origin) ||
      level_of(origin) != s.n - m) {
    throw std::invalid_argument("spread-out: origin must be a lattice point of level n - m");
  }
}

}  // namespace

int spread_out_count(const FineMixedSubdivision& s, const LatticePoint& origin, int m) {
  require_shapes(s);
  require_origin(s, origin, m);
  int count = 0;
  for (const auto& c : s.cells) {
    if (is_unmixed(c) && position_within(position(c), origin)) ++count;
  }
  return count;
}

BiGraph cell_union(const FineMixedSubdivision& s, const LatticePoint& origin, int m) {
  require_shapes(s);
  require_origin(s, origin, m);
  BiGraph out(s.n, s.d);
  for (const auto& c : s.cells) {
    if (position_within(position(c), origin)) out |= c;
  }
  return out;
}

CellIndex::CellIndex(const FineMixedSubdivision& s) : level_(s.n - 1) {
  require_shapes(s);
  slots_.resize(lattice_count(level_, s.d));
  for (const auto& c : s.cells) {
    LatticePoint p = position(c);
    if (level_of(p) != level_) throw std::invalid_argument("CellIndex: cell is not a spanning tree");
    auto& slot = slots_[colex_rank(p)];
    if (slot) {
      ValidationReport r;
      r.fail("right_degree_bijection", {{"point", p}});
      throw ValidationError("CellIndex: two cells share a position", r);
    }
    slot = c;
  }
}

const BiGraph* CellIndex::at(const LatticePoint& pos) const {
  if (level_of(pos) != level_ || !is_nonnegative(pos)) return nullptr;
  auto rank = colex_rank(pos);
  if (rank >= slots_.size() || !slots_[rank]) return nullptr;
  return &*slots_[rank];
}

}  // namespace tomkit

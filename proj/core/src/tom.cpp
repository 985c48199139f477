#include "tomkit/tom.hpp"

#include <algorithm>
#include <stdexcept>

#include "tomkit/json_io.hpp"

namespace tomkit {

GenericTom::GenericTom(int n, int d, std::vector<BiGraph> types, bool extended)
    : n_(n), d_(d), extended_(extended), types_(std::move(types)) {
  if (n < 1 || d < 1) throw std::invalid_argument("GenericTom: n and d must be positive");
  for (const auto& g : types_) {
    if (g.n() != n || g.d() != d) {
      throw std::invalid_argument("GenericTom: type has a different ambient size");
    }
  }
  std::sort(types_.begin(), types_.end());
  types_.erase(std::unique(types_.begin(), types_.end()), types_.end());
  lookup_.insert(types_.begin(), types_.end());
}

bool is_honest(const BiGraph& g) {
  for (int i = 0; i < g.n(); ++i) {
    if (g.row(i) == 0) return false;
  }
  return true;
}

std::optional<BiGraph> elimination_witness(const GenericTom& t, const BiGraph& u,
                                           const BiGraph& v, int i) {
  const int n = t.n();
  BiGraph w(n, t.d());
  for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << (n - 1)); ++choice) {
    int bit = 0;
    for (int k = 0; k < n; ++k) {
      if (k == i) {
        w.set_row(k, u.row(k) | v.row(k));
      } else {
        w.set_row(k, ((choice >> bit) & 1U) ? v.row(k) : u.row(k));
        ++bit;
      }
    }
    if (t.contains(w)) return w;
  }
  return std::nullopt;
}

namespace {

void audit_elimination(const GenericTom& t, const std::vector<BiGraph>& types,
                       ValidationReport& report) {
  for (std::size_t a = 0; a < types.size(); ++a) {
    for (std::size_t b = a + 1; b < types.size(); ++b) {
      for (int i = 0; i < t.n(); ++i) {
        if (elimination_witness(t, types[a], types[b], i)) continue;
        report.fail("elimination", {{"u", graph_to_json(types[a])},
                                    {"v", graph_to_json(types[b])},
                                    {"coordinate", i + 1}});
      }
    }
  }
}

}  // namespace

ValidationReport validate_tom(const GenericTom& t) {
  ValidationReport report;
  const auto& types = t.types();
  std::vector<const BiGraph*> forests;
  for (const auto& g : types) {
    if (!t.extended() && !is_honest(g)) report.fail("honest", {{"type", graph_to_json(g)}});
    if (is_forest(g)) {
      forests.push_back(&g);
    } else {
      report.fail("generic", {{"type", graph_to_json(g)}});
    }
  }
  for (int j = 0; j < t.d(); ++j) {
    BiGraph boundary(t.n(), t.d());
    for (int i = 0; i < t.n(); ++i) boundary.add_edge(i, j);
    if (!t.contains(boundary)) report.fail("boundary", {{"type", graph_to_json(boundary)}});
  }
  for (const auto& g : types) {
    auto check = [&](const BiGraph& sub) {
      if (!t.contains(sub)) {
        report.fail("surrounding", {{"type", graph_to_json(g)}, {"missing", graph_to_json(sub)}});
      }
    };
    if (t.extended()) {
      for_each_subgraph(g, check);
    } else {
      for_each_honest_subgraph(g, check);
    }
  }
  for (std::size_t a = 0; a < forests.size(); ++a) {
    for (std::size_t b = a + 1; b < forests.size(); ++b) {
      auto w = compatibility_witness(*forests[a], *forests[b]);
      if (!w) continue;
      report.fail("compatibility", {{"first", graph_to_json(*forests[a])},
                                    {"second", graph_to_json(*forests[b])},
                                    {"left_set", mask_to_json(w->left_set)},
                                    {"right_set", mask_to_json(w->right_set)},
                                    {"first_matching", graph_to_json(w->first_matching)},
                                    {"second_matching", graph_to_json(w->second_matching)}});
    }
  }
  if (!t.extended()) {
    audit_elimination(t, types, report);
  } else {
    GenericTom honest = reduction(t);
    audit_elimination(honest, honest.types(), report);
    for (const auto& g : types) {
      if (is_honest(g)) continue;
      bool refined = std::any_of(honest.types().begin(), honest.types().end(),
                                 [&](const BiGraph& h) { return g.is_subgraph_of(h); });
      if (!refined) report.fail("refines_honest", {{"semitype", graph_to_json(g)}});
    }
  }
  return report;
}

std::vector<BiGraph> tree_types(const GenericTom& t) {
  std::vector<BiGraph> out;
  for (const auto& g : t.types()) {
    if (is_spanning_tree(g)) out.push_back(g);
  }
  return out;
}

std::vector<BiGraph> topes(const GenericTom& t) {
  std::vector<BiGraph> out;
  for (const auto& g : t.types()) {
    if (is_tope(g)) out.push_back(g);
  }
  return out;
}

GenericTom generate_from_tree_types(const std::vector<BiGraph>& trees, int n, int d) {
  std::vector<BiGraph> types;
  for (const auto& tree : trees) {
    if (tree.n() != n || tree.d() != d) {
      throw std::invalid_argument("generate_from_tree_types: ambient size mismatch");
    }
    for_each_honest_subgraph(tree, [&](const BiGraph& g) { types.push_back(g); });
  }
  return GenericTom(n, d, std::move(types));
}

GenericTom reconstruct_from_topes(const std::vector<BiGraph>& tope_set, int n, int d) {
  for (const auto& tp : tope_set) {
    if (tp.n() != n || tp.d() != d || !is_tope(tp)) {
      throw std::invalid_argument("reconstruct_from_topes: input is not a tope of K_{n,d}");
    }
  }
  std::vector<BiGraph> types;
  for_each_honest_subgraph(complete_graph(n, d), [&](const BiGraph& g) {
    if (!is_forest(g)) return;
    for (const auto& tp : tope_set) {
      if (!are_compatible(g, tp)) return;
    }
    types.push_back(g);
  });
  return GenericTom(n, d, std::move(types));
}

GenericTom completion(const GenericTom& t) {
  std::vector<BiGraph> types;
  const int n = t.n();
  for (const auto& g : t.types()) {
    for (std::uint64_t empty = 0; empty < (std::uint64_t{1} << n); ++empty) {
      BiGraph s = g;
      for (int i = 0; i < n; ++i) {
        if ((empty >> i) & 1U) s.set_row(i, 0);
      }
      types.push_back(std::move(s));
    }
  }
  return GenericTom(n, t.d(), std::move(types), true);
}

GenericTom reduction(const GenericTom& t) {
  std::vector<BiGraph> types;
  for (const auto& g : t.types()) {
    if (is_honest(g)) types.push_back(g);
  }
  return GenericTom(t.n(), t.d(), std::move(types), false);
}

BiGraph refine_to_honest(const BiGraph& semitype, const GenericTom& t) {
  if (!t.contains(semitype)) throw std::invalid_argument("refine_to_honest: semitype not in t");
  if (is_honest(semitype)) return semitype;
  const std::uint64_t all_right =
      t.d() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t.d()) - 1;
  if (!semitype.empty() && is_tree_on(semitype, semitype.left_support(), all_right)) {
    // The tree-type whose left degrees exceed the semitype's by one off the
    // support contains it.
    auto target = degree_vector(semitype, Side::left).values;
    for (int& x : target) x = x == 0 ? 1 : x;
    for (const auto& g : t.types()) {
      if (is_spanning_tree(g) && degree_vector(g, Side::left).values == target &&
          semitype.is_subgraph_of(g)) {
        return g;
      }
    }
    ValidationReport r;
    r.fail("refines_honest", {{"semitype", graph_to_json(semitype)}});
    throw ValidationError("refine_to_honest: no tree-type with the expected left degrees", r);
  }
  for (const auto& g : t.types()) {
    if (is_honest(g) && semitype.is_subgraph_of(g)) return g;
  }
  ValidationReport r;
  r.fail("refines_honest", {{"semitype", graph_to_json(semitype)}});
  throw ValidationError("refine_to_honest: no honest type contains the semitype", r);
}

}  // namespace tomkit

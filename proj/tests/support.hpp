#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "tomkit/bigraph.hpp"
#include "tomkit/fms.hpp"
#include "tomkit/matchfield.hpp"

namespace tomkit::testing {

/// Graph from 1-based edge pairs.
inline BiGraph G(int n, int d, std::initializer_list<std::pair<int, int>> edges) {
  BiGraph g(n, d);
  for (auto [i, j] : edges) g.add_edge(i - 1, j - 1);
  return g;
}

/// Graph from type notation: coordinate i lists the right vertices of left i.
inline BiGraph type_graph(int d, std::initializer_list<std::initializer_list<int>> coords) {
  BiGraph g(static_cast<int>(coords.size()), d);
  int i = 0;
  for (const auto& c : coords) {
    for (int j : c) g.add_edge(i, j - 1);
    ++i;
  }
  return g;
}

/// The four tree-types (1234,1), (234,12), (34,123), (4,1234) on (2,4).
inline FineMixedSubdivision example_2_4() {
  return FineMixedSubdivision{2, 4,
                              {type_graph(4, {{1, 2, 3, 4}, {1}}), type_graph(4, {{2, 3, 4}, {1, 2}}),
                               type_graph(4, {{3, 4}, {1, 2, 3}}), type_graph(4, {{4}, {1, 2, 3, 4}})}};
}

/// Perfect matchings between left set I and right set J contained in g, by
/// trying every bijection.
inline std::vector<BiGraph> perfect_matchings_by_permutation(const BiGraph& g, std::uint64_t left,
                                                             std::uint64_t right) {
  std::vector<int> ls, rs;
  for (int i = 0; i < g.n(); ++i)
    if ((left >> i) & 1U) ls.push_back(i);
  for (int j = 0; j < g.d(); ++j)
    if ((right >> j) & 1U) rs.push_back(j);
  std::vector<BiGraph> out;
  if (ls.size() != rs.size()) return out;
  std::sort(rs.begin(), rs.end());
  do {
    bool ok = true;
    BiGraph m(g.n(), g.d());
    for (std::size_t k = 0; k < ls.size() && ok; ++k) {
      if (!g.has_edge(ls[k], rs[k])) ok = false;
      else m.add_edge(ls[k], rs[k]);
    }
    if (ok) out.push_back(m);
  } while (std::next_permutation(rs.begin(), rs.end()));
  return out;
}

/// Compatibility straight from the definition: whenever both graphs contain
/// a perfect matching between the same two sets, the matchings agree.
inline bool compatible_by_definition(const BiGraph& g, const BiGraph& h) {
  for (std::uint64_t left = 1; left < (std::uint64_t{1} << g.n()); ++left) {
    for (std::uint64_t right = 1; right < (std::uint64_t{1} << g.d()); ++right) {
      if (std::popcount(left) != std::popcount(right)) continue;
      auto a = perfect_matchings_by_permutation(g, left, right);
      auto b = perfect_matchings_by_permutation(h, left, right);
      for (const auto& x : a)
        for (const auto& y : b)
          if (x != y) return false;
    }
  }
  return true;
}

/// Every forest of K_{n,d}.
inline std::vector<BiGraph> all_forests(int n, int d) {
  std::vector<BiGraph> out;
  for_each_subgraph(complete_graph(n, d), [&](const BiGraph& g) {
    if (is_forest(g)) out.push_back(g);
  });
  return out;
}

inline BiGraph random_forest(int n, int d, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) edges.push_back({i, j});
  std::shuffle(edges.begin(), edges.end(), rng);
  std::uniform_int_distribution<int> take(0, n + d - 1);
  int budget = take(rng);
  BiGraph g(n, d);
  for (const Edge& e : edges) {
    if (budget == 0) break;
    g.add_edge(e.left, e.right);
    if (!is_forest(g)) g.remove_edge(e.left, e.right);
    else --budget;
  }
  return g;
}

/// Every fine mixed subdivision of n*Delta^{d-1}, as sets of C(n+d-2, n-1)
/// spanning trees that are pairwise compatible by definition. Clique search
/// on the compatibility graph of spanning trees; cells sorted.
inline std::vector<FineMixedSubdivision> fms_by_cliques(int n, int d) {
  auto trees = spanning_trees(n, d);
  const std::size_t size = trees.size();
  std::vector<std::vector<char>> ok(size, std::vector<char>(size, 0));
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = a + 1; b < size; ++b)
      ok[a][b] = ok[b][a] = compatible_by_definition(trees[a], trees[b]) ? 1 : 0;
  std::size_t target = 1;
  for (int k = 1; k <= n - 1; ++k) target = target * static_cast<std::size_t>(d - 1 + k) / k;
  std::vector<FineMixedSubdivision> out;
  std::vector<std::size_t> chosen;
  auto grow = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == target) {
      FineMixedSubdivision s{n, d, {}};
      for (auto c : chosen) s.cells.push_back(trees[c]);
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t c = from; c < size; ++c) {
      if (size - c < target - chosen.size()) return;
      bool fits = true;
      for (auto x : chosen)
        if (!ok[x][c]) { fits = false; break; }
      if (!fits) continue;
      chosen.push_back(c);
      self(self, c + 1);
      chosen.pop_back();
    }
  };
  grow(grow, 0);
  return out;
}

/// The matching stack of a subdivision: for each (I, J) the perfect matchings
/// between I and J found inside any cell, by permutation search. Returns
/// nullopt if some pair has zero or several distinct matchings.
inline std::optional<MatchingStack> stack_from_cells(const FineMixedSubdivision& s) {
  MatchingStack out{s.n, s.d, {}};
  for (std::uint64_t left = 0; left < (std::uint64_t{1} << s.n); ++left) {
    for (std::uint64_t right = 0; right < (std::uint64_t{1} << s.d); ++right) {
      if (std::popcount(left) != std::popcount(right)) continue;
      std::vector<BiGraph> found;
      for (const auto& c : s.cells) {
        for (const auto& m : perfect_matchings_by_permutation(c, left, right)) {
          if (std::find(found.begin(), found.end(), m) == found.end()) found.push_back(m);
        }
      }
      if (left == 0) found.assign(1, BiGraph(s.n, s.d));
      if (found.size() != 1) return std::nullopt;
      out.assignments.emplace(std::make_pair(left, right), found.front());
    }
  }
  return out;
}

/// Calls fn on every matching field (all choices of bijection per d-subset).
inline void for_each_matching_field(int n_prime, int d, const std::function<void(const MatchingField&)>& fn) {
  auto sigmas = subsets(n_prime, d);
  std::vector<std::vector<BiGraph>> options;
  for (auto sigma : sigmas) {
    options.push_back(perfect_matchings_by_permutation(complete_graph(n_prime, d), sigma,
                                                       (std::uint64_t{1} << d) - 1));
  }
  MatchingField f{n_prime, d, false, {}};
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == sigmas.size()) {
      fn(f);
      return;
    }
    for (const auto& m : options[k]) {
      f.assignments[sigmas[k]] = m;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
}

/// Independent uniform bijections per d-subset.
inline MatchingField random_matching_field(int n_prime, int d, std::mt19937_64& rng) {
  MatchingField f{n_prime, d, false, {}};
  for (auto sigma : subsets(n_prime, d)) {
    std::vector<int> rs(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) rs[static_cast<std::size_t>(j)] = j;
    std::shuffle(rs.begin(), rs.end(), rng);
    BiGraph m(n_prime, d);
    std::size_t k = 0;
    for (int i = 0; i < n_prime; ++i)
      if ((sigma >> i) & 1U) m.add_edge(i, rs[k++]);
    f.assignments[sigma] = m;
  }
  return f;
}

/// Every left semi-matching of K_{n,d} with right degree vector v.
inline std::vector<BiGraph> topes_with_degrees(int n, const std::vector<int>& v) {
  const int d = static_cast<int>(v.size());
  std::vector<BiGraph> out;
  std::vector<int> image(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      std::vector<int> rd(static_cast<std::size_t>(d), 0);
      for (int x : image) ++rd[static_cast<std::size_t>(x)];
      if (rd != v) return;
      BiGraph g(n, d);
      for (int k = 0; k < n; ++k) g.add_edge(k, image[static_cast<std::size_t>(k)]);
      out.push_back(g);
      return;
    }
    for (int j = 0; j < d; ++j) {
      image[static_cast<std::size_t>(i)] = j;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// Calls fn on every map from the lattice points of n*Delta^{d-1} (colex
/// order) to topes with matching right degrees.
inline void for_each_positional_map(int n, int d, const std::function<void(const std::vector<BiGraph>&)>& fn) {
  auto points = lattice_points(n, d);
  std::vector<std::vector<BiGraph>> options;
  for (const auto& p : points) options.push_back(topes_with_degrees(n, p));
  std::vector<BiGraph> chosen(points.size());
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == points.size()) {
      fn(chosen);
      return;
    }
    for (const auto& t : options[k]) {
      chosen[k] = t;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
}

/// Calls fn on every matching stack: one perfect matching of K_{n,d} between
/// I and J for each equal-size pair, every choice.
inline void for_each_matching_stack(int n, int d, const std::function<void(const MatchingStack&)>& fn) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
  std::vector<std::vector<BiGraph>> options;
  for (std::uint64_t left = 0; left < (std::uint64_t{1} << n); ++left) {
    for (std::uint64_t right = 0; right < (std::uint64_t{1} << d); ++right) {
      if (std::popcount(left) != std::popcount(right)) continue;
      keys.emplace_back(left, right);
      options.push_back(left ? perfect_matchings_by_permutation(complete_graph(n, d), left, right)
                             : std::vector<BiGraph>{BiGraph(n, d)});
    }
  }
  MatchingStack s{n, d, {}};
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == keys.size()) {
      fn(s);
      return;
    }
    for (const auto& m : options[k]) {
      s.assignments[keys[k]] = m;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace tomkit::testing

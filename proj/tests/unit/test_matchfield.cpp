#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "tomkit/matchfield.hpp"

using namespace tomkit;
using tomkit::testing::example_2_4;
using tomkit::testing::fms_by_cliques;
using tomkit::testing::for_each_matching_field;
using tomkit::testing::G;
using tomkit::testing::random_matching_field;
using tomkit::testing::stack_from_cells;

namespace {

std::uint64_t bits(std::initializer_list<int> one_based) {
  std::uint64_t m = 0;
  for (int x : one_based) m |= std::uint64_t{1} << (x - 1);
  return m;
}

std::vector<bool> verdicts(const MatchingField& f) {
  std::vector<bool> out;
  for (auto v : kLinkageVariants) out.push_back(check_linkage(f, v).verdict());
  return out;
}

bool all_same(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [&](bool x) { return x == v.front(); });
}

// Strong, weak, three-element and elimination; the exchange formulation as
// stated rejects linkage fields and is pinned separately.
std::vector<bool> agreeing_verdicts(const MatchingField& f) {
  std::vector<bool> out;
  for (auto v : kLinkageVariants)
    if (v != LinkageVariant::exchange) out.push_back(check_linkage(f, v).verdict());
  return out;
}

MatchingField example_field() {
  auto stack = stack_from_cells(example_2_4());
  return complete_stack(*stack);
}

std::vector<MatchingField> derived_fields() {
  std::vector<MatchingField> out;
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}}) {
    for (const auto& s : fms_by_cliques(n, d)) out.push_back(complete_stack(*stack_from_cells(s)));
  }
  return out;
}

// Swap the images of two free vertices of one assignment.
MatchingField corrupt(MatchingField f, std::mt19937_64& rng) {
  std::vector<std::uint64_t> keys;
  for (const auto& [sigma, m] : f.assignments) {
    int free = 0;
    for (int i = 0; i < f.n(); ++i) free += (sigma >> i) & 1U;
    if (free >= 2) keys.push_back(sigma);
  }
  if (keys.empty()) return f;
  auto sigma = keys[rng() % keys.size()];
  auto& m = f.assignments[sigma];
  std::vector<int> free;
  for (int i = 0; i < f.n(); ++i)
    if ((sigma >> i) & 1U) free.push_back(i);
  int a = free[rng() % free.size()], b = a;
  while (b == a) b = free[rng() % free.size()];
  std::uint64_t ra = m.row(a), rb = m.row(b);
  m.set_row(a, rb).set_row(b, ra);
  return f;
}

// Three matchings whose union contains the 4-cycle 1 - 1 - 3 - 2.
MatchingField cyclic_field() {
  return MatchingField{3, 2, false,
                       {{bits({1, 2}), G(3, 2, {{1, 1}, {2, 2}})},
                        {bits({1, 3}), G(3, 2, {{1, 2}, {3, 1}})},
                        {bits({2, 3}), G(3, 2, {{2, 1}, {3, 2}})}}};
}

}  // namespace

TEST(Subsets, GosperOrder) {
  EXPECT_EQ(subsets(4, 2), (std::vector<std::uint64_t>{0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100}));
  EXPECT_EQ(subsets(3, 0), (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(subsets(5, 3).size(), 10U);
}

TEST(Linkage, TrivialFields) {
  for_each_matching_field(3, 3, [](const MatchingField& f) {
    for (bool v : verdicts(f)) EXPECT_TRUE(v);
  });
  for_each_matching_field(4, 1, [](const MatchingField& f) {
    for (bool v : verdicts(f)) EXPECT_TRUE(v);
  });
}

TEST(Linkage, DerivedFieldsPassAllVariants) {
  auto fields = derived_fields();
  ASSERT_EQ(fields.size(), 1U + 2U + 6U + 6U + 24U + 108U);
  for (const auto& f : fields) {
    ASSERT_TRUE(check_well_formed(f).verdict());
    for (bool v : agreeing_verdicts(f)) ASSERT_TRUE(v);
  }
}

TEST(Linkage, CorruptedFieldsAgreeAcrossVariants) {
  std::mt19937_64 rng(5);
  int broken = 0;
  for (const auto& f : derived_fields()) {
    auto g = corrupt(f, rng);
    auto v = agreeing_verdicts(g);
    ASSERT_TRUE(all_same(v));
    if (!v.front()) {
      ++broken;
      for (auto variant : kLinkageVariants) {
        auto r = check_linkage(g, variant);
        ASSERT_TRUE(r.has(variant_name(variant)));
        ASSERT_FALSE(r.violations.front().witness.empty());
      }
    }
  }
  EXPECT_GT(broken, 0);
}

TEST(Linkage, ExhaustiveEquivalence) {
  for (auto [np, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 2}, {4, 3}}) {
    int total = 0, linked = 0;
    for_each_matching_field(np, d, [&](const MatchingField& f) {
      auto v = agreeing_verdicts(f);
      ASSERT_TRUE(all_same(v)) << np << "," << d;
      ++total;
      linked += v.front();
    });
    EXPECT_GT(linked, 0);
    EXPECT_GT(total, 0);
  }
}

// Strong linkage holds (the union is the path 1 - 1 - 2 - 2 - 3), but for
// sigma = {1,2}, sigma' = {2,3} the only candidates are i = 1, i' = 3 and
// M_sigma(1) = 1 differs from M_sigma'(3) = 2.
TEST(Linkage, ExchangeAsStatedRejectsALinkageField) {
  MatchingField f{3, 2, false,
                  {{bits({1, 2}), G(3, 2, {{1, 1}, {2, 2}})},
                   {bits({1, 3}), G(3, 2, {{1, 1}, {3, 2}})},
                   {bits({2, 3}), G(3, 2, {{2, 1}, {3, 2}})}}};
  for (bool v : agreeing_verdicts(f)) EXPECT_TRUE(v);
  auto r = check_linkage(f, LinkageVariant::exchange);
  EXPECT_FALSE(r.verdict());
  EXPECT_EQ(r.violations.front().witness["sigma"], nlohmann::json({1, 2}));
  EXPECT_EQ(r.violations.front().witness["sigma2"], nlohmann::json({2, 3}));
}

TEST(Linkage, ExchangeAsStatedFailsOnEveryNontrivialField) {
  for (auto [np, d] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {4, 3}}) {
    for_each_matching_field(np, d, [&](const MatchingField& f) {
      ASSERT_FALSE(check_linkage(f, LinkageVariant::exchange).verdict());
    });
  }
}

TEST(Linkage, RandomEquivalence) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    int d = 1 + static_cast<int>(rng() % 3);
    int np = d + 1 + static_cast<int>(rng() % (6 - d));
    auto f = random_matching_field(np, d, rng);
    ASSERT_TRUE(all_same(agreeing_verdicts(f)));
  }
}

TEST(Covector, SingleRightVertex) {
  MatchingField f{2, 1, false, {{bits({1}), G(2, 1, {{1, 1}})}, {bits({2}), G(2, 1, {{2, 1}})}}};
  auto c = linkage_covector(f, bits({1, 2}));
  EXPECT_TRUE(c.linkage);
  EXPECT_EQ(c.graph, G(2, 1, {{1, 1}, {2, 1}}));
  EXPECT_THROW(linkage_covector(f, bits({1})), std::invalid_argument);
}

TEST(Covector, SmallestPointedField) {
  MatchingStack s{1, 2, {{{0, 0}, BiGraph(1, 2)}, {{1, 1}, G(1, 2, {{1, 1}})}, {{1, 2}, G(1, 2, {{1, 2}})}}};
  auto f = complete_stack(s);
  EXPECT_TRUE(f.pointed);
  EXPECT_EQ(f.n_prime, 3);
  EXPECT_EQ(f.assignments.size(), 3U);
  auto c = linkage_covector(f, bits({1, 2, 3}));
  EXPECT_TRUE(c.linkage);
  EXPECT_EQ(c.graph.left_degree(1), 1);
  EXPECT_TRUE(c.graph.has_edge(1, 0));
  EXPECT_EQ(c.graph.left_degree(2), 1);
  EXPECT_TRUE(c.graph.has_edge(2, 1));
  EXPECT_EQ(reduce_pointed(f).assignments, s.assignments);
}

TEST(Covector, PushRecoversMatchings) {
  for (const auto& f : derived_fields()) {
    for (auto tau : subsets(f.n_prime, f.d + 1)) {
      auto c = linkage_covector(f, tau);
      ASSERT_TRUE(c.linkage);
      for (int i = 0; i < f.n_prime; ++i) {
        if (!((tau >> i) & 1U)) continue;
        ASSERT_EQ(push_pull(c.graph, {Side::left, i}, PushPull::push),
                  f.at(tau & ~(std::uint64_t{1} << i)));
      }
    }
  }
}

TEST(Covector, NonLinkageReturnsRawUnion) {
  auto f = cyclic_field();
  auto c = linkage_covector(f, 0b111);
  EXPECT_FALSE(c.linkage);
  EXPECT_EQ(c.graph, G(3, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {3, 2}}));
  for (bool v : verdicts(f)) EXPECT_FALSE(v);
}

TEST(Stack, AllPointedSigmaGivesEmptyPair) {
  auto f = example_field();
  auto s = reduce_pointed(f);
  EXPECT_TRUE(s.at(0, 0).empty());
  std::uint64_t all_pointed = 0;
  for (int j = 0; j < f.d; ++j) all_pointed |= std::uint64_t{1} << (f.n() + j);
  for (int j = 0; j < f.d; ++j) EXPECT_TRUE(f.at(all_pointed).has_edge(f.n() + j, j));
}

TEST(Stack, RoundTrips) {
  for (const auto& f : derived_fields()) {
    auto s = reduce_pointed(f);
    ASSERT_TRUE(check_well_formed(s).verdict());
    ASSERT_EQ(complete_stack(s).assignments, f.assignments);
    ASSERT_EQ(reduce_pointed(complete_stack(s)).assignments, s.assignments);
  }
  EXPECT_THROW(reduce_pointed(MatchingField{2, 1, false, {}}), std::invalid_argument);
}

TEST(Ensemble, DerivedStacksAreFullEnsembles) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}, {3, 3}}) {
    for (const auto& sub : fms_by_cliques(n, d)) {
      auto s = stack_from_cells(sub);
      ASSERT_TRUE(s);
      auto r = validate_ensemble(*s, EnsembleLevel::full);
      ASSERT_TRUE(r.verdict()) << r.to_json().dump();
      ASSERT_TRUE(check_extended_left_linkage(*s).verdict());
      for (const auto& [k1, m1] : s->assignments)
        for (const auto& [k2, m2] : s->assignments) ASSERT_TRUE(are_compatible(m1, m2));
    }
  }
}

TEST(Ensemble, ClosureViolation) {
  auto s = *stack_from_cells(example_2_4());
  s.assignments[{bits({1}), bits({1})}] = BiGraph(2, 4);
  EXPECT_FALSE(check_well_formed(s).verdict());

  s = *stack_from_cells(fms_by_cliques(3, 3).front());
  const BiGraph& top = s.at(0b111, 0b111);
  std::uint64_t j3 = top.row(2);
  std::uint64_t rest = 0b111 & ~j3;
  BiGraph swapped(3, 3);
  swapped.set_row(0, top.row(1)).set_row(1, top.row(0));
  s.assignments[{0b011, rest}] = swapped;
  ASSERT_TRUE(check_well_formed(s).verdict());
  auto r = validate_ensemble(s, EnsembleLevel::semi);
  EXPECT_TRUE(r.has("closure"));
  EXPECT_FALSE(r.violations.front().witness.empty());
}

// A linkage pointed field and a semi-ensemble are the same thing.
TEST(Ensemble, SemiEnsembleIffLinkagePointedField) {
  std::mt19937_64 rng(17);
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}}) {
    auto base = *stack_from_cells(fms_by_cliques(n, d).front());
    int agree = 0;
    for (int trial = 0; trial < 300; ++trial) {
      auto s = base;
      for (auto& [key, m] : s.assignments) {
        if (rng() % 3) continue;
        std::vector<int> ls, rs;
        for (int i = 0; i < n; ++i)
          if ((key.first >> i) & 1U) ls.push_back(i);
        for (int j = 0; j < d; ++j)
          if ((key.second >> j) & 1U) rs.push_back(j);
        std::shuffle(rs.begin(), rs.end(), rng);
        BiGraph r(n, d);
        for (std::size_t k = 0; k < ls.size(); ++k) r.add_edge(ls[k], rs[k]);
        m = r;
      }
      bool semi = validate_ensemble(s, EnsembleLevel::semi).verdict();
      auto v = agreeing_verdicts(complete_stack(s));
      ASSERT_TRUE(all_same(v));
      ASSERT_EQ(semi, v.front());
      ++agree;
    }
    EXPECT_EQ(agree, 300);
  }
}

TEST(InverseLinkage, SingleRightVertex) {
  MatchingField f{3, 1, false, {}};
  for (int i = 0; i < 3; ++i) f.assignments[std::uint64_t{1} << i] = BiGraph(3, 1).add_edge(i, 0);
  EXPECT_TRUE(check_strong_inverse_linkage(f).verdict());
}

TEST(InverseLinkage, DerivedFieldsAndCorruption) {
  std::mt19937_64 rng(23);
  int broken = 0;
  for (const auto& f : derived_fields()) {
    ASSERT_TRUE(check_strong_inverse_linkage(f).verdict());
    auto g = corrupt(f, rng);
    if (!check_strong_inverse_linkage(g).verdict()) ++broken;
  }
  EXPECT_GT(broken, 0);
}

TEST(Amalgamation, SingleRightVertex) {
  MatchingField f{2, 1, false, {{bits({1}), G(2, 1, {{1, 1}})}, {bits({2}), G(2, 1, {{2, 1}})}}};
  auto tf = amalgamate(as_tope_field(f), 0);
  EXPECT_EQ(tf.type, (LatticePoint{2}));
  ASSERT_EQ(tf.assignments.size(), 1U);
  EXPECT_EQ(tf.at(0b11), G(2, 1, {{1, 1}, {2, 1}}));
  EXPECT_THROW(amalgamate(tf, 0), std::invalid_argument);
}

TEST(Amalgamation, MaximalTopeIsTheUniqueCompatibleTope) {
  for (const auto& f : derived_fields()) {
    AmalgamationCache cache(f);
    for (const auto& v : lattice_points(f.n_prime - f.d, f.d)) {
      LatticePoint type = v;
      for (auto& x : type) ++x;
      const BiGraph& t = cache.tope(type);
      std::vector<BiGraph> candidates;
      for_each_tope_in(complete_graph(f.n_prime, f.d), [&](const BiGraph& cand) {
        if (degree_vector(cand, Side::right).values != type) return;
        for (const auto& [sigma, m] : f.assignments)
          if (!are_compatible(cand, m)) return;
        candidates.push_back(cand);
      });
      ASSERT_EQ(candidates.size(), 1U);
      ASSERT_EQ(candidates.front(), t);
    }
  }
}

TEST(Amalgamation, OrderIndependentAndEdgeRemoval) {
  for (const auto& f : derived_fields()) {
    if (f.n_prime > 5) continue;
    for (const auto& v : lattice_points(f.n_prime - f.d, f.d)) {
      std::vector<int> steps;
      for (int j = 0; j < f.d; ++j)
        for (int k = 0; k < v[j]; ++k) steps.push_back(j);
      std::optional<BiGraph> first;
      do {
        TopeField tf = as_tope_field(f);
        for (int j : steps) {
          auto next = amalgamate(tf, j);
          ASSERT_TRUE(check_tope_field_linkage(next).verdict());
          for (const auto& [tau, t] : next.assignments) {
            for (int i = 0; i < f.n_prime; ++i) {
              if (!t.has_edge(i, j)) continue;
              ASSERT_EQ(BiGraph(t).remove_edge(i, j), tf.at(tau & ~(std::uint64_t{1} << i)));
            }
          }
          tf = next;
        }
        const BiGraph& t = tf.assignments.begin()->second;
        if (!first) first = t;
        ASSERT_EQ(t, *first);
      } while (std::next_permutation(steps.begin(), steps.end()));
    }
  }
}

TEST(Amalgamation, NonLinkageInputThrows) {
  auto f = cyclic_field();
  EXPECT_THROW(amalgamate(as_tope_field(f), 0), ValidationError);
}

#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "tomkit/crypto.hpp"

using namespace tomkit;
using tomkit::testing::example_2_4;
using tomkit::testing::fms_by_cliques;
using tomkit::testing::for_each_matching_stack;
using tomkit::testing::G;
using tomkit::testing::stack_from_cells;
using tomkit::testing::type_graph;

namespace {

const std::vector<std::pair<int, int>> kSizes = {{1, 3}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}, {3, 3}};

std::uint64_t all(int k) { return (std::uint64_t{1} << k) - 1; }

GenericTom tom_of(const FineMixedSubdivision& s) { return generate_from_tree_types(s.cells, s.n, s.d); }

template <typename T>
T minor_as(const T& x, std::uint64_t del, std::uint64_t con) {
  return std::get<T>(minor(ObjectHandle{x}, del, con));
}

/// Applies the minor one vertex at a time, deletions or contractions first.
template <typename T>
T stepwise(T x, std::uint64_t del, std::uint64_t con, bool deletions_first) {
  auto step = [&](std::uint64_t mask, bool left) {
    // Highest index first so the remaining indices keep their numbers.
    for (int k = 63; k >= 0; --k) {
      if ((mask >> k) & 1U) x = left ? minor_as(x, std::uint64_t{1} << k, 0) : minor_as(x, 0, std::uint64_t{1} << k);
    }
  };
  if (deletions_first) {
    step(del, true);
    step(con, false);
  } else {
    step(con, false);
    step(del, true);
  }
  return x;
}

std::vector<BiGraph> sorted(std::vector<BiGraph> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Minor, ContractingTheExample) {
  auto m = minor_as(example_2_4(), 0, 1U << 3);
  EXPECT_EQ(m.n, 2);
  EXPECT_EQ(m.d, 3);
  EXPECT_EQ(sorted(m.cells), sorted({type_graph(3, {{1, 2, 3}, {1}}), type_graph(3, {{2, 3}, {1, 2}}),
                                     type_graph(3, {{3}, {1, 2, 3}})}));
}

TEST(Minor, SingleLeftIndexGivesEveryNonemptySubset) {
  auto t = tom_of(example_2_4());
  for (int keep = 0; keep < 2; ++keep) {
    auto m = minor_as(t, all(2) & ~(1U << keep), 0);
    EXPECT_EQ(m.n(), 1);
    EXPECT_EQ(m.types().size(), 15U);
  }
}

TEST(Minor, RejectsEmptySidesAndUnpointedFields) {
  ObjectHandle s = example_2_4();
  EXPECT_THROW(minor(s, all(2), 0), std::invalid_argument);
  EXPECT_THROW(minor(s, 0, all(4)), std::invalid_argument);
  EXPECT_THROW(minor(s, 1U << 2, 0), std::invalid_argument);
  MatchingField f{2, 1, false, {{1, G(2, 1, {{1, 1}})}, {2, G(2, 1, {{2, 1}})}}};
  EXPECT_THROW(minor(ObjectHandle{f}, 1, 0), std::invalid_argument);
}

TEST(Minor, ArrangementContractionKeepsTheZeroTopes) {
  for (auto [n, d] : kSizes) {
    if (d < 2) continue;
    for (const auto& s : fms_by_cliques(n, d)) {
      auto a = topes_from_fms(s);
      for (int j = 0; j < d; ++j) {
        std::vector<BiGraph> expected;
        for (const auto& t : a.topes())
          if (!t.column(j)) expected.push_back(restrict_graph(t, all(n), all(d) & ~(1U << j)));
        ASSERT_EQ(sorted(minor_as(a, 0, 1U << j).topes()), sorted(expected));
      }
    }
  }
}

// Every kind commutes with the cryptomorphisms under every minor, and single
// steps in either order agree with the joint minor.
TEST(Minor, CommutesAcrossKindsAndOrders) {
  for (auto [n, d] : kSizes) {
    for (const auto& s : fms_by_cliques(n, d)) {
      auto t = tom_of(s);
      auto a = topes_from_fms(s);
      auto e = extraction(t);
      for (std::uint64_t del = 0; del < all(n); ++del) {
        for (std::uint64_t con = 0; con < all(d); ++con) {
          auto ms = minor_as(s, del, con);
          auto mt = minor_as(t, del, con);
          auto ma = minor_as(a, del, con);
          auto me = minor_as(e, del, con);
          ASSERT_EQ(sorted(ms.cells), tree_types(mt));
          ASSERT_EQ(ma, topes_from_fms(ms));
          ASSERT_EQ(me.assignments, extraction(mt).assignments);
          ASSERT_EQ(minor_as(complete_stack(e), del, con).assignments, complete_stack(me).assignments);
          ASSERT_EQ(arrangement_from_ensemble(me), ma);
          for (bool order : {true, false}) {
            ASSERT_EQ(sorted(stepwise(s, del, con, order).cells), sorted(ms.cells));
            ASSERT_EQ(stepwise(t, del, con, order), mt);
            ASSERT_EQ(stepwise(a, del, con, order), ma);
            ASSERT_EQ(stepwise(e, del, con, order).assignments, me.assignments);
          }
        }
      }
    }
  }
}

TEST(Minor, InvalidInputIsPassedThrough) {
  auto s = example_2_4();
  s.cells.pop_back();
  EXPECT_NO_THROW(minor(ObjectHandle{s}, 0, 1U << 3));
}

TEST(Extraction, ExamplePairs) {
  auto e = extraction(tom_of(example_2_4()));
  EXPECT_EQ(e.at(0, 0), BiGraph(2, 4));
  EXPECT_EQ(e.at(0b11, 0b0110), G(2, 4, {{1, 3}, {2, 2}}));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(e.at(1U << i, 1U << j), BiGraph(2, 4).add_edge(i, j));
  EXPECT_TRUE(validate_ensemble(e, EnsembleLevel::full).verdict());
}

TEST(Extraction, MatchesCellSearchAndIsInjective) {
  for (auto [n, d] : kSizes) {
    std::vector<MatchingStack> seen;
    for (const auto& s : fms_by_cliques(n, d)) {
      auto e = extraction(tom_of(s));
      auto oracle = stack_from_cells(s);
      ASSERT_TRUE(oracle);
      ASSERT_EQ(e.assignments, oracle->assignments);
      ASSERT_TRUE(validate_ensemble(e, EnsembleLevel::full).verdict());
      for (const auto& other : seen) ASSERT_NE(other.assignments, e.assignments);
      seen.push_back(e);
    }
  }
}

TEST(Extraction, ThrowsOnAmbiguousMinor) {
  auto s = example_2_4();
  s.cells[1] = type_graph(4, {{1, 3, 4}, {1, 2}});
  EXPECT_THROW(extraction(tom_of(s)), ValidationError);
}

TEST(FmsFromEnsemble, RoundTripsBothWays) {
  for (auto [n, d] : kSizes) {
    for (const auto& s : fms_by_cliques(n, d)) {
      auto e = extraction(tom_of(s));
      ASSERT_EQ(fms_from_ensemble(e).cells, canonical(s).cells);
    }
  }
}

// Every stack, valid or not: full ensembles convert and come back, the rest
// are rejected; the full ensembles are as many as the subdivisions.
TEST(FmsFromEnsemble, ExhaustiveOverStacks) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}}) {
    std::size_t full = 0;
    for_each_matching_stack(n, d, [&](const MatchingStack& e) {
      if (validate_ensemble(e, EnsembleLevel::full).verdict()) {
        ++full;
        auto s = fms_from_ensemble(e);
        ASSERT_EQ(extraction(tom_of(s)).assignments, e.assignments);
      } else {
        ASSERT_THROW(fms_from_ensemble(e), ValidationError);
      }
    });
    EXPECT_EQ(full, fms_by_cliques(n, d).size());
  }
}

TEST(FmsFromEnsemble, SingleRowIsTheStar) {
  for (int d = 1; d <= 4; ++d) {
    std::size_t count = 0;
    for_each_matching_stack(1, d, [&](const MatchingStack& e) {
      ++count;
      auto s = fms_from_ensemble(e);
      ASSERT_EQ(s.cells, std::vector<BiGraph>{complete_graph(1, d)});
    });
    EXPECT_EQ(count, 1U);
  }
}

TEST(RoundTrip, IdentityOnEnumeratedSubdivisions) {
  for (auto [n, d] : kSizes) {
    for (const auto& s : fms_by_cliques(n, d)) {
      auto r = roundtrip_audit(s);
      ASSERT_TRUE(r.verdict()) << r.to_json().dump();
    }
  }
  EXPECT_TRUE(roundtrip_audit(FineMixedSubdivision{1, 1, {complete_graph(1, 1)}}).verdict());
  EXPECT_TRUE(roundtrip_audit(example_2_4()).verdict());
}

TEST(RoundTrip, SeedsOfEveryKind) {
  for (const auto& s : fms_by_cliques(2, 3)) {
    auto t = tom_of(s);
    auto e = extraction(t);
    for (const ObjectHandle& seed : {ObjectHandle{t}, ObjectHandle{e}, ObjectHandle{complete_stack(e)},
                                     ObjectHandle{topes_from_fms(s)}}) {
      auto r = roundtrip_audit(seed);
      ASSERT_TRUE(r.verdict()) << r.to_json().dump();
    }
  }
}

TEST(RoundTrip, ReportsTheFailingLeg) {
  auto s = example_2_4();
  s.cells.pop_back();
  auto r = roundtrip_audit(s);
  ASSERT_FALSE(r.verdict());
  EXPECT_EQ(r.violations.front().axiom, "roundtrip");
  EXPECT_EQ(r.violations.front().witness.at("leg"), "seed_to_fms");

  auto t = tom_of(example_2_4());
  std::vector<BiGraph> types = t.types();
  types.pop_back();
  auto r2 = roundtrip_audit(GenericTom(2, 4, types));
  ASSERT_FALSE(r2.verdict());
  EXPECT_EQ(r2.violations.front().witness.at("leg"), "seed_to_fms");
}

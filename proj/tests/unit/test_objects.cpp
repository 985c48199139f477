#include <gtest/gtest.h>

#include "support.hpp"
#include "tomkit/crypto.hpp"
#include "tomkit/json_io.hpp"
#include "tomkit/objects.hpp"

using namespace tomkit;
using nlohmann::json;
using tomkit::testing::example_2_4;
using tomkit::testing::fms_by_cliques;

namespace {

const json kExample = json::parse(R"({
  "kind": "fms", "n": 2, "d": 4,
  "cells": [[[1,1],[1,2],[1,3],[1,4],[2,1]],
            [[1,2],[1,3],[1,4],[2,1],[2,2]],
            [[1,3],[1,4],[2,1],[2,2],[2,3]],
            [[1,4],[2,1],[2,2],[2,3],[2,4]]]
})");

std::vector<ObjectHandle> every_kind(const FineMixedSubdivision& s) {
  auto t = generate_from_tree_types(s.cells, s.n, s.d);
  auto e = extraction(t);
  return {s, t, e, complete_stack(e), topes_from_fms(s)};
}

}  // namespace

TEST(Objects, ExampleParses) {
  auto s = fms_from_json(kExample);
  EXPECT_EQ(canonical(s).cells, canonical(example_2_4()).cells);
  EXPECT_EQ(to_json(s), kExample);
}

TEST(Objects, KindNames) {
  for (auto k : {ObjectKind::fms, ObjectKind::tom, ObjectKind::matching_stack, ObjectKind::matching_field,
                 ObjectKind::tope_arrangement}) {
    EXPECT_EQ(kind_from_name(kind_name(k)), k);
  }
  EXPECT_FALSE(kind_from_name("tree_linkage_covector"));
  for (const auto& obj : every_kind(example_2_4())) EXPECT_EQ(to_json(obj).at("kind"), kind_name(kind_of(obj)));
}

TEST(Objects, CanonicalJsonRoundTrips) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
    for (const auto& s : fms_by_cliques(n, d)) {
      for (const auto& obj : every_kind(s)) {
        json j = to_json(obj);
        auto back = object_from_json(json::parse(j.dump()));
        ASSERT_EQ(kind_of(back), kind_of(obj));
        ASSERT_EQ(to_json(back), j);
      }
    }
  }
}

TEST(Objects, CellOrderDoesNotMatter) {
  json j = kExample;
  std::swap(j["cells"][0], j["cells"][3]);
  EXPECT_EQ(to_json(object_from_json(j)), kExample);
}

TEST(Objects, TomForms) {
  auto t = generate_from_tree_types(example_2_4().cells, 2, 4);
  json compressed = to_json(t);
  ASSERT_TRUE(compressed.contains("tree_types"));
  EXPECT_EQ(compressed.at("tree_types").size(), 4U);
  json explicit_form = {{"kind", "tom"}, {"n", 2}, {"d", 4}, {"types", json::array()}};
  for (const auto& g : t.types()) explicit_form["types"].push_back(edges_to_json(g));
  EXPECT_EQ(tom_from_json(explicit_form), t);

  auto c = completion(t);
  json ext = to_json(c);
  EXPECT_TRUE(ext.at("extended"));
  EXPECT_TRUE(ext.contains("types"));
  EXPECT_EQ(tom_from_json(ext), c);
}

TEST(Objects, GraphObjectsAcceptedForMembers) {
  json j = kExample;
  j["cells"][0] = graph_to_json(example_2_4().cells[0]);
  EXPECT_EQ(to_json(object_from_json(j)), kExample);
}

TEST(Objects, MalformedInputThrowsFormatError) {
  auto bad = [](json j) { EXPECT_THROW(object_from_json(j), FormatError) << j.dump(); };
  bad(json::array());
  bad({{"n", 2}});
  bad({{"kind", "polytope"}});
  bad({{"kind", "fms"}, {"n", 2}, {"cells", json::array()}});
  bad({{"kind", "fms"}, {"n", 0}, {"d", 2}, {"cells", json::array()}});
  bad({{"kind", "fms"}, {"n", 1}, {"d", 2}, {"cells", {{{1, 3}}}}});
  bad({{"kind", "tom"}, {"n", 1}, {"d", 2}});
  bad({{"kind", "tom"}, {"n", 1}, {"d", 2}, {"extended", true}, {"tree_types", json::array()}});
  bad({{"kind", "matching_field"}, {"n_prime", 1}, {"d", 2}, {"assignments", json::array()}});
  bad({{"kind", "matching_field"}, {"n_prime", 2}, {"d", 1}, {"pointed", 1}, {"assignments", json::array()}});
  bad({{"kind", "matching_stack"},
       {"n", 1},
       {"d", 1},
       {"assignments", {{{"I", json::array()}, {"J", json::array()}, {"matching", json::array()}},
                        {{"I", json::array()}, {"J", json::array()}, {"matching", json::array()}}}}});

  json a = to_json(topes_from_fms(example_2_4()));
  json dup = a;
  dup["topes"][1]["position"] = dup["topes"][0]["position"];
  bad(dup);
  json missing = a;
  missing["topes"].erase(0);
  bad(missing);
  json level = a;
  level["topes"][0]["position"] = {1, 0, 0, 0};
  bad(level);
  json range = a;
  range["topes"][0]["map"] = {5, 1};
  bad(range);
}

TEST(Objects, WrongPositionIsAStructuralViolation) {
  json a = to_json(topes_from_fms(example_2_4()));
  std::swap(a["topes"][0]["map"], a["topes"][1]["map"]);
  auto arr = arrangement_from_json(a);
  EXPECT_FALSE(check_structure(arr).verdict());
}

#include "tomkit/objects.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "tomkit/json_io.hpp"

namespace tomkit {

namespace {

constexpr const char* kKindNames[] = {"fms", "tom", "matching_stack", "matching_field",
                                      "tope_arrangement"};

int size_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw FormatError(std::string("expected integer field \"") + key + "\"");
  }
  int v = j.at(key).get<int>();
  if (v < 1 || v > BiGraph::kMaxSide) throw FormatError(std::string("field \"") + key + "\" out of range");
  return v;
}

const nlohmann::json& array_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw FormatError(std::string("expected array field \"") + key + "\"");
  }
  return j.at(key);
}

void require_kind(const nlohmann::json& j, ObjectKind kind) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (j.contains("kind") && j.at("kind") != kind_name(kind)) {
    throw FormatError(std::string("expected kind \"") + kind_name(kind) + "\"");
  }
}

nlohmann::json edge_lists(std::vector<BiGraph> graphs) {
  std::sort(graphs.begin(), graphs.end());
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : graphs) out.push_back(edges_to_json(g));
  return out;
}

std::vector<BiGraph> graphs_from(const nlohmann::json& arr, int n, int d) {
  std::vector<BiGraph> out;
  for (const auto& x : arr) out.push_back(edges_from_json(x, n, d));
  return out;
}

}  // namespace

ObjectKind kind_of(const ObjectHandle& obj) { return static_cast<ObjectKind>(obj.index()); }

const char* kind_name(ObjectKind kind) { return kKindNames[static_cast<int>(kind)]; }

std::optional<ObjectKind> kind_from_name(std::string_view name) {
  for (int k = 0; k < 5; ++k) {
    if (name == kKindNames[k]) return static_cast<ObjectKind>(k);
  }
  return std::nullopt;
}

nlohmann::json edges_to_json(const BiGraph& g) { return graph_to_json(g).at("edges"); }

BiGraph edges_from_json(const nlohmann::json& j, int n, int d) {
  if (j.is_object()) return graph_from_json(j, n, d);
  return graph_from_json({{"n", n}, {"d", d}, {"edges", j}});
}

nlohmann::json to_json(const FineMixedSubdivision& s) {
  return {{"kind", "fms"}, {"n", s.n}, {"d", s.d}, {"cells", edge_lists(s.cells)}};
}

nlohmann::json to_json(const GenericTom& t) {
  nlohmann::json out = {{"kind", "tom"}, {"n", t.n()}, {"d", t.d()}};
  if (t.extended()) out["extended"] = true;
  auto trees = tree_types(t);
  if (!t.extended() && generate_from_tree_types(trees, t.n(), t.d()) == t) {
    out["tree_types"] = edge_lists(trees);
  } else {
    out["types"] = edge_lists(t.types());
  }
  return out;
}

nlohmann::json to_json(const MatchingStack& s) {
  nlohmann::json assignments = nlohmann::json::array();
  for (const auto& [key, m] : s.assignments) {
    assignments.push_back(
        {{"I", mask_to_json(key.first)}, {"J", mask_to_json(key.second)}, {"matching", edges_to_json(m)}});
  }
  return {{"kind", "matching_stack"}, {"n", s.n}, {"d", s.d}, {"assignments", std::move(assignments)}};
}

nlohmann::json to_json(const MatchingField& f) {
  nlohmann::json assignments = nlohmann::json::array();
  for (const auto& [sigma, m] : f.assignments) {
    assignments.push_back({{"sigma", mask_to_json(sigma)}, {"matching", edges_to_json(m)}});
  }
  return {{"kind", "matching_field"}, {"n_prime", f.n_prime},    {"d", f.d},
          {"pointed", f.pointed},     {"assignments", std::move(assignments)}};
}

nlohmann::json to_json(const TopeArrangement& a) {
  nlohmann::json topes = nlohmann::json::array();
  auto points = lattice_points(a.n(), a.d());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const BiGraph& t = a.topes()[k];
    nlohmann::json map = nlohmann::json::array();
    for (int i = 0; i < t.n(); ++i) {
      std::uint64_t row = t.row(i);
      map.push_back(row ? std::countr_zero(row) + 1 : 0);
    }
    topes.push_back({{"position", points[k]}, {"map", std::move(map)}});
  }
  return {{"kind", "tope_arrangement"}, {"n", a.n()}, {"d", a.d()}, {"topes", std::move(topes)}};
}

nlohmann::json to_json(const ObjectHandle& obj) {
  return std::visit([](const auto& x) { return to_json(x); }, obj);
}

FineMixedSubdivision fms_from_json(const nlohmann::json& j) {
  require_kind(j, ObjectKind::fms);
  FineMixedSubdivision s{size_field(j, "n"), size_field(j, "d"), {}};
  s.cells = graphs_from(array_field(j, "cells"), s.n, s.d);
  return s;
}

GenericTom tom_from_json(const nlohmann::json& j) {
  require_kind(j, ObjectKind::tom);
  const int n = size_field(j, "n"), d = size_field(j, "d");
  bool extended = j.value("extended", false);
  if (j.contains("types")) return GenericTom(n, d, graphs_from(array_field(j, "types"), n, d), extended);
  if (j.contains("tree_types")) {
    if (extended) throw FormatError("tom: an extended matroid needs explicit \"types\"");
    return generate_from_tree_types(graphs_from(array_field(j, "tree_types"), n, d), n, d);
  }
  throw FormatError("tom: expected \"tree_types\" or \"types\"");
}

MatchingStack stack_from_json(const nlohmann::json& j) {
  require_kind(j, ObjectKind::matching_stack);
  MatchingStack s{size_field(j, "n"), size_field(j, "d"), {}};
  for (const auto& a : array_field(j, "assignments")) {
    if (!a.is_object() || !a.contains("I") || !a.contains("J") || !a.contains("matching")) {
      throw FormatError("matching_stack: each assignment needs \"I\", \"J\" and \"matching\"");
    }
    auto key = std::make_pair(mask_from_json(a.at("I"), s.n), mask_from_json(a.at("J"), s.d));
    if (!s.assignments.emplace(key, edges_from_json(a.at("matching"), s.n, s.d)).second) {
      throw FormatError("matching_stack: duplicate (I, J) pair");
    }
  }
  return s;
}

MatchingField field_from_json(const nlohmann::json& j) {
  require_kind(j, ObjectKind::matching_field);
  MatchingField f{size_field(j, "n_prime"), size_field(j, "d"), false, {}};
  if (j.contains("pointed")) {
    if (!j.at("pointed").is_boolean()) throw FormatError("matching_field: \"pointed\" must be a boolean");
    f.pointed = j.at("pointed").get<bool>();
  }
  if (f.d > f.n_prime) throw FormatError("matching_field: d exceeds n_prime");
  for (const auto& a : array_field(j, "assignments")) {
    if (!a.is_object() || !a.contains("sigma") || !a.contains("matching")) {
      throw FormatError("matching_field: each assignment needs \"sigma\" and \"matching\"");
    }
    auto sigma = mask_from_json(a.at("sigma"), f.n_prime);
    if (!f.assignments.emplace(sigma, edges_from_json(a.at("matching"), f.n_prime, f.d)).second) {
      throw FormatError("matching_field: duplicate sigma");
    }
  }
  return f;
}

TopeArrangement arrangement_from_json(const nlohmann::json& j) {
  require_kind(j, ObjectKind::tope_arrangement);
  const int n = size_field(j, "n"), d = size_field(j, "d");
  std::vector<std::optional<BiGraph>> slots(lattice_count(n, d));
  for (const auto& t : array_field(j, "topes")) {
    if (!t.is_object() || !t.contains("position") || !t.contains("map")) {
      throw FormatError("tope_arrangement: each tope needs \"position\" and \"map\"");
    }
    const auto& pos = t.at("position");
    const auto& map = t.at("map");
    if (!pos.is_array() || static_cast<int>(pos.size()) != d) {
      throw FormatError("tope_arrangement: position must have d entries");
    }
    LatticePoint p;
    for (const auto& x : pos) {
      if (!x.is_number_integer() || x.get<int>() < 0) {
        throw FormatError("tope_arrangement: position entries must be nonnegative integers");
      }
      p.push_back(x.get<int>());
    }
    if (level_of(p) != n) throw FormatError("tope_arrangement: position must sum to n");
    if (!map.is_array() || static_cast<int>(map.size()) != n) {
      throw FormatError("tope_arrangement: map must have n entries");
    }
    BiGraph g(n, d);
    for (int i = 0; i < n; ++i) {
      const auto& x = map[static_cast<std::size_t>(i)];
      if (!x.is_number_integer() || x.get<int>() < 1 || x.get<int>() > d) {
        throw FormatError("tope_arrangement: map entries must lie in 1..d");
      }
      g.add_edge(i, x.get<int>() - 1);
    }
    auto& slot = slots[colex_rank(p)];
    if (slot) throw FormatError("tope_arrangement: duplicate position");
    slot = g;
  }
  std::vector<BiGraph> topes;
  for (auto& slot : slots) {
    if (!slot) throw FormatError("tope_arrangement: a lattice point has no tope");
    topes.push_back(std::move(*slot));
  }
  return TopeArrangement(n, d, std::move(topes));
}

ObjectHandle object_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw FormatError("expected an object with a string field \"kind\"");
  }
  auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw FormatError("unknown kind \"" + j.at("kind").get<std::string>() + "\"");
  switch (*kind) {
    case ObjectKind::fms:
      return fms_from_json(j);
    case ObjectKind::tom:
      return tom_from_json(j);
    case ObjectKind::matching_stack:
      return stack_from_json(j);
    case ObjectKind::matching_field:
      return field_from_json(j);
    case ObjectKind::tope_arrangement:
      return arrangement_from_json(j);
  }
  throw FormatError("unknown kind");
}

}  // namespace tomkit

#include "tomkit/json_io.hpp"

#include <bit>
#include <string>

namespace tomkit {

nlohmann::json edge_to_json(Edge e) { return nlohmann::json::array({e.left + 1, e.right + 1}); }

nlohmann::json graph_to_json(const BiGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back(edge_to_json(e));
  return {{"n", g.n()}, {"d", g.d()}, {"edges", std::move(edges)}};
}

namespace {

int positive_int(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer()) {
    throw FormatError(std::string("expected integer field \"") + key + "\"");
  }
  int v = j.at(key).get<int>();
  if (v < 1 || v > BiGraph::kMaxSide) {
    throw FormatError(std::string("field \"") + key + "\" out of range");
  }
  return v;
}

}  // namespace

BiGraph graph_from_json(const nlohmann::json& j) {
  const int n = positive_int(j, "n");
  const int d = positive_int(j, "d");
  if (!j.contains("edges") || !j.at("edges").is_array()) {
    throw FormatError("graph: expected array field \"edges\"");
  }
  BiGraph g(n, d);
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw FormatError("graph: each edge must be a pair of integers");
    }
    int i = e[0].get<int>(), k = e[1].get<int>();
    if (i < 1 || i > n || k < 1 || k > d) throw FormatError("graph: edge index out of range");
    g.add_edge(i - 1, k - 1);
  }
  return g;
}

BiGraph graph_from_json(const nlohmann::json& j, int n, int d) {
  BiGraph g = graph_from_json(j);
  if (g.n() != n || g.d() != d) throw FormatError("graph: ambient size does not match");
  return g;
}

nlohmann::json mask_to_json(std::uint64_t mask) {
  nlohmann::json out = nlohmann::json::array();
  for (; mask; mask &= mask - 1) out.push_back(std::countr_zero(mask) + 1);
  return out;
}

std::uint64_t mask_from_json(const nlohmann::json& j, int limit) {
  if (!j.is_array()) throw FormatError("expected an index array");
  std::uint64_t mask = 0;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw FormatError("index must be an integer");
    int v = x.get<int>();
    if (v < 1 || v > limit) throw FormatError("index out of range");
    std::uint64_t bit = std::uint64_t{1} << (v - 1);
    if (mask & bit) throw FormatError("duplicate index");
    mask |= bit;
  }
  return mask;
}

}  // namespace tomkit

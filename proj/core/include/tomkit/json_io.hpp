#pragma once

#include <nlohmann/json.hpp>

#include "tomkit/bigraph.hpp"
#include "tomkit/lattice.hpp"

namespace tomkit {

/// Raised on malformed interchange JSON.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"n":..,"d":..,"edges":[[i,j],..]} with 1-based indices, edges sorted.
nlohmann::json graph_to_json(const BiGraph& g);
BiGraph graph_from_json(const nlohmann::json& j);
/// Same as graph_from_json but the ambient size must equal (n, d).
BiGraph graph_from_json(const nlohmann::json& j, int n, int d);

nlohmann::json edge_to_json(Edge e);
/// Ascending 1-based indices of the set bits.
nlohmann::json mask_to_json(std::uint64_t mask);
std::uint64_t mask_from_json(const nlohmann::json& j, int limit);

}  // namespace tomkit

#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "tomkit/fms.hpp"
#include "tomkit/matchfield.hpp"
#include "tomkit/tom.hpp"
#include "tomkit/topearr.hpp"

namespace tomkit {

enum class ObjectKind { fms, tom, matching_stack, matching_field, tope_arrangement };

/// Any of the interchangeable objects; the alternative index matches ObjectKind.
using ObjectHandle =
    std::variant<FineMixedSubdivision, GenericTom, MatchingStack, MatchingField, TopeArrangement>;

ObjectKind kind_of(const ObjectHandle& obj);
const char* kind_name(ObjectKind kind);
std::optional<ObjectKind> kind_from_name(std::string_view name);

/// Edge list [[i, j], ...], 1-based, sorted.
nlohmann::json edges_to_json(const BiGraph& g);
/// Accepts an edge list or a graph object. Throws FormatError.
BiGraph edges_from_json(const nlohmann::json& j, int n, int d);

nlohmann::json to_json(const FineMixedSubdivision& s);
nlohmann::json to_json(const GenericTom& t);
nlohmann::json to_json(const MatchingStack& s);
nlohmann::json to_json(const MatchingField& f);
nlohmann::json to_json(const TopeArrangement& a);
/// Canonical form: members sorted, keys sorted, 1-based indices.
nlohmann::json to_json(const ObjectHandle& obj);

FineMixedSubdivision fms_from_json(const nlohmann::json& j);
/// "tree_types" expands to all honest subgraphs; "types" is taken as is.
GenericTom tom_from_json(const nlohmann::json& j);
MatchingStack stack_from_json(const nlohmann::json& j);
MatchingField field_from_json(const nlohmann::json& j);
TopeArrangement arrangement_from_json(const nlohmann::json& j);
/// Dispatches on "kind". Throws FormatError for malformed input.
ObjectHandle object_from_json(const nlohmann::json& j);

}  // namespace tomkit

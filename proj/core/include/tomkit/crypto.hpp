#pragma once

#include <cstdint>

#include "tomkit/objects.hpp"

namespace tomkit {

/// The (I, J)-minor where I keeps every left index outside delete_left and J
/// every right index outside contract_right (masks on the input's sides).
///
/// Each member graph is restricted and renumbered, duplicates are dropped,
/// and so are members the kind no longer admits: cells that stop being
/// spanning trees, dishonest types of a non-extended matroid, topes that lose
/// a left vertex's edge. Stacks keep the pairs inside I x J; a pointed field
/// is reduced, minored and completed again. The result must pass the
/// strongest validation level the input passes, else ValidationError. Throws
/// std::invalid_argument if a side would become empty or for an unpointed
/// field.
ObjectHandle minor(const ObjectHandle& obj, std::uint64_t delete_left, std::uint64_t contract_right);

/// For each equal-size pair (I, J), the unique tope at position 1_J of the
/// (I, J)-minor, computed lazily from the tree-types. Throws ValidationError
/// when some pair has no such tope or several.
MatchingStack extraction(const GenericTom& t);

/// Completion, amalgamation to every lattice point, then the rows of [n].
/// Throws ValidationError if the stack is not a full ensemble.
TopeArrangement arrangement_from_ensemble(const MatchingStack& s);

/// arrangement_from_ensemble followed by delta covectors. Asserts that the
/// cells form a subdivision and that extraction gives back s; throws
/// ValidationError otherwise.
FineMixedSubdivision fms_from_ensemble(const MatchingStack& s);

/// The subdivision an object of any kind stands for. Throws ValidationError
/// when the conversion fails and std::invalid_argument for an unpointed field.
FineMixedSubdivision to_fms(const ObjectHandle& obj);

/// Walks subdivision -> matroid -> ensemble -> arrangement -> subdivision and
/// compares canonical JSON at every leg, and the seed with its counterpart
/// on the cycle. Failures carry {"leg", "expected", "actual"}.
ValidationReport roundtrip_audit(const ObjectHandle& seed);

}  // namespace tomkit

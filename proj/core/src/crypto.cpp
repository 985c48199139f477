#include "tomkit/crypto.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string>

#include "tomkit/json_io.hpp"

namespace tomkit {

namespace {

std::uint64_t low_mask(int k) { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; }

/// Bits of x at the positions of keep, packed to the bottom.
std::uint64_t compress(std::uint64_t x, std::uint64_t keep) {
  std::uint64_t out = 0;
  int k = 0;
  for (; keep; keep &= keep - 1, ++k) {
    if (x & keep & -keep) out |= std::uint64_t{1} << k;
  }
  return out;
}

struct Kept {
  std::uint64_t left;
  std::uint64_t right;
};

Kept kept_sides(int n, int d, std::uint64_t delete_left, std::uint64_t contract_right) {
  if (delete_left & ~low_mask(n)) throw std::invalid_argument("minor: left index out of range");
  if (contract_right & ~low_mask(d)) throw std::invalid_argument("minor: right index out of range");
  Kept k{low_mask(n) & ~delete_left, low_mask(d) & ~contract_right};
  if (!k.left || !k.right) throw std::invalid_argument("minor: both sides must keep an index");
  return k;
}

void require(const ValidationReport& r, const char* what) {
  if (!r.verdict()) throw ValidationError(what, r);
}

std::vector<BiGraph> restricted(const std::vector<BiGraph>& graphs, Kept k,
                                bool (*admit)(const BiGraph&)) {
  std::vector<BiGraph> out;
  for (const auto& g : graphs) {
    BiGraph r = restrict_graph(g, k.left, k.right);
    if (!admit || admit(r)) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FineMixedSubdivision minor_of(const FineMixedSubdivision& s, Kept k) {
  bool valid = validate_fms(s, FmsMode::full).verdict();
  FineMixedSubdivision out{std::popcount(k.left), std::popcount(k.right),
                           restricted(s.cells, k, is_spanning_tree)};
  if (valid) require(validate_fms(out, FmsMode::full), "minor of a subdivision is not a subdivision");
  return out;
}

GenericTom minor_of(const GenericTom& t, Kept k) {
  bool valid = validate_tom(t).verdict();
  GenericTom out(std::popcount(k.left), std::popcount(k.right),
                 restricted(t.types(), k, t.extended() ? nullptr : is_honest), t.extended());
  if (valid) require(validate_tom(out), "minor of a tropical oriented matroid is invalid");
  return out;
}

std::optional<EnsembleLevel> ensemble_level(const MatchingStack& s) {
  if (validate_ensemble(s, EnsembleLevel::full).verdict()) return EnsembleLevel::full;
  if (validate_ensemble(s, EnsembleLevel::semi).verdict()) return EnsembleLevel::semi;
  return std::nullopt;
}

MatchingStack minor_of(const MatchingStack& s, Kept k) {
  auto level = ensemble_level(s);
  MatchingStack out{std::popcount(k.left), std::popcount(k.right), {}};
  for (const auto& [key, m] : s.assignments) {
    if ((key.first & ~k.left) || (key.second & ~k.right)) continue;
    out.assignments.emplace(std::make_pair(compress(key.first, k.left), compress(key.second, k.right)),
                            restrict_graph(m, k.left, k.right));
  }
  if (level) require(validate_ensemble(out, *level), "minor of an ensemble is invalid");
  return out;
}

MatchingField minor_of(const MatchingField& f, Kept k) {
  if (!f.pointed) throw std::invalid_argument("minor: only pointed matching fields have minors");
  return complete_stack(minor_of(reduce_pointed(f), k));
}

std::optional<ArrangementLevel> arrangement_level(const TopeArrangement& a) {
  for (auto level : {ArrangementLevel::trianguloid, ArrangementLevel::pre_trianguloid,
                     ArrangementLevel::tope_arrangement}) {
    if (validate_arrangement(a, level).verdict()) return level;
  }
  return std::nullopt;
}

TopeArrangement minor_of(const TopeArrangement& a, Kept k) {
  auto level = arrangement_level(a);
  const int n = std::popcount(k.left), d = std::popcount(k.right);
  std::vector<std::optional<BiGraph>> slots(lattice_count(n, d));
  for (const auto& t : restricted(a.topes(), k, is_tope)) {
    auto pos = degree_vector(t, Side::right).values;
    auto& slot = slots[colex_rank(pos)];
    if (slot) {
      ValidationReport r;
      r.fail("minor", {{"position", pos}, {"first", graph_to_json(*slot)}, {"second", graph_to_json(t)}});
      throw ValidationError("minor of an arrangement has two topes at one position", r);
    }
    slot = t;
  }
  std::vector<BiGraph> topes;
  auto points = lattice_points(n, d);
  for (std::size_t x = 0; x < slots.size(); ++x) {
    if (!slots[x]) {
      ValidationReport r;
      r.fail("minor", {{"position", points[x]}, {"missing", true}});
      throw ValidationError("minor of an arrangement misses a position", r);
    }
    topes.push_back(std::move(*slots[x]));
  }
  TopeArrangement out(n, d, std::move(topes));
  if (level) require(validate_arrangement(out, *level), "minor of an arrangement is invalid");
  return out;
}

int left_size(const ObjectHandle& obj) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MatchingField>) return x.n();
        else if constexpr (std::is_same_v<T, FineMixedSubdivision> || std::is_same_v<T, MatchingStack>) return x.n;
        else return x.n();
      },
      obj);
}

int right_size(const ObjectHandle& obj) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FineMixedSubdivision> || std::is_same_v<T, MatchingStack> ||
                      std::is_same_v<T, MatchingField>)
          return x.d;
        else return x.d();
      },
      obj);
}

/// Every perfect matching between left and right inside g, stopping once
/// `cap` distinct ones are collected.
void collect_matchings(const BiGraph& g, std::uint64_t left, std::uint64_t right, std::size_t cap,
                       std::vector<BiGraph>& found) {
  BiGraph m(g.n(), g.d());
  auto rec = [&](auto&& self, std::uint64_t rows, std::uint64_t free) -> void {
    if (found.size() >= cap) return;
    if (!rows) {
      if (std::find(found.begin(), found.end(), m) == found.end()) found.push_back(m);
      return;
    }
    int i = std::countr_zero(rows);
    for (std::uint64_t opts = g.row(i) & free; opts; opts &= opts - 1) {
      int j = std::countr_zero(opts);
      m.add_edge(i, j);
      self(self, rows & (rows - 1), free & ~(std::uint64_t{1} << j));
      m.remove_edge(i, j);
    }
  };
  rec(rec, left, right);
}

}  // namespace

ObjectHandle minor(const ObjectHandle& obj, std::uint64_t delete_left, std::uint64_t contract_right) {
  Kept k = kept_sides(left_size(obj), right_size(obj), delete_left, contract_right);
  return std::visit([&](const auto& x) -> ObjectHandle { return minor_of(x, k); }, obj);
}

MatchingStack extraction(const GenericTom& t) {
  const int n = t.n(), d = t.d();
  // Every type of a valid generic matroid lies in a tree-type, so the minor's
  // topes at 1_J are the perfect matchings of I x J inside the tree-types.
  auto trees = tree_types(t);
  MatchingStack out{n, d, {}};
  for (std::uint64_t left = 0; left <= low_mask(n); ++left) {
    for (std::uint64_t right = 0; right <= low_mask(d); ++right) {
      if (std::popcount(left) != std::popcount(right)) continue;
      std::vector<BiGraph> found;
      if (left == 0) found.emplace_back(n, d);
      for (std::size_t x = 0; left && x < trees.size() && found.size() < 2; ++x)
        collect_matchings(trees[x], left, right, 2, found);
      if (found.size() != 1) {
        ValidationReport r;
        r.fail("extraction", {{"I", mask_to_json(left)}, {"J", mask_to_json(right)}, {"topes", found.size()}});
        throw ValidationError("extraction: no unique tope at the unit position of a minor", r);
      }
      out.assignments.emplace(std::make_pair(left, right), found.front());
    }
  }
  return out;
}

TopeArrangement arrangement_from_ensemble(const MatchingStack& s) {
  require(validate_ensemble(s, EnsembleLevel::full), "input is not a full matching ensemble");
  AmalgamationCache cache(complete_stack(s));
  std::vector<BiGraph> topes;
  for (auto v : lattice_points(s.n, s.d)) {
    for (int& x : v) ++x;
    topes.push_back(restrict_graph(cache.tope(v), low_mask(s.n), low_mask(s.d)));
  }
  return TopeArrangement(s.n, s.d, std::move(topes));
}

FineMixedSubdivision fms_from_ensemble(const MatchingStack& s) {
  auto out = canonical(fms_from_arrangement(arrangement_from_ensemble(s)));
  require(validate_fms(out, FmsMode::full), "ensemble does not yield a subdivision");
  auto back = extraction(generate_from_tree_types(out.cells, s.n, s.d));
  for (const auto& [key, m] : s.assignments) {
    auto it = back.assignments.find(key);
    if (it == back.assignments.end() || it->second != m) {
      ValidationReport r;
      r.fail("extraction", {{"I", mask_to_json(key.first)},
                            {"J", mask_to_json(key.second)},
                            {"expected", edges_to_json(m)},
                            {"actual", it == back.assignments.end() ? nlohmann::json(nullptr)
                                                                     : edges_to_json(it->second)}});
      throw ValidationError("extraction does not recover the ensemble", r);
    }
  }
  return out;
}

FineMixedSubdivision to_fms(const ObjectHandle& obj) {
  struct Visitor {
    FineMixedSubdivision operator()(const FineMixedSubdivision& s) const { return s; }
    FineMixedSubdivision operator()(const GenericTom& t) const {
      require(validate_tom(t), "not a valid tropical oriented matroid");
      return {t.n(), t.d(), tree_types(t)};
    }
    FineMixedSubdivision operator()(const MatchingStack& s) const { return fms_from_ensemble(s); }
    FineMixedSubdivision operator()(const MatchingField& f) const {
      if (!f.pointed) throw std::invalid_argument("only pointed matching fields stand for a subdivision");
      require(check_well_formed(f), "malformed matching field");
      return fms_from_ensemble(reduce_pointed(f));
    }
    FineMixedSubdivision operator()(const TopeArrangement& a) const {
      require(validate_arrangement(a, ArrangementLevel::trianguloid), "not a trianguloid");
      return fms_from_arrangement(a);
    }
  };
  return canonical(std::visit(Visitor{}, obj));
}

ValidationReport roundtrip_audit(const ObjectHandle& seed) {
  ValidationReport rep;
  std::string leg = "seed_to_fms";
  auto differ = [&](const nlohmann::json& expected, const nlohmann::json& actual) {
    if (expected == actual) return false;
    rep.fail("roundtrip", {{"leg", leg}, {"expected", expected}, {"actual", actual}});
    return true;
  };
  auto check = [&](const ValidationReport& r) {
    return !r.verdict() && differ(ValidationReport{}.to_json(), r.to_json());
  };
  try {
    auto s0 = to_fms(seed);
    if (check(validate_fms(s0, FmsMode::full))) return rep;

    leg = "fms_to_tom";
    auto t = generate_from_tree_types(s0.cells, s0.n, s0.d);
    if (check(validate_tom(t))) return rep;
    if (differ(to_json(s0), to_json(FineMixedSubdivision{t.n(), t.d(), tree_types(t)}))) return rep;

    leg = "tom_to_ensemble";
    auto e = extraction(t);
    if (check(validate_ensemble(e, EnsembleLevel::full))) return rep;

    leg = "ensemble_to_arrangement";
    auto a = arrangement_from_ensemble(e);
    if (check(validate_arrangement(a, ArrangementLevel::trianguloid))) return rep;
    if (differ(to_json(topes_from_fms(s0)), to_json(a))) return rep;

    leg = "arrangement_to_fms";
    if (differ(to_json(s0), to_json(canonical(fms_from_arrangement(a))))) return rep;

    leg = "seed";
    struct Counterpart {
      const FineMixedSubdivision& s;
      const GenericTom& t;
      const MatchingStack& e;
      const TopeArrangement& a;
      ObjectHandle operator()(const FineMixedSubdivision&) const { return s; }
      ObjectHandle operator()(const GenericTom&) const { return t; }
      ObjectHandle operator()(const MatchingStack&) const { return e; }
      ObjectHandle operator()(const MatchingField&) const { return complete_stack(e); }
      ObjectHandle operator()(const TopeArrangement&) const { return a; }
    };
    differ(to_json(seed), to_json(std::visit(Counterpart{s0, t, e, a}, seed)));
  } catch (const ValidationError& err) {
    rep.fail("roundtrip", {{"leg", leg},
                           {"expected", "success"},
                           {"actual", {{"error", err.what()}, {"report", err.report().to_json()}}}});
  }
  return rep;
}

}  // namespace tomkit

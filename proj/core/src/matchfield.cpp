#include "tomkit/matchfield.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "tomkit/json_io.hpp"

namespace tomkit {
namespace {

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// g is a perfect matching between the left mask and the right mask.
bool is_perfect_matching(const BiGraph& g, std::uint64_t left, std::uint64_t right) {
  std::uint64_t seen = 0;
  for (int i = 0; i < g.n(); ++i) {
    std::uint64_t r = g.row(i);
    if (!((left >> i) & 1U)) {
      if (r) return false;
      continue;
    }
    if (std::popcount(r) != 1 || (r & ~right) || (r & seen)) return false;
    seen |= r;
  }
  return seen == right;
}

nlohmann::json matching_witness(std::uint64_t sigma, const BiGraph& g) {
  return {{"sigma", mask_to_json(sigma)}, {"matching", graph_to_json(g)}};
}

bool all_right_degrees(const BiGraph& g, std::uint64_t mask, int value) {
  auto rd = degree_vector(g, Side::right).values;
  for (int j = 0; j < g.d(); ++j) {
    if (((mask >> j) & 1U) && rd[j] != value) return false;
  }
  return true;
}

bool all_left_degrees(const BiGraph& g, std::uint64_t mask, int value) {
  for (int i = 0; i < g.n(); ++i) {
    if (((mask >> i) & 1U) && g.left_degree(i) != value) return false;
  }
  return true;
}

// M_sigma(i) as a one-bit mask of [d].
std::uint64_t image(const MatchingField& f, std::uint64_t sigma, int i) {
  return f.at(sigma).row(i);
}

std::vector<int> members(std::uint64_t mask) {
  std::vector<int> out;
  for (; mask; mask &= mask - 1) out.push_back(std::countr_zero(mask));
  return out;
}

std::uint64_t bit(int k) { return std::uint64_t{1} << k; }

}  // namespace

void for_each_subset(int size, int k, const std::function<void(std::uint64_t)>& fn) {
  if (size < 0 || size >= 64) throw std::invalid_argument("for_each_subset: size out of range");
  if (k < 0 || k > size) return;
  if (k == 0) {
    fn(0);
    return;
  }
  const std::uint64_t limit = bit(size);
  for (std::uint64_t mask = low_mask(k); mask < limit;) {
    fn(mask);
    // Next mask with the same popcount.
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

std::vector<std::uint64_t> subsets(int size, int k) {
  std::vector<std::uint64_t> out;
  for_each_subset(size, k, [&](std::uint64_t m) { out.push_back(m); });
  return out;
}

const BiGraph& MatchingField::at(std::uint64_t sigma) const { return assignments.at(sigma); }

ValidationReport check_well_formed(const MatchingField& f) {
  ValidationReport report;
  if (f.d < 1 || f.n_prime < f.d || f.n_prime >= 64 || (f.pointed && f.n() < 1)) {
    report.fail("shape", {{"n_prime", f.n_prime}, {"d", f.d}, {"pointed", f.pointed}});
    return report;
  }
  if (f.assignments.size() != binomial(f.n_prime, f.d)) {
    report.fail("assignment_count",
                {{"expected", binomial(f.n_prime, f.d)}, {"actual", f.assignments.size()}});
  }
  for (const auto& [sigma, g] : f.assignments) {
    if (std::popcount(sigma) != f.d || (sigma & ~low_mask(f.n_prime))) {
      report.fail("subset", {{"sigma", mask_to_json(sigma)}});
      continue;
    }
    if (g.n() != f.n_prime || g.d() != f.d || !is_perfect_matching(g, sigma, low_mask(f.d))) {
      report.fail("bijection", matching_witness(sigma, g));
      continue;
    }
    if (f.pointed) {
      for (int j = 0; j < f.d; ++j) {
        int v = f.n() + j;
        if (((sigma >> v) & 1U) && g.row(v) != bit(j)) {
          report.fail("pointed", matching_witness(sigma, g));
        }
      }
    }
  }
  return report;
}

const char* variant_name(LinkageVariant v) {
  switch (v) {
    case LinkageVariant::strong: return "strong";
    case LinkageVariant::weak: return "weak";
    case LinkageVariant::three_element: return "three_element";
    case LinkageVariant::exchange: return "exchange";
    case LinkageVariant::elimination: return "elimination";
  }
  return "unknown";
}

LinkageCovector linkage_covector(const MatchingField& f, std::uint64_t tau) {
  if (std::popcount(tau) != f.d + 1) {
    throw std::invalid_argument("linkage_covector: tau must have d + 1 elements");
  }
  LinkageCovector c{BiGraph(f.n_prime, f.d), tau, false};
  for (int i : members(tau)) c.graph |= f.at(tau & ~bit(i));
  c.linkage = is_tree_on(c.graph, tau, low_mask(f.d)) &&
              all_right_degrees(c.graph, low_mask(f.d), 2);
  return c;
}

namespace {

void strong_linkage(const MatchingField& f, ValidationReport& report) {
  for_each_subset(f.n_prime, f.d + 1, [&](std::uint64_t tau) {
    auto c = linkage_covector(f, tau);
    if (!c.linkage) {
      report.fail("strong", {{"tau", mask_to_json(tau)}, {"union", graph_to_json(c.graph)}});
    }
  });
}

void weak_linkage(const MatchingField& f, ValidationReport& report) {
  for_each_subset(f.n_prime, f.d + 1, [&](std::uint64_t tau) {
    auto elems = members(tau);
    for (int j = 0; j < f.d; ++j) {
      bool found = false;
      for (std::size_t a = 0; a < elems.size() && !found; ++a) {
        for (std::size_t b = a + 1; b < elems.size() && !found; ++b) {
          const BiGraph& m1 = f.at(tau & ~bit(elems[a]));
          const BiGraph& m2 = f.at(tau & ~bit(elems[b]));
          bool same_elsewhere = true;
          for (int k = 0; k < f.d && same_elsewhere; ++k) {
            if (k != j && m1.column(k) != m2.column(k)) same_elsewhere = false;
          }
          found = same_elsewhere;
        }
      }
      if (!found) report.fail("weak", {{"tau", mask_to_json(tau)}, {"right", j + 1}});
    }
  });
}

void three_element_linkage(const MatchingField& f, ValidationReport& report) {
  for_each_subset(f.n_prime, f.d + 1, [&](std::uint64_t tau) {
    auto elems = members(tau);
    for (int i1 : elems) {
      for (int i2 : elems) {
        for (int i3 : elems) {
          if (i1 == i2 || i2 == i3 || i1 == i3) continue;
          if (image(f, tau & ~bit(i1), i2) == image(f, tau & ~bit(i3), i2)) continue;
          if (image(f, tau & ~bit(i1), i3) == image(f, tau & ~bit(i2), i3)) continue;
          report.fail("three_element",
                      {{"tau", mask_to_json(tau)}, {"i1", i1 + 1}, {"i2", i2 + 1}, {"i3", i3 + 1}});
        }
      }
    }
  });
}

void exchange_linkage(const MatchingField& f, ValidationReport& report) {
  for (const auto& [sigma, m] : f.assignments) {
    for (const auto& [sigma2, m2] : f.assignments) {
      if (sigma == sigma2) continue;
      bool found = false;
      for (int i : members(sigma & ~sigma2)) {
        for (int i2 : members(sigma2 & ~sigma)) {
          std::uint64_t j = m.row(i);
          if (m2.row(i2) != j) continue;
          BiGraph swapped = m;
          swapped.set_row(i, 0);
          swapped.set_row(i2, j);
          if (swapped == f.at((sigma & ~bit(i)) | bit(i2))) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) {
        report.fail("exchange", {{"sigma", mask_to_json(sigma)}, {"sigma2", mask_to_json(sigma2)}});
      }
    }
  }
}

void elimination_linkage(const MatchingField& f, ValidationReport& report) {
  for (auto a = f.assignments.begin(); a != f.assignments.end(); ++a) {
    for (auto b = std::next(a); b != f.assignments.end(); ++b) {
      const BiGraph joined = a->second | b->second;
      for (int i : members(a->first & b->first)) {
        if (a->second.row(i) == b->second.row(i)) continue;
        const std::uint64_t pool = (a->first | b->first) & ~bit(i);
        bool found = false;
        for (std::uint64_t sub = pool; sub && !found; sub = (sub - 1) & pool) {
          if (std::popcount(sub) == f.d && f.at(sub).is_subgraph_of(joined)) found = true;
        }
        if (!found) {
          report.fail("elimination", {{"sigma", mask_to_json(a->first)},
                                      {"sigma2", mask_to_json(b->first)},
                                      {"i", i + 1}});
        }
      }
    }
  }
}

}  // namespace

ValidationReport check_linkage(const MatchingField& f, LinkageVariant variant) {
  ValidationReport report;
  switch (variant) {
    case LinkageVariant::strong: strong_linkage(f, report); break;
    case LinkageVariant::weak: weak_linkage(f, report); break;
    case LinkageVariant::three_element: three_element_linkage(f, report); break;
    case LinkageVariant::exchange: exchange_linkage(f, report); break;
    case LinkageVariant::elimination: elimination_linkage(f, report); break;
  }
  return report;
}

ValidationReport check_strong_inverse_linkage(const MatchingField& f) {
  ValidationReport report;
  const int unpointed = f.n();
  for_each_subset(f.n_prime, f.d - 1, [&](std::uint64_t rho) {
    BiGraph u(f.n_prime, f.d);
    std::uint64_t covered = 0;
    for (int x = 0; x < f.n_prime; ++x) {
      if ((rho >> x) & 1U) continue;
      u |= f.at(rho | bit(x));
      covered |= rho | bit(x);
    }
    bool ok = is_forest(u);
    for (int i = 0; i < f.n_prime && ok; ++i) {
      if (!((covered >> i) & 1U)) continue;
      int expected = (((rho >> i) & 1U) && i < unpointed) ? 2 : 1;
      if (u.left_degree(i) != expected) ok = false;
    }
    if (!ok) report.fail("strong_inverse", {{"rho", mask_to_json(rho)}, {"union", graph_to_json(u)}});
  });
  return report;
}

const BiGraph& MatchingStack::at(std::uint64_t left, std::uint64_t right) const {
  return assignments.at({left, right});
}

ValidationReport check_well_formed(const MatchingStack& s) {
  ValidationReport report;
  if (s.n < 1 || s.d < 1 || s.n >= 64 || s.d >= 64) {
    report.fail("shape", {{"n", s.n}, {"d", s.d}});
    return report;
  }
  std::uint64_t expected = 0;
  for (int k = 0; k <= std::min(s.n, s.d); ++k) expected += binomial(s.n, k) * binomial(s.d, k);
  if (s.assignments.size() != expected) {
    report.fail("assignment_count", {{"expected", expected}, {"actual", s.assignments.size()}});
  }
  for (const auto& [key, g] : s.assignments) {
    auto [left, right] = key;
    if (std::popcount(left) != std::popcount(right) || (left & ~low_mask(s.n)) ||
        (right & ~low_mask(s.d))) {
      report.fail("subset_pair", {{"I", mask_to_json(left)}, {"J", mask_to_json(right)}});
      continue;
    }
    if (g.n() != s.n || g.d() != s.d || !is_perfect_matching(g, left, right)) {
      report.fail("bijection", {{"I", mask_to_json(left)},
                                {"J", mask_to_json(right)},
                                {"matching", graph_to_json(g)}});
    }
  }
  return report;
}

ValidationReport validate_ensemble(const MatchingStack& s, EnsembleLevel level) {
  ValidationReport report = check_well_formed(s);
  if (!report.verdict()) return report;
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, const BiGraph*>> all;
  for (const auto& [key, g] : s.assignments) all.push_back({key, &g});
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      if (are_compatible(*all[a].second, *all[b].second)) continue;
      report.fail("closure", {{"first", graph_to_json(*all[a].second)},
                              {"second", graph_to_json(*all[b].second)}});
    }
  }
  for (int k = 0; k + 1 <= s.n && k <= s.d; ++k) {
    for (std::uint64_t left : subsets(s.n, k + 1)) {
      for (std::uint64_t right : subsets(s.d, k)) {
        BiGraph u(s.n, s.d);
        for (int i : members(left)) u |= s.at(left & ~bit(i), right);
        if (!is_tree_on(u, left, right) || !all_right_degrees(u, right, 2)) {
          report.fail("left_linkage", {{"I", mask_to_json(left)},
                                       {"J", mask_to_json(right)},
                                       {"union", graph_to_json(u)}});
        }
      }
    }
  }
  if (level == EnsembleLevel::full) {
    for (int k = 0; k <= s.n && k + 1 <= s.d; ++k) {
      for (std::uint64_t left : subsets(s.n, k)) {
        for (std::uint64_t right : subsets(s.d, k + 1)) {
          BiGraph u(s.n, s.d);
          for (int j : members(right)) u |= s.at(left, right & ~bit(j));
          if (!is_tree_on(u, left, right) || !all_left_degrees(u, left, 2)) {
            report.fail("right_linkage", {{"I", mask_to_json(left)},
                                          {"J", mask_to_json(right)},
                                          {"union", graph_to_json(u)}});
          }
        }
      }
    }
  }
  return report;
}

BiGraph extended_left_linkage_covector(const MatchingStack& s, std::uint64_t left,
                                       std::uint64_t right) {
  if (std::popcount(left) != std::popcount(right) + 1) {
    throw std::invalid_argument("extended_left_linkage_covector: need |I| = |J| + 1");
  }
  BiGraph u(s.n, s.d);
  for (int i : members(left)) u |= s.at(left & ~bit(i), right);
  for (int j = 0; j < s.d; ++j) {
    if (!((right >> j) & 1U)) u |= s.at(left, right | bit(j));
  }
  return u;
}

ValidationReport check_extended_left_linkage(const MatchingStack& s) {
  ValidationReport report;
  const std::uint64_t all = low_mask(s.d);
  for (int k = 0; k + 1 <= s.n && k < s.d; ++k) {
    for (std::uint64_t left : subsets(s.n, k + 1)) {
      for (std::uint64_t right : subsets(s.d, k)) {
        BiGraph u = extended_left_linkage_covector(s, left, right);
        if (!is_tree_on(u, left, all) || !all_right_degrees(u, right, 2) ||
            !all_right_degrees(u, all & ~right, 1)) {
          report.fail("extended_left_linkage", {{"I", mask_to_json(left)},
                                                {"J", mask_to_json(right)},
                                                {"union", graph_to_json(u)}});
        }
      }
    }
  }
  return report;
}

MatchingStack reduce_pointed(const MatchingField& f) {
  if (!f.pointed) throw std::invalid_argument("reduce_pointed: field is not pointed");
  const int n = f.n();
  if (n < 1) throw std::invalid_argument("reduce_pointed: no unpointed vertices");
  MatchingStack s{n, f.d, {}};
  for (const auto& [sigma, m] : f.assignments) {
    const std::uint64_t left = sigma & low_mask(n);
    const std::uint64_t pointed = sigma >> n;
    for (int j : members(pointed)) {
      if (m.row(n + j) != bit(j)) {
        throw std::invalid_argument("reduce_pointed: pointed vertex not matched to its copy");
      }
    }
    BiGraph residual(n, f.d);
    for (int i = 0; i < n; ++i) residual.set_row(i, m.row(i));
    s.assignments.emplace(std::make_pair(left, low_mask(f.d) & ~pointed), std::move(residual));
  }
  return s;
}

MatchingField complete_stack(const MatchingStack& s) {
  auto wf = check_well_formed(s);
  if (!wf.verdict()) throw std::invalid_argument("complete_stack: malformed stack");
  MatchingField f{s.n + s.d, s.d, true, {}};
  for_each_subset(f.n_prime, f.d, [&](std::uint64_t sigma) {
    const std::uint64_t left = sigma & low_mask(s.n);
    const std::uint64_t pointed = sigma >> s.n;
    const BiGraph& m = s.at(left, low_mask(s.d) & ~pointed);
    BiGraph full(f.n_prime, f.d);
    for (int i = 0; i < s.n; ++i) full.set_row(i, m.row(i));
    for (int j : members(pointed)) full.set_row(s.n + j, bit(j));
    f.assignments.emplace(sigma, std::move(full));
  });
  return f;
}

const BiGraph& TopeField::at(std::uint64_t sigma) const { return assignments.at(sigma); }

TopeField as_tope_field(const MatchingField& f) {
  return TopeField{f.n_prime, f.d, constant_vector(f.d, 1), f.assignments};
}

BiGraph tope_linkage_covector(const TopeField& tf, std::uint64_t tau) {
  if (std::popcount(tau) != tf.thickness() + 1) {
    throw std::invalid_argument("tope_linkage_covector: tau must have k + 1 elements");
  }
  BiGraph u(tf.n_prime, tf.d);
  for (int i : members(tau)) u |= tf.at(tau & ~bit(i));
  return u;
}

namespace {

bool is_tope_covector(const TopeField& tf, const BiGraph& u, std::uint64_t tau) {
  if (!is_tree_on(u, tau, low_mask(tf.d))) return false;
  auto rd = degree_vector(u, Side::right).values;
  for (int j = 0; j < tf.d; ++j) {
    if (rd[j] != tf.type[j] + 1) return false;
  }
  return true;
}

}  // namespace

ValidationReport check_tope_field_linkage(const TopeField& tf) {
  ValidationReport report;
  for_each_subset(tf.n_prime, tf.thickness() + 1, [&](std::uint64_t tau) {
    BiGraph u = tope_linkage_covector(tf, tau);
    if (!is_tope_covector(tf, u, tau)) {
      report.fail("tope_linkage", {{"tau", mask_to_json(tau)}, {"union", graph_to_json(u)}});
    }
  });
  return report;
}

TopeField amalgamate(const TopeField& tf, int j) {
  if (j < 0 || j >= tf.d) throw std::invalid_argument("amalgamate: right index out of range");
  if (tf.thickness() >= tf.n_prime) throw std::invalid_argument("amalgamate: field is maximal");
  TopeField out{tf.n_prime, tf.d, shifted(tf.type, j, 1), {}};
  for_each_subset(tf.n_prime, tf.thickness() + 1, [&](std::uint64_t tau) {
    BiGraph u = tope_linkage_covector(tf, tau);
    if (!is_tope_covector(tf, u, tau)) {
      ValidationReport r;
      r.fail("tope_linkage", {{"tau", mask_to_json(tau)}, {"union", graph_to_json(u)}});
      throw ValidationError("amalgamate: tope field is not linkage", r);
    }
    out.assignments.emplace(tau, push_pull(u, {Side::right, j}, PushPull::pull));
  });
  return out;
}

AmalgamationCache::AmalgamationCache(const MatchingField& f) {
  TopeField base = as_tope_field(f);
  cache_.emplace(base.type, std::move(base));
}

const TopeField& AmalgamationCache::field(const LatticePoint& type) {
  if (auto it = cache_.find(type); it != cache_.end()) return it->second;
  const TopeField& base = cache_.begin()->second;
  if (static_cast<int>(type.size()) != base.d ||
      std::any_of(type.begin(), type.end(), [](int x) { return x < 1; }) ||
      level_of(type) > base.n_prime) {
    throw std::invalid_argument("AmalgamationCache: type out of range");
  }
  // The predecessor drops the largest coordinate that can be lowered, so
  // lower indices are amalgamated first.
  int j = base.d - 1;
  while (type[j] < 2) --j;
  const TopeField& prev = field(shifted(type, j, -1));
  return cache_.emplace(type, amalgamate(prev, j)).first->second;
}

const BiGraph& AmalgamationCache::tope(const LatticePoint& type) {
  const TopeField& tf = field(type);
  if (tf.thickness() != tf.n_prime) throw std::invalid_argument("AmalgamationCache: not maximal");
  return tf.assignments.begin()->second;
}

}  // namespace tomkit

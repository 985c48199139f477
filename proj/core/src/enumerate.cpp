#include "tomkit/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace tomkit {

namespace {

constexpr const char* kEnumNames[] = {"fms",          "pre_trianguloid", "trianguloid",
                                      "tope_arrangement", "matching_field", "linkage_matching_field"};

/// Memoized pairwise compatibility over a fixed list of graphs.
class CompatMemo {
 public:
  explicit CompatMemo(const std::vector<const BiGraph*>& graphs) : graphs_(graphs) {
    const std::size_t size = graphs.size();
    if (size <= 8192) table_ = std::make_unique<std::atomic<std::uint8_t>[]>(size * size);
  }

  bool operator()(std::size_t a, std::size_t b) const {
    if (!table_) return are_compatible(*graphs_[a], *graphs_[b]);
    auto& cell = table_[a * graphs_.size() + b];
    std::uint8_t v = cell.load(std::memory_order_relaxed);
    if (v == 0) {
      v = are_compatible(*graphs_[a], *graphs_[b]) ? 1 : 2;
      cell.store(v, std::memory_order_relaxed);
      table_[b * graphs_.size() + a].store(v, std::memory_order_relaxed);
    }
    return v == 1;
  }

 private:
  std::vector<const BiGraph*> graphs_;
  std::unique_ptr<std::atomic<std::uint8_t>[]> table_;
};

/// One graph per slot, chosen from the slot's candidates.
struct Search {
  std::shared_ptr<std::vector<std::vector<BiGraph>>> candidates =
      std::make_shared<std::vector<std::vector<BiGraph>>>();
  /// Whether candidate c at slot k fits the choices at slots 0..k-1.
  std::function<bool(std::size_t k, std::size_t c, const std::vector<std::size_t>& chosen)> fits;
  /// Final check on a complete choice.
  std::function<bool(const std::vector<std::size_t>& chosen)> accept;
  /// The object for a complete choice.
  std::function<ObjectHandle(const std::vector<std::size_t>& chosen)> build;
  /// Left and right sizes for the relabeling action.
  int left = 0;
  int right = 0;
};

std::vector<BiGraph> members(const Search& s, const std::vector<std::size_t>& chosen) {
  std::vector<BiGraph> out;
  for (std::size_t k = 0; k < chosen.size(); ++k) out.push_back((*s.candidates)[k][chosen[k]]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> permutations(int size) {
  std::vector<int> p(static_cast<std::size_t>(size));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// True iff no relabeling gives a smaller sorted member list. Every kind here
/// is determined by its set of member graphs.
bool orbit_representative(const Search& s, const std::vector<std::size_t>& chosen) {
  auto base = members(s, chosen);
  static thread_local std::map<std::pair<int, int>, std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>>
      perms;
  auto& p = perms[{s.left, s.right}];
  if (p.first.empty()) p = {permutations(s.left), permutations(s.right)};
  std::vector<BiGraph> image(base.size(), BiGraph(1, 1));
  for (const auto& l : p.first) {
    for (const auto& r : p.second) {
      for (std::size_t x = 0; x < base.size(); ++x) image[x] = relabel(base[x], l, r);
      std::sort(image.begin(), image.end());
      if (image < base) return false;
    }
  }
  return true;
}

struct Budget {
  std::optional<std::uint64_t> limit;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};

  bool take() {
    std::uint64_t used = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (limit && used > *limit) {
      exhausted.store(true, std::memory_order_relaxed);
      return false;
    }
    return !exhausted.load(std::memory_order_relaxed);
  }
};

/// Depth-first search below a fixed first choice.
void run_branch(const Search& s, std::size_t first, bool quotient, Budget& budget,
                const std::function<void(const ObjectHandle&)>* sink, std::uint64_t& found) {
  const std::size_t slots = s.candidates->size();
  std::vector<std::size_t> chosen{first};
  if (!budget.take()) return;
  auto rec = [&](auto&& self) -> void {
    const std::size_t k = chosen.size();
    if (k == slots) {
      if (!s.accept(chosen)) return;
      if (quotient && !orbit_representative(s, chosen)) return;
      ++found;
      if (sink) (*sink)(s.build(chosen));
      return;
    }
    for (std::size_t c = 0; c < (*s.candidates)[k].size(); ++c) {
      if (!s.fits(k, c, chosen)) continue;
      if (!budget.take()) return;
      chosen.push_back(c);
      self(self);
      chosen.pop_back();
      if (budget.exhausted.load(std::memory_order_relaxed)) return;
    }
  };
  rec(rec);
}

EnumerationStats run(const Search& s, const EnumerationTask& task,
                     const std::function<void(const ObjectHandle&)>* sink) {
  Budget budget;
  budget.limit = task.node_budget;
  EnumerationStats stats;
  const std::size_t branches = s.candidates->empty() ? 0 : s.candidates->front().size();
  int threads = task.threads > 0 ? task.threads : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  // A budget makes the cut-off point order dependent, so it runs serially.
  if (task.node_budget || threads == 1 || branches < 2) {
    for (std::size_t b = 0; b < branches && !budget.exhausted; ++b) run_branch(s, b, task.quotient, budget, sink, stats.count);
  } else {
    std::vector<std::uint64_t> counts(branches, 0);
    std::vector<std::vector<ObjectHandle>> buffers(branches);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      for (std::size_t b; (b = next.fetch_add(1)) < branches;) {
        try {
          std::function<void(const ObjectHandle&)> collect = [&, b](const ObjectHandle& obj) {
            buffers[b].push_back(obj);
          };
          run_branch(s, b, task.quotient, budget, sink ? &collect : nullptr, counts[b]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          budget.exhausted = true;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, static_cast<int>(branches)); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    for (std::size_t b = 0; b < branches; ++b) {
      stats.count += counts[b];
      if (sink)
        for (const auto& obj : buffers[b]) (*sink)(obj);
    }
  }
  stats.nodes = budget.nodes.load();
  stats.complete = !budget.exhausted.load();
  if (stats.complete && task.node_budget && stats.nodes > *task.node_budget) stats.complete = false;
  return stats;
}

std::vector<const BiGraph*> flatten(const std::vector<std::vector<BiGraph>>& candidates, std::vector<std::size_t>& offsets) {
  std::vector<const BiGraph*> out;
  for (const auto& list : candidates) {
    offsets.push_back(out.size());
    for (const auto& g : list) out.push_back(&g);
  }
  return out;
}

Search fms_search(int n, int d) {
  Search s;
  auto cands = s.candidates;
  s.left = n;
  s.right = d;
  for (auto p : lattice_points(n - 1, d)) {
    for (int& x : p) ++x;
    cands->push_back(trees_at(n, p));
  }
  auto offsets = std::make_shared<std::vector<std::size_t>>();
  auto memo = std::make_shared<CompatMemo>(flatten(*cands, *offsets));
  s.fits = [memo, offsets](std::size_t k, std::size_t c, const std::vector<std::size_t>& chosen) {
    const std::size_t g = (*offsets)[k] + c;
    for (std::size_t x = 0; x < chosen.size(); ++x)
      if (!(*memo)((*offsets)[x] + chosen[x], g)) return false;
    return true;
  };
  s.accept = [](const std::vector<std::size_t>&) { return true; };
  s.build = [cands, n, d](const std::vector<std::size_t>& chosen) -> ObjectHandle {
    std::vector<BiGraph> cells;
    for (std::size_t k = 0; k < chosen.size(); ++k) cells.push_back((*cands)[k][chosen[k]]);
    std::sort(cells.begin(), cells.end());
    return FineMixedSubdivision{n, d, std::move(cells)};
  };
  return s;
}

Search arrangement_search(EnumKind kind, int n, int d) {
  auto points = std::make_shared<std::vector<LatticePoint>>(lattice_points(n, d));
  Search s;
  auto cands = s.candidates;
  s.left = n;
  s.right = d;
  for (const auto& p : *points) cands->push_back(topes_at(n, p));
  if (kind == EnumKind::tope_arrangement) {
    auto offsets = std::make_shared<std::vector<std::size_t>>();
    auto memo = std::make_shared<CompatMemo>(flatten(*cands, *offsets));
    s.fits = [memo, offsets](std::size_t k, std::size_t c, const std::vector<std::size_t>& chosen) {
      const std::size_t g = (*offsets)[k] + c;
      for (std::size_t x = 0; x < chosen.size(); ++x)
        if (!(*memo)((*offsets)[x] + chosen[x], g)) return false;
      return true;
    };
  } else {
    // Combinatorial sector condition against every adjacent earlier point.
    s.fits = [points, cands, d](std::size_t k, std::size_t c, const std::vector<std::size_t>& chosen) {
      const LatticePoint& p = (*points)[k];
      const BiGraph& tp = (*cands)[k][c];
      for (int b = 0; b < d; ++b) {
        if (p[static_cast<std::size_t>(b)] < 1) continue;
        for (int a = 0; a < d; ++a) {
          if (a == b) continue;
          auto q = shifted(shifted(p, b, -1), a, 1);
          auto rank = colex_rank(q);
          if (rank >= k) continue;
          const BiGraph& tq = (*cands)[rank][chosen[rank]];
          if (tq.column(b) & ~tp.column(b)) return false;
          if (tp.column(a) & ~tq.column(a)) return false;
        }
      }
      return true;
    };
  }
  if (kind == EnumKind::trianguloid) {
    s.accept = [cands, n, d](const std::vector<std::size_t>& chosen) {
      std::vector<BiGraph> topes;
      for (std::size_t k = 0; k < chosen.size(); ++k) topes.push_back((*cands)[k][chosen[k]]);
      return check_hexagon(TopeArrangement(n, d, std::move(topes))).verdict();
    };
  } else {
    s.accept = [](const std::vector<std::size_t>&) { return true; };
  }
  s.build = [cands, n, d](const std::vector<std::size_t>& chosen) -> ObjectHandle {
    std::vector<BiGraph> topes;
    for (std::size_t k = 0; k < chosen.size(); ++k) topes.push_back((*cands)[k][chosen[k]]);
    return TopeArrangement(n, d, std::move(topes));
  };
  return s;
}

Search field_search(EnumKind kind, int n_prime, int d) {
  auto sigmas = std::make_shared<std::vector<std::uint64_t>>(subsets(n_prime, d));
  auto slot_of = std::make_shared<std::map<std::uint64_t, std::size_t>>();
  Search s;
  auto cands = s.candidates;
  s.left = n_prime;
  s.right = d;
  for (std::size_t k = 0; k < sigmas->size(); ++k) {
    (*slot_of)[(*sigmas)[k]] = k;
    std::vector<BiGraph> options;
    LatticePoint ones(static_cast<std::size_t>(d), 1);
    for (const auto& t : topes_at(d, ones)) {
      // Spread the bijection [d] -> [d] over the members of sigma.
      BiGraph m(n_prime, d);
      int row = 0;
      for (std::uint64_t rest = (*sigmas)[k]; rest; rest &= rest - 1, ++row)
        m.set_row(std::countr_zero(rest), t.row(row));
      options.push_back(m);
    }
    std::sort(options.begin(), options.end());
    cands->push_back(std::move(options));
  }
  if (kind == EnumKind::linkage_matching_field) {
    const std::uint64_t right = (std::uint64_t{1} << d) - 1;
    s.fits = [sigmas, slot_of, cands, n_prime, d, right](std::size_t k, std::size_t c,
                                                          const std::vector<std::size_t>& chosen) {
      const std::uint64_t sigma = (*sigmas)[k];
      for (int x = 0; x < n_prime; ++x) {
        if ((sigma >> x) & 1U) continue;
        const std::uint64_t tau = sigma | (std::uint64_t{1} << x);
        BiGraph cover(n_prime, d);
        bool complete = true;
        for (std::uint64_t rest = tau; rest && complete; rest &= rest - 1) {
          const std::uint64_t sub = tau & ~(rest & -rest);
          const std::size_t slot = slot_of->at(sub);
          if (slot == k) cover |= (*cands)[k][c];
          else if (slot < k) cover |= (*cands)[slot][chosen[slot]];
          else complete = false;
        }
        if (!complete) continue;
        if (!is_tree_on(cover, tau, right)) return false;
        for (int j = 0; j < d; ++j)
          if (std::popcount(cover.column(j)) != 2) return false;
      }
      return true;
    };
  } else {
    s.fits = [](std::size_t, std::size_t, const std::vector<std::size_t>&) { return true; };
  }
  s.accept = [](const std::vector<std::size_t>&) { return true; };
  s.build = [sigmas, cands, n_prime, d](const std::vector<std::size_t>& chosen) -> ObjectHandle {
    MatchingField f{n_prime, d, false, {}};
    for (std::size_t k = 0; k < chosen.size(); ++k) f.assignments.emplace((*sigmas)[k], (*cands)[k][chosen[k]]);
    return f;
  };
  return s;
}

Search make_search(const EnumerationTask& task) {
  const bool field = task.kind == EnumKind::matching_field || task.kind == EnumKind::linkage_matching_field;
  if (task.n < 1 || task.d < 1) throw std::invalid_argument("enumerate: sizes must be positive");
  if (field && task.d > task.n) throw std::invalid_argument("enumerate: a matching field needs d <= n'");
  const int limit = task.max_n_plus_d > 0 ? task.max_n_plus_d : default_size_limit(task.kind);
  if (task.n + task.d > limit) {
    throw std::invalid_argument("enumerate: n + d = " + std::to_string(task.n + task.d) +
                                " exceeds the size limit " + std::to_string(limit));
  }
  switch (task.kind) {
    case EnumKind::fms:
      return fms_search(task.n, task.d);
    case EnumKind::pre_trianguloid:
    case EnumKind::trianguloid:
    case EnumKind::tope_arrangement:
      return arrangement_search(task.kind, task.n, task.d);
    case EnumKind::matching_field:
    case EnumKind::linkage_matching_field:
      return field_search(task.kind, task.n, task.d);
  }
  throw std::invalid_argument("enumerate: unknown kind");
}

}  // namespace

const char* enum_kind_name(EnumKind kind) { return kEnumNames[static_cast<int>(kind)]; }

std::optional<EnumKind> enum_kind_from_name(std::string_view name) {
  for (int k = 0; k < 6; ++k)
    if (name == kEnumNames[k]) return static_cast<EnumKind>(k);
  return std::nullopt;
}

int default_size_limit(EnumKind kind) {
  switch (kind) {
    case EnumKind::fms:
      return 8;
    case EnumKind::pre_trianguloid:
    case EnumKind::trianguloid:
    case EnumKind::tope_arrangement:
      return 7;
    case EnumKind::matching_field:
    case EnumKind::linkage_matching_field:
      return 7;
  }
  return 0;
}

EnumerationStats enumerate(const EnumerationTask& task, const std::function<void(const ObjectHandle&)>& sink) {
  return run(make_search(task), task, &sink);
}

EnumerationStats count(const EnumerationTask& task) { return run(make_search(task), task, nullptr); }

std::vector<ObjectHandle> enumerate_all(const EnumerationTask& task) {
  std::vector<ObjectHandle> out;
  auto stats = enumerate(task, [&](const ObjectHandle& obj) { out.push_back(obj); });
  if (!stats.complete) throw std::runtime_error("enumerate: node budget exhausted");
  return out;
}

std::vector<BiGraph> topes_at(int n, const LatticePoint& v) {
  const int d = static_cast<int>(v.size());
  std::vector<BiGraph> out;
  LatticePoint left = v;
  BiGraph g(n, d);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(g);
      return;
    }
    for (int j = 0; j < d; ++j) {
      if (left[static_cast<std::size_t>(j)] == 0) continue;
      --left[static_cast<std::size_t>(j)];
      g.set_row(i, std::uint64_t{1} << j);
      self(self, i + 1);
      ++left[static_cast<std::size_t>(j)];
    }
    g.set_row(i, 0);
  };
  if (level_of(v) == n && is_nonnegative(v)) rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BiGraph> trees_at(int n, const LatticePoint& v) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::map<LatticePoint, std::vector<BiGraph>>> cache;
  const int d = static_cast<int>(v.size());
  std::lock_guard<std::mutex> lock(mutex);
  auto& buckets = cache[{n, d}];
  if (buckets.empty()) {
    for (const auto& t : spanning_trees(n, d)) buckets[degree_vector(t, Side::right).values].push_back(t);
    for (auto& [rd, list] : buckets) std::sort(list.begin(), list.end());
  }
  auto it = buckets.find(v);
  return it == buckets.end() ? std::vector<BiGraph>{} : it->second;
}

BiGraph relabel(const BiGraph& g, const std::vector<int>& left, const std::vector<int>& right) {
  BiGraph out(g.n(), g.d());
  for (const Edge& e : g.edges())
    out.add_edge(left[static_cast<std::size_t>(e.left)], right[static_cast<std::size_t>(e.right)]);
  return out;
}

}  // namespace tomkit

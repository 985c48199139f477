#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tomkit/crypto.hpp"
#include "tomkit/enumerate.hpp"
#include "tomkit/json_io.hpp"
#include "tomkit/objects.hpp"
#include "tomkit/treelink.hpp"

namespace tomkit::cli {

namespace {

using nlohmann::json;

/// An input or usage problem; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input = "-";
  std::string output = "-";
  bool pretty = false;
  std::string kind;
  std::string mode;
  std::string to;
  int n = 0;
  int d = 0;
  bool count_only = false;
  bool quotient = false;
  bool timing = false;
  std::optional<std::uint64_t> budget;
  int threads = 1;
  int max_size = 0;
  std::vector<int> del;
  std::vector<int> con;
  std::string name;
};

class Io {
 public:
  Io(const Options& opt, std::istream& in, std::ostream& out) : opt_(opt), in_(in), out_(&out) {
    if (opt.output != "-") {
      file_.open(opt.output);
      if (!file_) throw UsageError("cannot open output file " + opt.output);
      out_ = &file_;
    }
  }

  json read() {
    std::string text;
    if (opt_.input == "-") {
      text.assign(std::istreambuf_iterator<char>(in_), {});
    } else {
      std::ifstream f(opt_.input);
      if (!f) throw UsageError("cannot open input file " + opt_.input);
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    return json::parse(text);
  }

  void write(const json& j) { *out_ << (opt_.pretty ? j.dump(2) : j.dump()) << '\n'; }
  /// One line per value regardless of --pretty.
  void line(const json& j) { *out_ << j.dump() << '\n'; }

 private:
  const Options& opt_;
  std::istream& in_;
  std::ostream* out_;
  std::ofstream file_;
};

ObjectHandle read_object(Io& io, const std::string& kind) {
  json j = io.read();
  if (!kind.empty()) {
    if (!kind_from_name(kind)) throw UsageError("unknown kind \"" + kind + "\"");
    if (!j.is_object()) throw FormatError("expected a JSON object");
    if (!j.contains("kind")) j["kind"] = kind;
    if (j.at("kind") != kind) throw UsageError("--kind " + kind + " does not match the input kind");
  }
  return object_from_json(j);
}

std::uint64_t mask_from_list(const std::vector<int>& indices, int limit, const char* what) {
  std::uint64_t mask = 0;
  for (int x : indices) {
    if (x < 1 || x > limit) throw UsageError(std::string(what) + " index out of range: " + std::to_string(x));
    mask |= std::uint64_t{1} << (x - 1);
  }
  return mask;
}

json report_json(const ValidationReport& r) { return r.to_json(); }

int validate(const Options& opt, Io& io) {
  auto obj = read_object(io, opt.kind);
  ValidationReport r;
  std::string mode = opt.mode;
  switch (kind_of(obj)) {
    case ObjectKind::fms: {
      if (mode.empty()) mode = "full";
      FmsMode m;
      if (mode == "full") m = FmsMode::full;
      else if (mode == "linkage_only") m = FmsMode::linkage_only;
      else if (mode == "compat_only") m = FmsMode::compat_only;
      else throw UsageError("fms modes: full, linkage_only, compat_only");
      r = validate_fms(std::get<FineMixedSubdivision>(obj), m);
      break;
    }
    case ObjectKind::tom:
      if (mode.empty()) mode = "full";
      if (mode != "full") throw UsageError("tom mode: full");
      r = validate_tom(std::get<GenericTom>(obj));
      break;
    case ObjectKind::matching_stack: {
      if (mode.empty()) mode = "full";
      if (mode != "full" && mode != "semi") throw UsageError("matching_stack modes: full, semi");
      const auto& s = std::get<MatchingStack>(obj);
      r = check_well_formed(s);
      if (r.verdict()) r = validate_ensemble(s, mode == "full" ? EnsembleLevel::full : EnsembleLevel::semi);
      break;
    }
    case ObjectKind::matching_field: {
      if (mode.empty()) mode = "strong";
      const auto& f = std::get<MatchingField>(obj);
      r = check_well_formed(f);
      if (!r.verdict()) break;
      bool matched = false;
      for (auto v : kLinkageVariants) {
        if (mode != "all" && mode != variant_name(v)) continue;
        matched = true;
        r.absorb(check_linkage(f, v));
      }
      if (!matched) throw UsageError("matching_field modes: strong, weak, three_element, exchange, elimination, all");
      break;
    }
    case ObjectKind::tope_arrangement: {
      if (mode.empty()) mode = "trianguloid";
      ArrangementLevel level;
      if (mode == "trianguloid") level = ArrangementLevel::trianguloid;
      else if (mode == "pre_trianguloid") level = ArrangementLevel::pre_trianguloid;
      else if (mode == "tope_arrangement") level = ArrangementLevel::tope_arrangement;
      else throw UsageError("tope_arrangement modes: trianguloid, pre_trianguloid, tope_arrangement");
      r = validate_arrangement(std::get<TopeArrangement>(obj), level);
      break;
    }
  }
  json out = report_json(r);
  out["kind"] = kind_name(kind_of(obj));
  out["mode"] = mode;
  io.write(out);
  return r.verdict() ? 0 : 1;
}

int convert(const Options& opt, Io& io) {
  auto obj = read_object(io, opt.kind);
  auto s = to_fms(obj);
  if (auto r = validate_fms(s, FmsMode::full); !r.verdict()) throw ValidationError("not a subdivision", r);
  if (opt.to == "tree_linkage_covector") {
    if (s.n < 2) throw UsageError("tree-linkage covectors need n >= 2");
    json all = json::array();
    for (const auto& c : all_covectors(s)) all.push_back(to_json(c));
    io.write(all);
    return 0;
  }
  auto target = kind_from_name(opt.to);
  if (!target) throw UsageError("unknown target kind \"" + opt.to + "\"");
  auto t = generate_from_tree_types(s.cells, s.n, s.d);
  switch (*target) {
    case ObjectKind::fms:
      io.write(to_json(s));
      break;
    case ObjectKind::tom:
      io.write(to_json(t));
      break;
    case ObjectKind::matching_stack:
      io.write(to_json(extraction(t)));
      break;
    case ObjectKind::matching_field:
      io.write(to_json(complete_stack(extraction(t))));
      break;
    case ObjectKind::tope_arrangement:
      io.write(to_json(topes_from_fms(s)));
      break;
  }
  return 0;
}

int enumerate_cmd(const Options& opt, Io& io) {
  auto kind = enum_kind_from_name(opt.kind);
  if (!kind) throw UsageError("unknown enumeration kind \"" + opt.kind + "\"");
  EnumerationTask task;
  task.kind = *kind;
  task.n = opt.n;
  task.d = opt.d;
  task.node_budget = opt.budget;
  task.threads = opt.threads;
  task.quotient = opt.quotient;
  task.max_n_plus_d = opt.max_size;
  if (task.max_n_plus_d == 0) {
    if (const char* env = std::getenv("TOMKIT_MAX_NPLUSD"); env && *env) {
      try {
        task.max_n_plus_d = std::stoi(env);
      } catch (const std::exception&) {
        throw UsageError("TOMKIT_MAX_NPLUSD must be an integer");
      }
    }
  }
  auto start = std::chrono::steady_clock::now();
  EnumerationStats stats;
  if (opt.count_only) {
    stats = count(task);
  } else {
    stats = enumerate(task, [&](const ObjectHandle& obj) { io.line(to_json(obj)); });
  }
  json summary = {{"kind", enum_kind_name(task.kind)}, {"n", task.n}, {"d", task.d}, {"count", stats.count}};
  if (task.quotient) summary["quotient"] = true;
  if (!stats.complete) {
    summary["complete"] = false;
    summary["nodes"] = stats.nodes;
  }
  if (opt.timing) {
    summary["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  io.line(summary);
  if (!stats.complete) throw UsageError("node budget exhausted; the count is partial");
  return 0;
}

int left_count(const ObjectHandle& obj) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FineMixedSubdivision> || std::is_same_v<T, MatchingStack>) return x.n;
        else return x.n();
      },
      obj);
}

int right_count(const ObjectHandle& obj) { return to_json(obj).at("d").get<int>(); }

int minor_cmd(const Options& opt, Io& io) {
  auto obj = read_object(io, opt.kind);
  auto del = mask_from_list(opt.del, left_count(obj), "--delete");
  auto con = mask_from_list(opt.con, right_count(obj), "--contract");
  io.write(to_json(minor(obj, del, con)));
  return 0;
}

int roundtrip(const Options& opt, Io& io) {
  auto r = roundtrip_audit(read_object(io, opt.kind));
  io.write(report_json(r));
  return r.verdict() ? 0 : 1;
}

BiGraph type_of(int d, std::initializer_list<std::initializer_list<int>> coords) {
  BiGraph g(static_cast<int>(coords.size()), d);
  int i = 0;
  for (const auto& c : coords) {
    for (int j : c) g.add_edge(i, j - 1);
    ++i;
  }
  return g;
}

int counterexample(const Options& opt, Io& io) {
  if (opt.name == "ensembles-lemma-3.16") {
    FineMixedSubdivision s{2, 4,
                           {type_of(4, {{1, 2, 3, 4}, {1}}), type_of(4, {{2, 3, 4}, {1, 2}}),
                            type_of(4, {{3, 4}, {1, 2, 3}}), type_of(4, {{4}, {1, 2, 3, 4}})}};
    auto t = generate_from_tree_types(s.cells, 2, 4);
    BiGraph first = type_of(4, {{2, 4}, {1}});
    BiGraph second = type_of(4, {{4}, {1, 3}});
    BiGraph both = first;
    both |= second;
    json conflicts = json::array();
    for (const auto& tree : s.cells) {
      if (auto w = compatibility_witness(both, tree)) {
        conflicts.push_back({{"tree_type", edges_to_json(tree)},
                             {"I", mask_to_json(w->left_set)},
                             {"J", mask_to_json(w->right_set)},
                             {"union_matching", edges_to_json(w->first_matching)},
                             {"tree_matching", edges_to_json(w->second_matching)}});
      }
    }
    const bool reproduced = validate_tom(t).verdict() && t.contains(first) && t.contains(second) &&
                            !t.contains(both) && !conflicts.empty();
    io.write({{"name", opt.name},
              {"tom", to_json(t)},
              {"T", edges_to_json(first)},
              {"T_prime", edges_to_json(second)},
              {"union", edges_to_json(both)},
              {"T_is_type", t.contains(first)},
              {"T_prime_is_type", t.contains(second)},
              {"union_is_type", t.contains(both)},
              {"incompatible_tree_types", conflicts},
              {"verdict", reproduced ? "union not a type" : "not reproduced"}});
    return reproduced ? 0 : 1;
  }
  if (opt.name == "pretri-not-trianguloid") {
    std::optional<TopeArrangement> found;
    EnumerationTask task;
    task.kind = EnumKind::pre_trianguloid;
    task.n = 2;
    task.d = 3;
    enumerate(task, [&](const ObjectHandle& obj) {
      const auto& a = std::get<TopeArrangement>(obj);
      if (!found && !check_hexagon(a).verdict()) found = a;
    });
    if (!found) {
      io.write({{"name", opt.name}, {"verdict", "not reproduced"}});
      return 1;
    }
    auto hexagon = check_hexagon(*found);
    io.write({{"name", opt.name},
              {"arrangement", to_json(*found)},
              {"pre_trianguloid", validate_arrangement(*found, ArrangementLevel::pre_trianguloid).verdict()},
              {"trianguloid", false},
              {"violations", hexagon.to_json().at("violations")},
              {"verdict", "pre-trianguloid but not a trianguloid"}});
    return 0;
  }
  throw UsageError("unknown counterexample \"" + opt.name +
                   "\"; available: ensembles-lemma-3.16, pretri-not-trianguloid");
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Validate, convert and enumerate generic tropical oriented matroids and their cryptomorphs", "tomkit"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("-i,--input", opt.input, "Input JSON file, - for stdin");
  app.add_option("-o,--output", opt.output, "Output file, - for stdout");
  app.add_flag("--pretty", opt.pretty, "Indent JSON output");

  const std::string kinds = "fms, tom, matching_stack, matching_field, tope_arrangement";
  auto* validate_app = app.add_subcommand("validate", "Check an object against its axioms");
  validate_app->add_option("--kind", opt.kind, "Expected kind: " + kinds);
  validate_app->add_option("--mode", opt.mode, "Validation mode or level for the kind");

  auto* convert_app = app.add_subcommand("convert", "Convert an object to another kind");
  convert_app->add_option("--kind", opt.kind, "Expected input kind");
  convert_app->add_option("--to", opt.to, "Target: " + kinds + ", tree_linkage_covector")->required();

  auto* enumerate_app = app.add_subcommand("enumerate", "Enumerate every object of a kind and size");
  enumerate_app
      ->add_option("--kind", opt.kind,
                   "fms, pre_trianguloid, trianguloid, tope_arrangement, matching_field, linkage_matching_field")
      ->required();
  enumerate_app->add_option("--n", opt.n, "Left size (n' for matching fields)")->required();
  enumerate_app->add_option("--d", opt.d, "Right size")->required();
  enumerate_app->add_flag("--count-only", opt.count_only, "Print only the summary");
  enumerate_app->add_option("--budget", opt.budget, "Search node budget");
  enumerate_app->add_option("--threads", opt.threads, "Worker threads, 0 for all cores");
  enumerate_app->add_flag("--quotient", opt.quotient, "One object per relabeling orbit");
  enumerate_app->add_flag("--timing", opt.timing, "Add elapsed_ms to the summary");
  enumerate_app->add_option("--max-size", opt.max_size, "Largest n + d accepted (default from TOMKIT_MAX_NPLUSD)");

  auto* minor_app = app.add_subcommand("minor", "Delete left and contract right indices");
  minor_app->add_option("--kind", opt.kind, "Expected input kind");
  minor_app->add_option("--delete", opt.del, "Left indices to delete (1-based)")->delimiter(',');
  minor_app->add_option("--contract", opt.con, "Right indices to contract (1-based)")->delimiter(',');

  auto* roundtrip_app = app.add_subcommand("roundtrip", "Audit the full conversion cycle");
  roundtrip_app->add_option("--kind", opt.kind, "Expected input kind");

  auto* counter_app = app.add_subcommand("counterexample", "Reproduce a built-in counterexample");
  counter_app->add_option("name", opt.name, "ensembles-lemma-3.16 or pretri-not-trianguloid")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::optional<Io> io;
  try {
    io.emplace(opt, in, out);
    if (*validate_app) return validate(opt, *io);
    if (*convert_app) return convert(opt, *io);
    if (*enumerate_app) return enumerate_cmd(opt, *io);
    if (*minor_app) return minor_cmd(opt, *io);
    if (*roundtrip_app) return roundtrip(opt, *io);
    if (*counter_app) return counterexample(opt, *io);
  } catch (const ValidationError& e) {
    json report = e.report().to_json();
    report["error"] = e.what();
    io->write(report);
    return 1;
  } catch (const json::exception& e) {
    err << "error: invalid JSON: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace tomkit::cli

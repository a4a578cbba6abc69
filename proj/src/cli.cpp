#include "mastct/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mastct/agreement.hpp"
#include "mastct/errors.hpp"
#include "mastct/graph.hpp"
#include "mastct/io.hpp"
#include "mastct/random.hpp"
#include "mastct/reductions.hpp"
#include "mastct/solvers.hpp"
#include "mastct/tree.hpp"

namespace mastct {

namespace {

// Unreadable files and bad flag combinations.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

// Inline expressions contain ';'; anything else names a file whose first tree
// is used.
PhyloTree tree_argument(const std::string& value) {
  if (value.find(';') != std::string::npos) return parse_tree(value);
  auto in = open_input(value);
  return read_collection(in).trees.front();
}

CollectionFile collection_argument(const std::string& path) {
  auto in = open_input(path);
  return read_collection(in);
}

LabelSet split_labels(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return make_label_set(std::move(out));
}

void write_report(const std::string& path, const ReductionReport& report) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << report.to_text();
}

void write_gadget(std::ostream& out, const GadgetInstance& g) {
  write_collection(out,
                   {{"q", std::to_string(g.q)},
                    {"k", std::to_string(g.report.k)},
                    {"D", std::to_string(g.report.max_degree)}},
                   g.collection.trees());
}

struct Options {
  // check
  std::string check_kind, tree, other, leaves, input;
  // solve
  std::string problem;
  std::optional<std::size_t> fpt, cap;
  // reduce
  std::size_t k = 0;
  std::string graph, report;
  bool repair = false;
  // verify
  std::string mode;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  // gen
  std::string gen_kind;
  std::size_t n = 0, m = 0, trees = 0;
};

int run_check(const Options& o, std::ostream& out) {
  auto answer = [&](bool yes) {
    out << (yes ? "yes" : "no") << '\n';
    return yes ? kYes : kNo;
  };
  const PhyloTree t = tree_argument(o.tree);
  if (o.check_kind == "restrict") {
    if (auto r = restrict_to(t, split_labels(o.leaves)))
      out << serialize_tree(*r) << '\n';
    else
      out << "empty\n";
    return kYes;
  }
  if (o.check_kind == "equal" || o.check_kind == "refines") {
    if (o.other.empty()) throw UsageError("--other is required for check " + o.check_kind);
    const PhyloTree u = tree_argument(o.other);
    return answer(o.check_kind == "equal" ? tree_equal(t, u) : refines(t, u));
  }
  if (o.input.empty()) throw UsageError("--input is required for check " + o.check_kind);
  const TreeCollection coll(collection_argument(o.input).trees);
  return answer(o.check_kind == "agreement" ? is_agreement_subtree(t, coll) : is_compatible_with(t, coll));
}

int run_solve(const Options& o, std::ostream& out) {
  if (o.problem == "is") {
    if (o.fpt) throw UsageError("--fpt applies to mast and mct only");
    auto in = open_input(o.input);
    const Graph g = read_graph(in);
    SearchCaps caps;
    if (o.cap) caps.max_is_vertices = *o.cap;
    const IndependentSet s = max_independent_set(g, caps);
    out << "size " << s.size << "\nwitness";
    for (Vertex v : s.witness) out << ' ' << v;
    out << '\n';
    return kYes;
  }
  const CollectionFile file = collection_argument(o.input);
  const TreeCollection coll(file.trees);
  const bool mast = o.problem == "mast";
  if (o.fpt) {
    auto w = mast ? mast_fpt(coll, *o.fpt) : mct_fpt(coll, *o.fpt);
    if (!w) {
      out << "none\n";
      return kNo;
    }
    out << "size " << w->size() << "\nwitness " << serialize_tree(*w) << '\n';
    return kYes;
  }
  SolverCaps caps;
  if (o.cap) caps.mast_leaves = caps.mct_leaves = *o.cap;
  const Solution s = mast ? mast_bruteforce(coll, caps) : mct_bruteforce(coll, caps);
  out << "size " << s.size << "\nwitness " << serialize_tree(s.witness) << '\n';
  if (auto q = file.header_number("q")) {
    const bool yes = s.size >= *q;
    out << "q " << *q << ' ' << (yes ? "yes" : "no") << '\n';
    return yes ? kYes : kNo;
  }
  return kYes;
}

int run_reduce(const std::string& kind, const Options& o, std::ostream& out) {
  if (kind == "is-pis1") {
    auto in = open_input(o.graph);
    write_instance(out, is_to_pis1(o.k, read_graph(in)));
    return kYes;
  }
  auto in = open_input(o.input);
  const PartitionedInstance inst = read_instance(in);
  if (kind == "pis-pad") {
    write_instance(out, pis_pad(inst));
    return kYes;
  }
  const GadgetInstance g = kind == "pis1-ast" ? pis1_to_ast(inst) : pis2_to_ct(inst, o.repair);
  write_gadget(out, g);
  write_report(o.report, g.report);
  return kYes;
}

int run_verify(const Options& o, std::ostream& out) {
  if (o.graph.empty() && o.samples == 0) throw UsageError("verify needs --graph or --samples");
  const GadgetMode mode = o.mode == "mast" ? GadgetMode::kMast : GadgetMode::kMct;
  std::vector<std::pair<std::string, Graph>> instances;
  if (!o.graph.empty()) {
    auto in = open_input(o.graph);
    instances.emplace_back(o.graph, read_graph(in));
  }
  Rng rng(o.seed);
  for (std::size_t s = 0; s < o.samples; ++s) {
    const std::size_t n = 3 + rng.below(4);
    instances.emplace_back("random " + std::to_string(s + 1), random_dense_graph(n, rng));
  }
  std::size_t equivalent = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const VerificationRecord rec = verify_reduction(o.k, instances[i].second, mode);
    out << "instance=" << (i + 1) << '\n' << "source=" << instances[i].first << '\n' << rec.to_text() << '\n';
    equivalent += rec.equivalent ? 1 : 0;
  }
  out << "verified " << instances.size() << " equivalent " << equivalent << '\n';
  return equivalent == instances.size() ? kYes : kNo;
}

int run_gen(const Options& o, std::ostream& out) {
  Rng rng(o.seed);
  if (o.gen_kind == "graph") {
    write_graph(out, random_graph(o.n, o.m, rng));
    return kYes;
  }
  if (o.n == 0 || o.trees == 0) throw UsageError("gen trees needs --n and --k positive");
  const LabelSet labels = numbered_labels(o.n);
  std::vector<PhyloTree> trees;
  for (std::size_t i = 0; i < o.trees; ++i) trees.push_back(random_tree(labels, rng));
  write_collection(out, {{"n", std::to_string(o.n)}, {"k", std::to_string(o.trees)}}, trees);
  return kYes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agreement / compatible subtree toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "tree predicates");
  check->add_option("predicate", o.check_kind, "restrict|equal|refines|agreement|compatible")
      ->required()
      ->check(CLI::IsMember({"restrict", "equal", "refines", "agreement", "compatible"}));
  check->add_option("--tree", o.tree, "tree expression or file")->required();
  check->add_option("--other", o.other, "second tree for equal/refines");
  check->add_option("--leaves", o.leaves, "comma-separated leaf labels for restrict");
  check->add_option("--input", o.input, "tree collection file");

  auto* solve = app.add_subcommand("solve", "exact solvers");
  solve->add_option("problem", o.problem, "mast|mct|is")->required()->check(CLI::IsMember({"mast", "mct", "is"}));
  solve->add_option("--input", o.input, "collection or graph file")->required();
  solve->add_option("--fpt", o.fpt, "deletion budget p for the branching solver");
  solve->add_option("--cap", o.cap, "brute-force size cap");

  auto* reduce = app.add_subcommand("reduce", "instance maps");
  reduce->require_subcommand(1);
  auto* r_is = reduce->add_subcommand("is-pis1", "IS -> PIS_1");
  r_is->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  r_is->add_option("--graph", o.graph)->required();
  auto* r_pad = reduce->add_subcommand("pis-pad", "PIS_p -> PIS_{p+1}");
  r_pad->add_option("--input", o.input)->required();
  auto* r_ast = reduce->add_subcommand("pis1-ast", "PIS_1 -> agreement subtree");
  r_ast->add_option("--input", o.input)->required();
  r_ast->add_option("--report", o.report, "write key=value report here");
  auto* r_ct = reduce->add_subcommand("pis2-ct", "PIS_2 -> compatible tree");
  r_ct->add_option("--input", o.input)->required();
  r_ct->add_flag("--repair", o.repair, "add the degree-repair tree");
  r_ct->add_option("--report", o.report, "write key=value report here");

  auto* verify = app.add_subcommand("verify", "check reduction equivalence by brute force");
  verify->add_option("--graph", o.graph);
  verify->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  verify->add_option("--mode", o.mode)->required()->check(CLI::IsMember({"mast", "mct"}));
  verify->add_option("--samples", o.samples, "random graphs on 3..6 vertices");
  verify->add_option("--seed", o.seed);

  auto* gen = app.add_subcommand("gen", "random instances");
  gen->add_option("kind", o.gen_kind, "graph|trees")->required()->check(CLI::IsMember({"graph", "trees"}));
  gen->add_option("--n", o.n)->required();
  gen->add_option("--m", o.m, "edge count (graph)");
  gen->add_option("--k", o.trees, "tree count (trees)");
  gen->add_option("--seed", o.seed)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsageError;
  }

  try {
    if (check->parsed()) return run_check(o, out);
    if (solve->parsed()) return run_solve(o, out);
    if (reduce->parsed()) {
      for (auto* sub : {r_is, r_pad, r_ast, r_ct})
        if (sub->parsed()) return run_reduce(sub->get_name(), o, out);
    }
    if (verify->parsed()) return run_verify(o, out);
    if (gen->parsed()) return run_gen(o, out);
  } catch (const ParseError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kUsageError;
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid instance: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternalError;
  }
  err << "error: usage: no subcommand\n";
  return kUsageError;
}

}  // namespace mastct

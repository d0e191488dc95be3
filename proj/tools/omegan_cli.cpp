// omegan: batch driver for the region, partition, refinement and modal
// machinery.  Exit status: 0 success / property holds, 1 property fails,
// 2 input or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "omegan/omegan.hpp"

namespace {

using namespace omegan;

constexpr int kOk = 0;
constexpr int kPropertyFails = 1;
constexpr int kUsage = 2;

struct Options {
  std::string partition, valuation, formula, generators, order, out;
  std::uint64_t bound = 0;
  bool verify = false;
  std::uint64_t seed = 0;
  std::size_t n = 2, cells = 2;
  std::uint64_t max_const = 3;
};

Json read_json(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string(flag) + ": required");
  std::ifstream in(path);
  if (!in) throw InputError(std::string(flag) + ": cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string(flag) + ": malformed JSON in " + path + ": " + e.what());
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("--out: cannot write " + o.out);
  f << text;
}

void emit(const Options& o, const Json& j) { emit(o, format_json(j)); }

std::optional<OrderKind> order_flag(const Options& o) {
  if (o.order.empty()) return std::nullopt;
  return parse_order(o.order, "--order");
}

OrderKind order_or_default(const Options& o) { return order_flag(o).value_or(OrderKind::Reflexive); }

Valuation load_valuation(const Options& o) {
  Valuation v = valuation_from_json(read_json(o.valuation, "--valuation"), "valuation");
  if (auto ord = order_flag(o)) v.order = *ord;
  return v;
}

Formula load_formula(const Options& o) {
  if (o.formula.empty()) throw InputError("--formula: required");
  return parse_formula(o.formula);
}

int check_tuned(const Options& o) {
  const Partition p = partition_from_json(read_json(o.partition, "--partition"));
  const TunedCheck t = is_tuned(p, order_or_default(o));
  Json j = to_json(t);
  j["order"] = order_name(order_or_default(o));
  emit(o, j);
  return t ? kOk : kPropertyFails;
}

int check_monotone(const Options& o) {
  const Partition p = partition_from_json(read_json(o.partition, "--partition"));
  const MonotoneCheck m = is_monotone(p);
  emit(o, to_json(m));
  return m ? kOk : kPropertyFails;
}

int refine(const Options& o) {
  const Partition p = partition_from_json(read_json(o.partition, "--partition"));
  const Refinement r = refine_monotone(p);
  Json j{{"partition", to_json(r.partition)}, {"trace", to_json(r.trace)}};
  bool ok = true;
  if (o.verify) {
    const bool ref = refines(r.partition, p);
    const MonotoneCheck mono = is_monotone(r.partition);
    const TunedCheck le = is_tuned(r.partition, OrderKind::Reflexive);
    const TunedCheck lt = is_tuned(r.partition, OrderKind::Strict);
    ok = ref && mono && le && lt;
    j["verify"] = Json{{"refines", ref}, {"monotone", to_json(mono)}, {"tuned_le", to_json(le)},
                       {"tuned_lt", to_json(lt)}, {"ok", ok}};
  }
  emit(o, j);
  return ok ? kOk : kPropertyFails;
}

int mc(const Options& o) {
  const Formula f = load_formula(o);
  const Valuation v = load_valuation(o);
  const FiltrationReport rep = filtration_pipeline(f, v);
  Json subs = Json::array();
  for (const auto& s : rep.subformulas) {
    Json worlds = Json::array();
    for (std::size_t i = 0; i < s.worlds.size(); ++i) {
      if (s.worlds[i]) worlds.push_back(i);
    }
    subs.push_back(Json{{"formula", s.formula.str()},
                        {"truth", to_json(s.symbolic)},
                        {"worlds", std::move(worlds)},
                        {"agrees", s.agrees}});
  }
  emit(o, Json{{"formula", f.str()},
               {"order", order_name(v.order)},
               {"truth", to_json(rep.truth)},
               {"globally_true", rep.globally_true},
               {"truth_lemma", rep.truth_lemma_holds},
               {"atoms", rep.base.size()},
               {"cells", rep.refined.size()},
               {"frame_edges", rep.frame.edges().size()},
               {"subformulas", std::move(subs)}});
  return rep.truth_lemma_holds ? kOk : kPropertyFails;
}

int quotient(const Options& o) {
  const Valuation v = load_valuation(o);
  Partition p;
  if (!o.partition.empty()) {
    p = partition_from_json(read_json(o.partition, "--partition"));
  } else {
    std::vector<Region> family;
    for (const auto& [name, r] : v.vars) family.push_back(r);
    p = refine_monotone(induced(Region::full(v.dim), family)).partition;
  }
  try {
    emit(o, to_json(quotient_frame(p, v.order, v)));
  } catch (const NotTunedError& e) {
    emit(o, to_json(TunedCheck{e.violation()}));
    return kPropertyFails;
  }
  return kOk;
}

int subalgebra(const Options& o) {
  const Json j = read_json(o.generators, "--generators");
  std::vector<Region> gens;
  std::size_t dim = 0;
  const Json* list = &j;
  if (j.is_object()) {
    dim = detail::dimension(detail::field(j, "dim", "generators"), "generators.dim");
    list = &detail::field(j, "generators", "generators");
  }
  if (!list->is_array()) throw InputError("generators: expected an array of regions");
  for (std::size_t i = 0; i < list->size(); ++i) {
    gens.push_back(region_from_json((*list)[i], "generators[" + std::to_string(i) + "]"));
    if (dim == 0) dim = gens.back().dim();
    if (gens.back().dim() != dim) throw InputError("generators[" + std::to_string(i) + "].dim: dimension mismatch");
  }
  if (dim == 0) throw InputError("generators.dim: required when the list is empty");
  emit(o, to_json(generate_subalgebra(gens, dim, order_or_default(o))));
  return kOk;
}

int product(const Options& o) {
  const FiberedPartition fp = fibered_from_json(read_json(o.partition, "--partition"));
  const ProductRefinement r = refine_product_finite(fp);
  const bool ref = product_refines(r.product, fp);
  const ProductTunedCheck t = is_product_tuned(r.product, order_or_default(o));
  emit(o, Json{{"product", to_json(r.product)},
               {"base", to_json(r.base)},
               {"trace", to_json(r.trace)},
               {"refines", ref},
               {"tuned", to_json(t, r.product)},
               {"order", order_name(order_or_default(o))}});
  return ref && t ? kOk : kPropertyFails;
}

Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

int oracle(const Options& o) {
  const std::uint64_t b = o.bound == 0 ? 0 : o.bound;
  if (!o.formula.empty()) {
    const Formula f = load_formula(o);
    const Valuation v = load_valuation(o);
    const std::uint64_t bound = b ? b : 4;
    const GridTruth g = grid_truth(f, v, bound);
    const auto diffs = grid_diff(g.points, truth_region(f, v));
    emit(o, Json{{"check", "truth"},
                 {"formula", f.str()},
                 {"bound", bound},
                 {"internal_bound", g.internal_bound},
                 {"diffs", points_json(diffs)},
                 {"agree", diffs.empty()}});
    return diffs.empty() ? kOk : kPropertyFails;
  }
  const Partition p = partition_from_json(read_json(o.partition, "--partition"));
  const OrderKind ord = order_or_default(o);
  const std::uint64_t bound = b ? b : max_constant(p) + 1;
  Json cells = Json::array();
  bool agree = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto diffs = grid_diff(grid_downset(p.cell(i), ord, bound), downset(p.cell(i), ord));
    agree = agree && diffs.empty();
    cells.push_back(Json{{"cell", i}, {"diffs", points_json(diffs)}});
  }
  const bool symbolic = is_tuned(p, ord).tuned();
  const bool grid = grid_tuned(p, ord, bound).tuned;
  agree = agree && symbolic == grid;
  emit(o, Json{{"check", "partition"},
               {"order", order_name(ord)},
               {"bound", bound},
               {"downset", std::move(cells)},
               {"tuned", Json{{"symbolic", symbolic}, {"grid", grid}}},
               {"agree", agree}});
  return agree ? kOk : kPropertyFails;
}

int viz(const Options& o) {
  emit(o, render_svg(partition_from_json(read_json(o.partition, "--partition"))));
  return kOk;
}

int gen(const Options& o) {
  emit(o, to_json(gen_random(o.n, o.cells, o.max_const, o.seed)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic partitions, refinements and modal semantics over (omega^n, <=) and (omega^n, <)"};
  app.require_subcommand(1, 1);
  Options o;

  auto with_out = [&](CLI::App* c) { c->add_option("--out", o.out, "output file (default: stdout)"); };
  auto with_order = [&](CLI::App* c) {
    c->add_option("--order", o.order, "le (reflexive) or lt (strict)")->check(CLI::IsMember({"le", "lt"}));
  };

  struct Cmd {
    CLI::App* app;
    int (*run)(const Options&);
  };
  std::vector<Cmd> cmds;

  auto* c = app.add_subcommand("check-tuned", "decide whether a partition is tuned");
  c->add_option("--partition", o.partition)->required();
  with_order(c);
  with_out(c);
  cmds.push_back({c, check_tuned});

  c = app.add_subcommand("check-monotone", "decide whether a partition is monotone");
  c->add_option("--partition", o.partition)->required();
  with_out(c);
  cmds.push_back({c, check_monotone});

  c = app.add_subcommand("refine", "monotone refinement of a partition of omega^n");
  c->add_option("--partition", o.partition)->required();
  c->add_flag("--verify", o.verify, "check refines/monotone/tuned on the output");
  with_out(c);
  cmds.push_back({c, refine});

  c = app.add_subcommand("mc", "truth region of a formula, cross-checked on the quotient model");
  c->add_option("--formula", o.formula)->required();
  c->add_option("--valuation", o.valuation)->required();
  with_order(c);
  with_out(c);
  cmds.push_back({c, mc});

  c = app.add_subcommand("quotient", "finite quotient frame of a tuned partition");
  c->add_option("--valuation", o.valuation)->required();
  c->add_option("--partition", o.partition, "tuned partition (default: refinement of the valuation atoms)");
  with_order(c);
  with_out(c);
  cmds.push_back({c, quotient});

  c = app.add_subcommand("subalgebra", "subalgebra generated by finitely many regions");
  c->add_option("--generators", o.generators)->required();
  with_order(c);
  with_out(c);
  cmds.push_back({c, subalgebra});

  c = app.add_subcommand("product", "tuned refinement of a partition of omega^n x G, G finite");
  c->add_option("--partition", o.partition, "fibered partition JSON")->required();
  with_order(c);
  with_out(c);
  cmds.push_back({c, product});

  c = app.add_subcommand("oracle", "compare symbolic results with grid enumeration");
  c->add_option("--partition", o.partition);
  c->add_option("--formula", o.formula);
  c->add_option("--valuation", o.valuation);
  c->add_option("--bound", o.bound, "grid bound B");
  with_order(c);
  with_out(c);
  cmds.push_back({c, oracle});

  c = app.add_subcommand("viz", "SVG drawing of a two-dimensional partition");
  c->add_option("--partition", o.partition)->required();
  with_out(c);
  cmds.push_back({c, viz});

  c = app.add_subcommand("gen", "seeded random partition");
  c->add_option("--n", o.n, "dimension (1-3)");
  c->add_option("--cells", o.cells, "number of cells (1-8)");
  c->add_option("--max-const", o.max_const, "largest threshold (0-8)");
  c->add_option("--seed", o.seed);
  with_out(c);
  cmds.push_back({c, gen});

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    for (const auto& cmd : cmds) {
      if (cmd.app->parsed()) return cmd.run(o);
    }
  } catch (const omegan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

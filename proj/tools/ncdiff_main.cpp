// ncdiff — exact computations with differential operators on bimodules over
// finite-dimensional algebras. Spec files are JSON (see README); all
// arithmetic is exact over Q or F_p.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "ncdiff/io.hpp"
#include "ncdiff/verify.hpp"

namespace {

using namespace ncdiff;

struct CommonArgs {
  bool json = false;
};

void emit(const Report& report, const CommonArgs& common) {
  if (common.json)
    std::cout << report.to_json().dump(2) << "\n";
  else
    report.print_human(std::cout);
}

template <Field K>
int cmd_validate(const SpecData<K>& spec, const std::string& echo, const CommonArgs& common) {
  Report report;
  report.command = echo;
  report.add(Check::passed("algebra.validate", {{"name", spec.algebra.name}, {"dim", spec.algebra.dim}}));
  for (std::size_t i = 0; i < spec.module_names.size(); ++i)
    report.add(Check::passed("module.validate." + spec.module_names[i],
                             {{"dim", spec.modules[i].dim}}));
  for (const auto& op : spec.operators)
    report.add(Check::passed("operator." + op.name,
                             {{"source", op.source}, {"target", op.target}}));
  report.sort_checks();
  emit(report, common);
  return report.exit_status();
}

template <Field K>
int cmd_order(const SpecData<K>& spec, const std::string& opname, const std::string& definition,
              int max_order, const std::string& echo, const CommonArgs& common) {
  const auto* op = spec.find_operator(opname);
  if (!op) throw SpecError("operators", "no operator named '" + opname + "'");
  const Bimodule<K>* src = spec.find_module(op->source);
  const Bimodule<K>* tgt = spec.find_module(op->target);
  const HomSpace<K> hs(*src, *tgt);
  const int rmax = max_order >= 0 ? max_order : hs.dim();
  Report report;
  report.command = echo;
  nlohmann::json details = {{"operator", opname}, {"definition", definition}};
  if (definition == "commutative") {
    const auto r = order_commutative(hs, op->matrix, rmax);
    details["order"] = r ? nlohmann::json(*r) : nlohmann::json(nullptr);
  } else if (definition == "ncg-first") {
    details["first_order"] = is_first_order_ncg(hs, op->matrix);
  } else if (definition == "left" || definition == "right") {
    const Filtration<K> f = definition == "left" ? left_filtration(hs, rmax)
                                                 : right_filtration(hs, rmax);
    const auto r = min_order(op->matrix, f);
    details["order"] = r ? nlohmann::json(*r) : nlohmann::json(nullptr);
    nlohmann::json dims = nlohmann::json::array();
    for (const auto& l : f.levels) dims.push_back(l.dim());
    details["filtration_dims"] = dims;
  } else {
    throw CLI::ValidationError("--definition",
                               "expected commutative|ncg-first|left|right");
  }
  report.add(Check::passed("order", details));
  report.sort_checks();
  emit(report, common);
  return report.exit_status();
}

template <Field K>
int cmd_filtration(const SpecData<K>& spec, const std::string& side, int max_order,
                   const std::string& module, const std::string& echo, const CommonArgs& common) {
  const Bimodule<K>* m = spec.find_module(module);
  if (!m) throw SpecError("modules", "no module named '" + module + "'");
  const HomSpace<K> hs(*m, *m);
  const int rmax = max_order >= 0 ? max_order : hs.dim();
  const Filtration<K> f = side == "right" ? right_filtration(hs, rmax) : left_filtration(hs, rmax);
  Report report;
  report.command = echo;
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& l : f.levels) dims.push_back(l.dim());
  report.add(Check::passed("filtration", {{"side", side},
                                          {"dims", dims},
                                          {"stabilized_at", f.stabilized_at
                                                                ? nlohmann::json(*f.stabilized_at)
                                                                : nlohmann::json(nullptr)},
                                          {"hom_dim", hs.dim()}}));
  report.sort_checks();
  emit(report, common);
  return report.exit_status();
}

template <Field K>
int cmd_derivations(const SpecData<K>& spec, const std::string& echo, const CommonArgs& common) {
  const DerivationSpace<K> ds = derivation_space(spec.algebra, spec.regular_module);
  const DerLie<K> der = derivation_lie_algebra(spec.algebra, spec.regular_module);
  Report report;
  report.command = echo;
  nlohmann::json brackets = nlohmann::json::array();
  for (int i = 0; i < der.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < der.dim(); ++j) {
      nlohmann::json entry = nlohmann::json::array();
      for (const K& c : der.bracket[i][j]) entry.push_back(to_string(c));
      row.push_back(entry);
    }
    brackets.push_back(row);
  }
  report.add(Check::passed("derivations", {{"dim", ds.space.dim()},
                                           {"inner", ds.inner.dim()},
                                           {"outer", ds.space.dim() - ds.inner.dim()},
                                           {"bracket", brackets}}));
  report.sort_checks();
  emit(report, common);
  return report.exit_status();
}

template <Field K>
int cmd_ce(const SpecData<K>& spec, int max_degree, const std::string& echo,
           const CommonArgs& common) {
  const VerifyContext<K> ctx(spec.algebra, spec.regular_module);
  Report report;
  report.command = echo;
  const int cap = std::min(max_degree, ctx.der.dim());
  const GradedSpace<K> graded =
      (cap == ctx.ce_cap) ? ctx.graded : generated_subalgebra(spec.algebra, ctx.der, cap);
  nlohmann::json full = nlohmann::json::array(), gen = nlohmann::json::array();
  for (int k = 0; k <= cap; ++k) {
    full.push_back(graded.full[k].dim());
    gen.push_back(graded.generated[k].dim());
  }
  report.add(Check::passed("ce.dims", {{"full", full}, {"generated", gen}, {"max_degree", cap}}));
  report.add(check_ce_d_squared(ctx));
  report.add(check_ce_one_forms_two_routes(ctx));
  report.add(check_ce_da_b_identity(ctx));
  report.add(check_ce_duality(ctx));
  report.sort_checks();
  emit(report, common);
  return report.exit_status();
}

template <Field K>
int cmd_cartan(const SpecData<K>& spec, const std::string& qname, const std::string& echo,
               const CommonArgs& common) {
  const VerifyContext<K> ctx(spec.algebra, spec.regular_module);
  Report report;
  report.command = echo;
  if (qname.empty()) {
    report.add(check_cartan_relations_check(ctx, true));
    report.add(check_cartan_two_sided_dual(ctx, true));
  } else {
    const Bimodule<K>* q = spec.find_module(qname);
    if (!q) throw SpecError("modules", "no module named '" + qname + "'");
    Matrix<K> d;
    if (q == &spec.regular_module) {
      d = default_regular_differential(ctx);
    } else {
      const DerivationSpace<K> ds = derivation_space(spec.algebra, *q);
      d = ds.space.dim() > 0 ? matrix_from_vec(ds.space.basis_vector(0), q->dim, spec.algebra.dim)
                             : Matrix<K>(q->dim, spec.algebra.dim);
    }
    for (const Side side : {Side::right, Side::left}) {
      const CartanPair<K> cp = make_cartan_pair(spec.regular_module, *q, d, side);
      const CartanRelationReport rep = check_cartan_relations(cp);
      const std::string id = std::string("cartan.relations.") + (side == Side::right ? "right" : "left");
      report.add(Check::from_bool(id, rep.ok,
                                  {{"dual_dim", cp.dual.dim()}, {"witness", rep.witness}}));
    }
    const CartanPair<K> cp = make_cartan_pair(spec.regular_module, *q, d, Side::right);
    const TwoSidedDualReport rep = two_sided_dual_test(cp, ctx.hs);
    report.add(Check::from_bool("cartan.two_sided_dual", rep.two_sided_hats_first_order,
                                {{"dual_dim", rep.dual_dim},
                                 {"two_sided_dim", rep.two_sided_dim},
                                 {"complement_checked", rep.complement_checked},
                                 {"complement_first_order", rep.complement_first_order}}));
  }
  report.sort_checks();
  emit(report, common);
  return report.exit_status();
}

template <Field K>
int cmd_verify(const SpecData<K>& spec, std::uint64_t seed, int trials, const std::string& echo,
               const CommonArgs& common) {
  Report report = run_verify(spec, seed, trials);
  report.command = echo;
  emit(report, common);
  return report.exit_status();
}

template <class F>
int with_spec(const std::string& path, F&& run) {
  const nlohmann::json doc = load_json_file(path);
  const std::string field = spec_field_name(doc);
  if (field == "Q") {
    const auto spec = parse_spec<Rational>(doc);
    return run.template operator()<Rational>(*spec);
  }
  FpContext ctx(spec_field_prime(field));
  const auto spec = parse_spec<Fp>(doc);
  return run.template operator()<Fp>(*spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact differential operators on bimodules over finite-dimensional algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --json after the subcommand
  CommonArgs common;
  app.add_flag("--json", common.json, "machine-readable JSON report");

  std::string spec_path, op_name, definition = "commutative", side = "left", module = "regular";
  std::string q_module, zoo_name, out_path;
  int max_order = -1, max_degree = 3, trials = 100;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "parse a spec file and check all invariants");
  validate->add_option("spec", spec_path, "spec file")->required();

  auto* zoo_cmd = app.add_subcommand("zoo", "built-in example algebras");
  auto* zoo_list = zoo_cmd->add_subcommand("list", "list catalogue names");
  auto* zoo_export = zoo_cmd->add_subcommand("export", "write a spec file for a zoo algebra");
  zoo_export->add_option("name", zoo_name, "zoo algebra name")->required();
  zoo_export->add_option("-o,--out", out_path, "output path (default stdout)");
  zoo_cmd->require_subcommand(1);

  auto* order = app.add_subcommand("order", "order of a named operator");
  order->add_option("spec", spec_path)->required();
  order->add_option("--operator", op_name, "operator name from the spec")->required();
  order->add_option("--definition", definition, "commutative|ncg-first|left|right");
  order->add_option("--max-order", max_order, "search depth (default: hom dimension)");

  auto* filtration = app.add_subcommand("filtration", "dimension table of a filtration");
  filtration->add_option("spec", spec_path)->required();
  filtration->add_option("--side", side, "left|right");
  filtration->add_option("--max-order", max_order, "depth (default: hom dimension)");
  filtration->add_option("--module", module, "module for P=Q (default: regular)");

  auto* derivations = app.add_subcommand("derivations", "derivation Lie algebra");
  derivations->add_option("spec", spec_path)->required();

  auto* ce = app.add_subcommand("ce", "graded differential calculus dimensions and checks");
  ce->add_option("spec", spec_path)->required();
  ce->add_option("--max-degree", max_degree, "top degree (default 3, capped by dim dA)");

  auto* cartan = app.add_subcommand("cartan", "Cartan pair duals and relations");
  cartan->add_option("spec", spec_path)->required();
  cartan->add_option("--q", q_module, "module to use as Q (default: O^1 A)");

  auto* verify = app.add_subcommand("verify", "run the full property suite");
  verify->add_option("spec", spec_path)->required();
  verify->add_option("--seed", seed, "seed for randomised checks");
  verify->add_option("--trials", trials, "trial count for randomised checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (zoo_list->parsed()) {
      Report report;
      report.command = "zoo list";
      nlohmann::json names = nlohmann::json::array();
      for (const auto& n : zoo_names()) names.push_back(n);
      report.add(Check::passed("zoo.list", {{"names", names}}));
      emit(report, common);
      return 0;
    }
    if (zoo_export->parsed()) {
      const Algebra<Rational> a = zoo<Rational>(zoo_name);
      const std::string text = export_algebra(a, "Q").dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out) throw SpecError(out_path, "cannot open for writing");
        out << text;
      }
      return 0;
    }
    if (validate->parsed()) {
      const std::string echo = "validate " + spec_path;
      return with_spec(spec_path, [&]<Field K>(const SpecData<K>& s) {
        return cmd_validate<K>(s, echo, common);
      });
    }
    if (order->parsed()) {
      const std::string echo = "order " + spec_path + " --operator " + op_name + " --definition " +
                               definition +
                               (max_order >= 0 ? " --max-order " + std::to_string(max_order) : "");
      return with_spec(spec_path, [&]<Field K>(const SpecData<K>& s) {
        return cmd_order<K>(s, op_name, definition, max_order, echo, common);
      });
    }
    if (filtration->parsed()) {
      if (side != "left" && side != "right")
        throw CLI::ValidationError("--side", "expected left|right");
      const std::string echo = "filtration " + spec_path + " --side " + side + " --module " + module +
                               (max_order >= 0 ? " --max-order " + std::to_string(max_order) : "");
      return with_spec(spec_path, [&]<Field K>(const SpecData<K>& s) {
        return cmd_filtration<K>(s, side, max_order, module, echo, common);
      });
    }
    if (derivations->parsed()) {
      const std::string echo = "derivations " + spec_path;
      return with_spec(spec_path, [&]<Field K>(const SpecData<K>& s) {
        return cmd_derivations<K>(s, echo, common);
      });
    }
    if (ce->parsed()) {
      const std::string echo = "ce " + spec_path + " --max-degree " + std::to_string(max_degree);
      return with_spec(spec_path, [&]<Field K>(const SpecData<K>& s) {
        return cmd_ce<K>(s, max_degree, echo, common);
      });
    }
    if (cartan->parsed()) {
      const std::string echo =
          "cartan " + spec_path + (q_module.empty() ? "" : " --q " + q_module);
      return with_spec(spec_path, [&]<Field K>(const SpecData<K>& s) {
        return cmd_cartan<K>(s, q_module, echo, common);
      });
    }
    if (verify->parsed()) {
      const std::string echo = "verify " + spec_path + " --seed " + std::to_string(seed) +
                               " --trials " + std::to_string(trials);
      return with_spec(spec_path, [&]<Field K>(const SpecData<K>& s) {
        return cmd_verify<K>(s, seed, trials, echo, common);
      });
    }
  } catch (const SpecError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "no command\n";
  return 2;
}

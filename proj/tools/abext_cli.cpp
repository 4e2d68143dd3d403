#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abext/abext.hpp"

namespace {

using namespace abext;

/// Workspace text is read lazily so commands over inline group expressions
/// never touch stdin.
struct Context {
  std::string workspace_path = "-";
  bool json = false;
  std::optional<WorkspaceDoc> doc;
  int exit_code = 0;

  const WorkspaceDoc& load() {
    if (!doc) {
      std::string text;
      if (workspace_path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
        if (detail::trim_copy(text).empty())
          throw InputError(
              "no workspace on stdin (pass --workspace FILE or pipe a "
              "document)");
      } else {
        std::ifstream in(workspace_path);
        if (!in)
          throw InputError("cannot open workspace file \"" + workspace_path +
                           "\"");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
      }
      doc = parse_workspace(text);
    }
    return *doc;
  }
};

/// Drops a leading `name=` tag, so `ext B=Z/4 A=Z/8` reads its labels.
std::string strip_label(const std::string& raw) {
  const std::size_t eq = raw.find('=');
  if (eq == std::string::npos || eq == 0) return raw;
  if (std::isdigit(static_cast<unsigned char>(raw[0]))) return raw;
  for (std::size_t i = 0; i < eq; ++i) {
    const char c = raw[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return raw;
  }
  return raw.substr(eq + 1);
}

/// Inline expressions win; anything else must be a declared workspace group.
AbGroup group_arg(Context& ctx, const std::string& raw) {
  const std::string expr = strip_label(raw);
  std::string why;
  try {
    return group_from_shorthand(expr);
  } catch (const InputError& e) {
    why = e.what();
  }
  try {
    const WorkspaceDoc& d = ctx.load();
    if (d.has_group(expr)) return d.group(expr);
  } catch (const Error&) {
    if (ctx.workspace_path != "-") throw;
    throw InputError(why + " (and no workspace was available)");
  }
  throw InputError("unknown group \"" + expr +
                   "\" (not a group expression, not declared)");
}

std::string window_string(const Ses& s) {
  return s.left().describe() + " -> " + s.middle().describe() + " -> " +
         s.right().describe();
}

std::string coords_string(const AbGroup& g, const IntVec& raw) {
  const IntVec r = g.reduce(raw);
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ", ";
    s += r[i].str();
  }
  return s + ")";
}

Json coords_json(const AbGroup& g, const IntVec& raw) {
  const IntVec r = g.reduce(raw);
  Json a = Json::array();
  for (const Integer& v : r) a.push_back(v.str());
  return a;
}

Json factors_json(const AbGroup& g) {
  Json a = Json::array();
  for (const Integer& d : g.invariant_factors()) a.push_back(d.str());
  return a;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string verdict(bool ok) { return ok ? "ok" : "FAIL"; }

int run_validate(Context& ctx) {
  const WorkspaceDoc& doc = ctx.load();
  if (ctx.json) {
    Json groups = Json::object();
    for (const auto& [n, g] : doc.groups()) groups[n] = g.describe();
    Json homs = Json::object();
    for (const auto& [n, e] : doc.homs())
      homs[n] = Json{{"src", e.src}, {"tgt", e.tgt}};
    Json sess = Json::object();
    for (const auto& [n, e] : doc.sess()) sess[n] = window_string(e.ses);
    Json chains = Json::object();
    for (const auto& [n, e] : doc.chains()) chains[n] = e.chain.degree();
    emit_json(Json{{"command", "validate"},
                   {"ok", true},
                   {"groups", groups},
                   {"homs", homs},
                   {"sess", sess},
                   {"chains", chains}});
    return 0;
  }
  for (const auto& [n, g] : doc.groups())
    std::cout << "group " << n << " = " << g.describe() << "\n";
  for (const auto& [n, e] : doc.homs())
    std::cout << "hom " << n << ": " << e.src << " -> " << e.tgt << "\n";
  for (const auto& [n, e] : doc.sess())
    std::cout << "ses " << n << ": " << window_string(e.ses) << "\n";
  for (const auto& [n, e] : doc.chains())
    std::cout << "chain " << n << ": degree " << e.chain.degree() << "\n";
  std::cout << "workspace ok (" << doc.groups().size() << " groups, "
            << doc.homs().size() << " homs, " << doc.sess().size()
            << " sess, " << doc.chains().size() << " chains)\n";
  return 0;
}

int run_invariants(Context& ctx, const std::vector<std::string>& names) {
  std::vector<std::pair<std::string, AbGroup>> rows;
  if (names.empty()) {
    for (const auto& [n, g] : ctx.load().groups()) rows.emplace_back(n, g);
  } else {
    for (const std::string& raw : names)
      rows.emplace_back(strip_label(raw), group_arg(ctx, raw));
  }
  if (ctx.json) {
    Json groups = Json::object();
    for (const auto& [n, g] : rows)
      groups[n] = Json{{"describe", g.describe()},
                       {"free_rank", g.free_rank()},
                       {"factors", factors_json(g)}};
    emit_json(Json{{"command", "invariants"}, {"groups", groups}});
    return 0;
  }
  for (const auto& [n, g] : rows)
    std::cout << n << " = " << g.describe() << "\n";
  return 0;
}

int run_hom_group(Context& ctx, const std::string& src_raw,
                  const std::string& tgt_raw) {
  const AbGroup src = group_arg(ctx, src_raw);
  const AbGroup tgt = group_arg(ctx, tgt_raw);
  const HomGroup hg = hom_group(src, tgt);
  const std::string line = "Hom(" + src.describe() + ", " + tgt.describe() +
                           ") \u2245 " + hg.base().describe();
  if (ctx.json) {
    Json gens = Json::array();
    for (const Hom& f : hg.gen_reps()) gens.push_back(matrix_to_json(f.mat()));
    emit_json(Json{{"command", "hom-group"},
                   {"src", src.describe()},
                   {"tgt", tgt.describe()},
                   {"group", hg.base().describe()},
                   {"factors", factors_json(hg.base())},
                   {"generators", gens}});
    return 0;
  }
  std::cout << line << "\n";
  for (std::size_t i = 0; i < hg.gen_reps().size(); ++i)
    std::cout << "generator " << i << ": "
              << matrix_to_json(hg.gen_reps()[i].mat()).dump() << "\n";
  return 0;
}

/// Honors B=/A= labels in either order; bare arguments read as base, coeff.
int run_ext(Context& ctx, const std::vector<std::string>& args) {
  std::string base_raw = args[0], coeff_raw = args[1];
  if (args[0].rfind("A=", 0) == 0 && args[1].rfind("B=", 0) == 0)
    std::swap(base_raw, coeff_raw);
  const AbGroup base = group_arg(ctx, base_raw);
  const AbGroup coeff = group_arg(ctx, coeff_raw);
  const ExtGroup xg(base, coeff);
  if (ctx.json) {
    emit_json(Json{{"command", "ext"},
                   {"base", base.describe()},
                   {"coeff", coeff.describe()},
                   {"ext", xg.group().describe()},
                   {"factors", factors_json(xg.group())},
                   {"free_rank", xg.group().free_rank()}});
    return 0;
  }
  std::cout << "Ext^1(" << base.describe() << ", " << coeff.describe()
            << ") ≅ " << xg.group().describe() << "\n";
  return 0;
}

int run_classify(Context& ctx, const std::string& ses_name) {
  const Ses& s = ctx.load().ses(ses_name);
  const ExtGroup xg(s.right(), s.left());
  const ExtClass cl = xg.classify(s);
  const bool zero = xg.group().in_relation_lattice(cl.coords.coords);
  const std::string ext_line = "Ext^1(" + s.right().describe() + ", " +
                               s.left().describe() + ") \u2245 " +
                               xg.group().describe();
  if (ctx.json) {
    emit_json(Json{{"command", "classify"},
                   {"ses", ses_name},
                   {"window", window_string(s)},
                   {"ext", xg.group().describe()},
                   {"coords", coords_json(xg.group(), cl.coords.coords)},
                   {"zero", zero}});
    return 0;
  }
  std::cout << "class of " << ses_name << " in " << ext_line << ": ";
  if (zero)
    std::cout << "zero (split)\n";
  else
    std::cout << coords_string(xg.group(), cl.coords.coords) << "\n";
  return 0;
}

/// Serializes a computed sequence as a self-contained workspace under `name`.
Json result_workspace(const std::string& name, const Ses& s) {
  WorkspaceDoc out;
  out.add_ses(name, s);
  return workspace_to_json(out);
}

int run_baer_sum(Context& ctx, const std::string& n1, const std::string& n2) {
  const WorkspaceDoc& doc = ctx.load();
  const Ses sum = baer_sum(doc.ses(n1), doc.ses(n2));
  const ExtGroup xg(sum.right(), sum.left());
  const ExtClass cl = xg.classify(sum);
  if (ctx.json) {
    emit_json(Json{{"command", "baer-sum"},
                   {"window", window_string(sum)},
                   {"ext", xg.group().describe()},
                   {"coords", coords_json(xg.group(), cl.coords.coords)},
                   {"result", result_workspace("result", sum)}});
    return 0;
  }
  std::cout << "Baer sum: " << window_string(sum) << "\n";
  std::cout << "class " << coords_string(xg.group(), cl.coords.coords)
            << " in Ext^1(" << sum.right().describe() << ", "
            << sum.left().describe() << ") \u2245 " << xg.group().describe()
            << "\n";
  return 0;
}

int run_pull_push(Context& ctx, bool pull, const std::string& hom_name,
                  const std::string& ses_name) {
  const WorkspaceDoc& doc = ctx.load();
  const Hom& f = doc.hom(hom_name);
  const Ses& s = doc.ses(ses_name);
  const Ses r = pull ? pullback(f, s).ses : pushout(f, s).ses;
  const char* cmd = pull ? "pullback" : "pushout";
  if (ctx.json) {
    emit_json(Json{{"command", cmd},
                   {"hom", hom_name},
                   {"ses", ses_name},
                   {"window", window_string(r)},
                   {"result", result_workspace("result", r)}});
    return 0;
  }
  std::cout << cmd << ": " << window_string(r) << "\n";
  return 0;
}

int run_six_term(Context& ctx, const std::string& ses_name,
                 const std::string& coeff_raw) {
  const Ses& s = ctx.load().ses(ses_name);
  const AbGroup coeff = group_arg(ctx, coeff_raw);
  const SixTerm st = six_term(s, coeff);
  const SixTermReport r = st.report();
  const std::string g = coeff.describe();
  auto hom_node = [&](const AbGroup& b) {
    return "Hom(" + b.describe() + ", " + g + ")";
  };
  auto ext_node = [&](const AbGroup& b) {
    return "Ext^1(" + b.describe() + ", " + g + ")";
  };
  if (ctx.json) {
    emit_json(Json{
        {"command", "six-term"},
        {"ses", ses_name},
        {"coeff", g},
        {"nodes",
         Json::array({hom_node(s.right()), hom_node(s.middle()),
                      hom_node(s.left()), ext_node(s.right()),
                      ext_node(s.middle()), ext_node(s.left())})},
        {"verdicts",
         Json{{"head_injective", r.head_injective},
              {"exact_at_hom_middle", r.exact_at_hom_middle},
              {"exact_at_hom_left", r.exact_at_hom_left},
              {"exact_at_ext_right", r.exact_at_ext_right},
              {"exact_at_ext_middle", r.exact_at_ext_middle},
              {"tail_surjective", r.tail_surjective}}},
        {"ok", r.all()}});
    return r.all() ? 0 : 1;
  }
  std::cout << "six-term report for " << ses_name << " with coefficients "
            << g << "\n";
  std::cout << "  0 -> " << hom_node(s.right()) << " -> "
            << hom_node(s.middle()) << " -> " << hom_node(s.left()) << " -> "
            << ext_node(s.right()) << " -> " << ext_node(s.middle()) << " -> "
            << ext_node(s.left()) << " -> 0\n";
  std::cout << "  injective at " << hom_node(s.right()) << ": "
            << verdict(r.head_injective) << "\n";
  std::cout << "  exact at " << hom_node(s.middle()) << ": "
            << verdict(r.exact_at_hom_middle) << "\n";
  std::cout << "  exact at " << hom_node(s.left()) << ": "
            << verdict(r.exact_at_hom_left) << "\n";
  std::cout << "  exact at " << ext_node(s.right()) << ": "
            << verdict(r.exact_at_ext_right) << "\n";
  std::cout << "  exact at " << ext_node(s.middle()) << ": "
            << verdict(r.exact_at_ext_middle) << "\n";
  std::cout << "  surjective onto " << ext_node(s.left()) << ": "
            << verdict(r.tail_surjective) << "\n";
  std::cout << (r.all() ? "all verdicts hold" : "VERDICT FAILED") << "\n";
  return r.all() ? 0 : 1;
}

int run_fibseq(Context& ctx, const std::string& ses_name,
               const std::string& coeff_raw, unsigned seed,
               std::size_t samples) {
  const Ses& s = ctx.load().ses(ses_name);
  const AbGroup coeff = group_arg(ctx, coeff_raw);
  const FibreSequenceReport r = fibre_sequence_check(s, coeff, seed, samples);
  if (ctx.json) {
    emit_json(Json{{"command", "fibseq-check"},
                   {"ses", ses_name},
                   {"coeff", coeff.describe()},
                   {"seed", seed},
                   {"samples", samples},
                   {"verdicts",
                    Json{{"canonical_splits", r.canonical_splits},
                         {"section_roundtrip", r.section_roundtrip},
                         {"point_roundtrip", r.point_roundtrip},
                         {"quotient_separates", r.quotient_separates},
                         {"ext_exact", r.ext_exact}}},
                   {"ok", r.all()}});
    return r.all() ? 0 : 1;
  }
  std::cout << "fibre sequence report for " << ses_name
            << " with coefficients " << coeff.describe() << " (seed " << seed
            << ", samples " << samples << ")\n";
  std::cout << "  canonical points split: " << verdict(r.canonical_splits)
            << "\n";
  std::cout << "  section round trip: " << verdict(r.section_roundtrip)
            << "\n";
  std::cout << "  point round trip: " << verdict(r.point_roundtrip) << "\n";
  std::cout << "  quotients separate points: "
            << verdict(r.quotient_separates) << "\n";
  std::cout << "  class groups exact at the middle: " << verdict(r.ext_exact)
            << "\n";
  std::cout << (r.all() ? "all verdicts hold" : "VERDICT FAILED") << "\n";
  return r.all() ? 0 : 1;
}

int run_les(Context& ctx, const std::string& ses_name,
            const std::string& coeff_raw, unsigned seed,
            std::size_t samples) {
  const Ses& s = ctx.load().ses(ses_name);
  const AbGroup coeff = group_arg(ctx, coeff_raw);
  const LesReport r = les_check(s, coeff, seed, samples);
  if (ctx.json) {
    emit_json(Json{
        {"command", "les-check"},
        {"ses", ses_name},
        {"coeff", coeff.describe()},
        {"seed", seed},
        {"samples", samples},
        {"verdicts",
         Json{{"six_term", r.six_term.all()},
              {"trivializations_walk", r.trivializations_walk},
              {"swaps_check", r.swaps_check}}},
        {"ok", r.all()}});
    return r.all() ? 0 : 1;
  }
  std::cout << "long exact sequence report for " << ses_name
            << " with coefficients " << coeff.describe() << " (seed " << seed
            << ", samples " << samples << ")\n";
  std::cout << "  six-term exactness: " << verdict(r.six_term.all()) << "\n";
  std::cout << "  spliced chains trivialize and walk: "
            << verdict(r.trivializations_walk) << "\n";
  std::cout << "  pull/push swap moves verify: " << verdict(r.swaps_check)
            << "\n";
  std::cout << (r.all() ? "all verdicts hold" : "VERDICT FAILED") << "\n";
  return r.all() ? 0 : 1;
}

int run_trivialize(Context& ctx, const std::vector<std::string>& args) {
  const WorkspaceDoc& doc = ctx.load();
  Ses first = [&] {
    if (args.size() == 2) return doc.ses(args[0]);
    const ESChain& c = doc.chain(args[0]);
    if (c.degree() != 2)
      throw InputError("trivialize needs a degree-2 chain, \"" + args[0] +
                       "\" has degree " + std::to_string(c.degree()));
    return c.links()[0];
  }();
  Ses last =
      args.size() == 2 ? doc.ses(args[1]) : doc.chain(args[0]).links()[1];
  const ESChain chain = splice(first, last);
  const ZigZag zz = trivialize_splice(first, last);
  const bool ok = check_zigzag(zz);
  if (ctx.json) {
    emit_json(Json{{"command", "trivialize"},
                   {"coeff", chain.coeff().describe()},
                   {"base", chain.base().describe()},
                   {"degree", chain.degree()},
                   {"steps", zz.steps().size()},
                   {"ok", ok}});
    return ok ? 0 : 1;
  }
  std::cout << "chain of degree " << chain.degree() << " from coefficients "
            << chain.coeff().describe() << " to base "
            << chain.base().describe() << "\n";
  std::cout << "zig-zag to the basepoint chain: " << zz.steps().size()
            << " steps\n";
  std::cout << "witness verified: " << verdict(ok) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Ext computations for finitely generated abelian groups"};
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--workspace", ctx.workspace_path,
                 "workspace document file (default: stdin)");
  app.add_flag("--json", ctx.json, "emit a machine-readable report");

  auto sub = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  CLI::App* c_validate = sub("validate", "parse and validate a workspace");

  std::vector<std::string> inv_names;
  CLI::App* c_inv = sub("invariants", "invariant factors of groups");
  c_inv->add_option("group", inv_names, "group names or expressions");

  std::string hg_src, hg_tgt;
  CLI::App* c_hg = sub("hom-group", "presentation of Hom(src, tgt)");
  c_hg->add_option("src", hg_src)->required();
  c_hg->add_option("tgt", hg_tgt)->required();

  std::vector<std::string> ext_args;
  CLI::App* c_ext = sub("ext", "presentation of Ext^1(base, coeff)");
  c_ext->add_option("group", ext_args, "base and coefficient groups")
      ->expected(2);

  std::string cls_ses;
  CLI::App* c_cls = sub("classify", "class of a declared ses in Ext^1");
  c_cls->add_option("ses", cls_ses)->required();

  std::vector<std::string> baer_args;
  CLI::App* c_baer = sub("baer-sum", "Baer sum of two declared sess");
  c_baer->add_option("ses", baer_args)->expected(2);

  std::string pb_hom, pb_ses;
  CLI::App* c_pb = sub("pullback", "pull a ses back along a declared hom");
  c_pb->add_option("hom", pb_hom)->required();
  c_pb->add_option("ses", pb_ses)->required();

  std::string po_hom, po_ses;
  CLI::App* c_po = sub("pushout", "push a ses out along a declared hom");
  c_po->add_option("hom", po_hom)->required();
  c_po->add_option("ses", po_ses)->required();

  std::string st_ses, st_coeff;
  CLI::App* c_st = sub("six-term", "six-term exactness verdicts");
  c_st->add_option("ses", st_ses)->required();
  c_st->add_option("coeff", st_coeff)->required();

  std::string fs_ses, fs_coeff;
  unsigned fs_seed = 1;
  std::size_t fs_samples = 3;
  CLI::App* c_fs = sub("fibseq-check", "fibre sequence verdicts");
  c_fs->add_option("ses", fs_ses)->required();
  c_fs->add_option("coeff", fs_coeff)->required();
  c_fs->add_option("--seed", fs_seed, "sampling seed");
  c_fs->add_option("--samples", fs_samples, "sampled classes per check");

  std::string les_ses, les_coeff;
  unsigned les_seed = 1;
  std::size_t les_samples = 3;
  CLI::App* c_les = sub("les-check", "long exact sequence verdicts");
  c_les->add_option("ses", les_ses)->required();
  c_les->add_option("coeff", les_coeff)->required();
  c_les->add_option("--seed", les_seed, "sampling seed");
  c_les->add_option("--samples", les_samples, "sampled chains per check");

  std::vector<std::string> triv_args;
  CLI::App* c_triv =
      sub("trivialize", "walk a degree-2 chain to the basepoint");
  c_triv->add_option("target", triv_args,
                     "a degree-2 chain name, or two spliceable ses names")
      ->expected(1, 2);

  c_validate->callback([&] { ctx.exit_code = run_validate(ctx); });
  c_inv->callback([&] { ctx.exit_code = run_invariants(ctx, inv_names); });
  c_hg->callback(
      [&] { ctx.exit_code = run_hom_group(ctx, hg_src, hg_tgt); });
  c_ext->callback([&] { ctx.exit_code = run_ext(ctx, ext_args); });
  c_cls->callback([&] { ctx.exit_code = run_classify(ctx, cls_ses); });
  c_baer->callback(
      [&] { ctx.exit_code = run_baer_sum(ctx, baer_args[0], baer_args[1]); });
  c_pb->callback(
      [&] { ctx.exit_code = run_pull_push(ctx, true, pb_hom, pb_ses); });
  c_po->callback(
      [&] { ctx.exit_code = run_pull_push(ctx, false, po_hom, po_ses); });
  c_st->callback(
      [&] { ctx.exit_code = run_six_term(ctx, st_ses, st_coeff); });
  c_fs->callback([&] {
    ctx.exit_code = run_fibseq(ctx, fs_ses, fs_coeff, fs_seed, fs_samples);
  });
  c_les->callback([&] {
    ctx.exit_code = run_les(ctx, les_ses, les_coeff, les_seed, les_samples);
  });
  c_triv->callback([&] { ctx.exit_code = run_trivialize(ctx, triv_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const SesValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return ctx.exit_code;
}

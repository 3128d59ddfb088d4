#pragma once

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "harness.hpp"
#include "iologic.hpp"

namespace iosa::cli {

inline constexpr const char* kGrammars = R"(Algebra JSON:
  {"name": "B4",                          optional
   "elements": ["0", "a", "b", "1"],      element names, index = position
   "leq": [[1,1,1,1],[0,1,0,1],...],      n x n, entry [i][j] = 1 iff i <= j
   "hasse": [[0,1],[0,2],...],            alternative to "leq": covering pairs
   "neg": [3, 2, 1, 0]}                   optional negation table (indices or names)
  A lattice carrier's own complement is used when "neg" is absent.
  --algebra also accepts builtin:NAME for chain2 chain3 chain4 B2 B4 B8 FDL2
  B4+top N5 M3 antichain2 V Lambda.

Subordination JSON:
  {"algebra": <algebra JSON or file name>, "prec": [[i, j], ...]}
  Pair entries are indices or element names. File names resolve relative to
  the JSON file.

--prec: a file holding subordination JSON or a bare pair array, or one of
  leq (the order), empty, full.

Norm file (.ion):
  one norm per line:   body |~ head
  '#' starts a comment; blank lines are ignored.
  formula := atom | T | F | ~formula | formula & formula | formula | formula
           | formula -> formula | ( formula )
  atom    := [a-z][a-z0-9]*
  precedence ~ > & > | > ->, with -> right-associative; at most 3 atoms overall.

Inequalities (slanted):
  term := var | T | F | ~term | <>term | []term | term & term | term | term | ( term )
  ineq := term <= term

Exit codes: 0 holds/success, 1 fails/counterexample, 2 usage or input error.
)";

struct Options {
  std::string format = "text";
  std::string algebra, prec, sub;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline ProtoSubAlg load_subordination(const Options& o) {
  if (!o.sub.empty()) {
    std::filesystem::path p = o.sub;
    return subordination_from_json(read_json_file(p), p.parent_path());
  }
  if (o.algebra.empty()) throw InputError("give --sub or --algebra");
  AlgebraInput alg = load_algebra(o.algebra);
  const std::size_t n = alg.carrier.size();
  Relation r(n);
  if (o.prec.empty() || o.prec == "empty") {
  } else if (o.prec == "leq") {
    r = order_relation(*alg.carrier.poset);
  } else if (o.prec == "full") {
    r = Relation::full(n);
  } else {
    json j = read_json_file(o.prec);
    r = relation_from_json(j.is_object() ? j.at("prec") : j, *alg.carrier.poset);
  }
  ProtoSubAlg s = make_subalg(alg.carrier, std::move(r));
  s.neg = alg.neg;
  return s;
}

inline std::string label_list(const FinPoset& p, const std::vector<Elem>& w) {
  std::string s;
  for (Elem x : w) s += (s.empty() ? "" : ", ") + (x < p.size() ? p.label(x) : std::to_string(x));
  return s;
}

inline std::string delta_label(const CanonicalExtension& e, Elem u) {
  if (auto a = e.preimage(u)) return e.base.label(*a);
  return "d" + std::to_string(u);
}

// Shortest literal, or conjunction/disjunction of two literals, naming e;
// the full disjunctive normal form otherwise.
inline std::string short_formula(const Signature& sig, Elem e) {
  const Elem mask = sig.algebra().size() - 1;
  if (e == 0) return "F";
  if (e == mask) return "T";
  std::vector<std::pair<std::string, Elem>> lits;
  for (const auto& a : sig.atoms()) {
    Elem v = sig.value(parse_formula(a));
    lits.emplace_back(a, v);
    lits.emplace_back("~" + a, ~v & mask);
  }
  for (const auto& [t, v] : lits)
    if (v == e) return t;
  for (std::size_t i = 0; i < lits.size(); ++i)
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if ((lits[i].second & lits[j].second) == e) return lits[i].first + " & " + lits[j].first;
      if ((lits[i].second | lits[j].second) == e) return lits[i].first + " | " + lits[j].first;
    }
  return sig.dnf(e);
}

inline void emit(std::ostream& out, const Options& o, const json& j, const std::string& text) {
  if (o.format == "json")
    out << j.dump(2) << '\n';
  else
    out << text;
}

}  // namespace detail

inline int cmd_check(const Options& o, const std::string& props, bool strict_boolean, std::ostream& out) {
  ProtoSubAlg s = detail::load_subordination(o);
  std::vector<Property> want;
  if (props.empty()) {
    for (Property p : kAllProperties)
      if (property_applicable(s, p)) want.push_back(p);
  } else {
    for (const auto& name : detail::split_list(props)) {
      auto p = parse_property(name);
      if (!p) throw InputError("unknown property: " + name);
      want.push_back(*p);
    }
  }
  bool all = true;
  json jp = json::object();
  std::string text;
  for (Property p : want) {
    PropertyResult r = check_property(s, p);
    all = all && r.holds;
    jp[std::string(to_string(p))] = {{"holds", r.holds}, {"witness", r.witness}};
    text += std::string(to_string(p)) + ": " + (r.holds ? "holds" : "fails");
    if (!r.holds && !r.witness.empty()) text += " at (" + detail::label_list(s.poset(), r.witness) + ")";
    text += '\n';
  }
  auto classes = classify(s, strict_boolean);
  text += "classes: ";
  for (std::size_t i = 0; i < classes.size(); ++i) text += (i ? ", " : "") + classes[i];
  text += classes.empty() ? "none\n" : "\n";
  detail::emit(out, o, {{"holds", all}, {"properties", jp}, {"classes", classes}}, text);
  return all ? 0 : 1;
}

inline int cmd_close(const Options& o, const std::string& rules, int system, std::ostream& out) {
  ProtoSubAlg s = detail::load_subordination(o);
  RuleSet rs;
  if (system != 0) {
    if (!rules.empty()) throw InputError("give --rules or --system, not both");
    rs = system_rules(system);
  } else {
    if (rules.empty()) throw InputError("give --rules or --system");
    for (const auto& name : detail::split_list(rules)) {
      auto r = RuleSet::parse(name);
      if (!r) throw InputError("unknown rule: " + name);
      rs.add(*r);
    }
  }
  ProtoSubAlg c = close(s, rs);
  json j = subordination_to_json(c);
  std::string text;
  for (auto [a, b] : c.prec.pairs()) text += c.poset().label(a) + " < " + c.poset().label(b) + '\n';
  text += std::to_string(c.prec.count()) + " pairs\n";
  detail::emit(out, o, j, text);
  return 0;
}

inline std::pair<Formula, Formula> parse_query(const std::string& q) {
  Norm n = parse_norm(q);
  return {n.body, n.head};
}

inline int cmd_derive(const Options& o, int system, const std::string& norms, const std::string& query,
                      std::ostream& out) {
  NormativeSystem n = parse_norms(read_text_file(norms));
  auto [body, head] = parse_query(query);
  bool h = derive(n, system, body, head);
  detail::emit(out, o, {{"holds", h}, {"system", system}},
               std::string(h ? "derivable" : "not derivable") + " in N" + std::to_string(system) + '\n');
  return h ? 0 : 1;
}

inline int cmd_out(const Options& o, int system, const std::string& norms, const std::string& gamma,
                   const std::string& psi, bool modal, std::ostream& out) {
  NormativeSystem n = parse_norms(read_text_file(norms));
  auto g = parse_formula_list(gamma);
  if (!psi.empty()) {
    Formula f = parse_formula(psi);
    bool h = modal ? modal_output(n, system, g, f) : iosa::out(n, system, g, f);
    detail::emit(out, o, {{"holds", h}, {"system", system}},
                 std::string(h ? "in" : "not in") + (modal ? " modal output " : " out") + std::to_string(system) + '\n');
    return h ? 0 : 1;
  }
  if (modal) throw InputError("--modal needs --psi");
  IOClosure c(n, system, iosa::detail::atoms_of(g));
  std::vector<std::string> mins;
  for (Elem e : c.out_minimal(g)) mins.push_back(detail::short_formula(c.signature(), e));
  std::string text = "out" + std::to_string(system) + " = ";
  if (mins.empty()) text += "empty";
  for (std::size_t i = 0; i < mins.size(); ++i) text += (i ? ", " : "") + std::string("up[") + mins[i] + "]";
  detail::emit(out, o, {{"system", system}, {"atoms", c.signature().atoms()}, {"minimal", mins}}, text + '\n');
  return 0;
}

inline int cmd_slanted(const Options& o, const std::string& ineq, std::ostream& out) {
  ProtoSubAlg s = detail::load_subordination(o);
  SlantedAlg sa = build_slanted(s);
  const auto& e = *sa.ext;
  std::string text;
  json j;
  if (ineq.empty()) {
    json dj = json::object(), bj = json::object();
    for (Elem a = 0; a < s.size(); ++a) {
      dj[s.poset().label(a)] = detail::delta_label(e, sa.diamond[a]);
      bj[s.poset().label(a)] = detail::delta_label(e, sa.box[a]);
      text += "<>" + s.poset().label(a) + " = " + detail::delta_label(e, sa.diamond[a]) + "   []" +
              s.poset().label(a) + " = " + detail::delta_label(e, sa.box[a]) + '\n';
    }
    auto f = classify_slanted(sa);
    j = {{"diamond", dj},
         {"box", bj},
         {"diamond_in_closed", sa.diamond_in_closed},
         {"box_in_open", sa.box_in_open},
         {"monotone", f.monotone},
         {"tense", f.tense}};
    if (f.regular) j["regular"] = *f.regular;
    if (f.normal) j["normal"] = *f.normal;
    text += std::string("monotone: ") + (f.monotone ? "yes" : "no") + ", tense: " + (f.tense ? "yes" : "no");
    if (f.regular) text += std::string(", regular: ") + (*f.regular ? "yes" : "no");
    if (f.normal) text += std::string(", normal: ") + (*f.normal ? "yes" : "no");
    detail::emit(out, o, j, text + '\n');
    return 0;
  }
  ValidityResult r = valid(sa, CompiledInequality::parse(ineq));
  json w = json::object();
  for (const auto& [v, x] : r.witness) w[v] = s.poset().label(x);
  text = r.valid ? "valid\n" : "not valid";
  if (!r.valid) {
    std::string ws;
    for (const auto& [v, x] : r.witness) ws += (ws.empty() ? "" : ", ") + v + "=" + s.poset().label(x);
    text += " at " + ws + '\n';
  }
  detail::emit(out, o, {{"valid", r.valid}, {"witness", w}}, text);
  return r.valid ? 0 : 1;
}

inline int cmd_completion(const Options& o, std::ostream& out) {
  if (o.algebra.empty()) throw InputError("completion needs --algebra");
  AlgebraInput alg = load_algebra(o.algebra);
  CanonicalExtension e = dm_completion(*alg.carrier.poset);
  std::vector<std::string> labels;
  for (Elem u = 0; u < e.delta.size(); ++u) labels.push_back(detail::delta_label(e, u));
  FinPoset relabeled = validate_poset(e.delta.poset().matrix(), labels);
  json j = algebra_to_json(relabeled, std::nullopt, alg.carrier.name.empty() ? "" : "delta(" + alg.carrier.name + ")");
  j["embed"] = e.embed;
  bool dense = verify_dense(e), compact = verify_compact(e);
  j["dense"] = dense;
  j["compact"] = compact;
  std::string text = "delta has " + std::to_string(e.delta.size()) + " elements; embed = [";
  for (std::size_t i = 0; i < e.embed.size(); ++i) text += (i ? ", " : "") + std::to_string(e.embed[i]);
  text += "]\ndense: " + std::string(dense ? "yes" : "no") + ", compact: " + (compact ? "yes" : "no") + '\n';
  detail::emit(out, o, j, text);
  return dense && compact ? 0 : 1;
}

inline int cmd_dual(const Options& o, const std::string& construction, const std::string& checks, std::ostream& out) {
  ProtoSubAlg s = detail::load_subordination(o);
  SubordinationSpace sp;
  if (construction == "jirr") sp = build_space_jirr(s);
  else if (construction == "prime-filters") sp = build_space_primefilters(s);
  else throw InputError("unknown construction: " + construction);
  json j = space_to_json(sp);
  std::string text = std::to_string(sp.size()) + " points, " + std::to_string(sp.R.count()) + " R-pairs\n";
  for (auto [x, y] : sp.R.pairs()) text += "  " + sp.labels[x] + " R " + sp.labels[y] + '\n';
  bool all = true;
  if (!checks.empty()) {
    json jc = json::object();
    for (const auto& name : detail::split_list(checks)) {
      auto c = parse_rel_condition(name);
      if (!c) throw InputError("unknown relational condition: " + name);
      RelResult r = check_relational(sp, *c);
      all = all && r.holds;
      jc[std::string(to_string(*c))] = {{"holds", r.holds}, {"witness", r.witness}};
      text += std::string(to_string(*c)) + ": " + (r.holds ? "holds" : "fails");
      if (!r.holds) {
        std::string ws;
        for (auto x : r.witness) ws += (ws.empty() ? "" : ", ") + sp.labels[x];
        text += " at (" + ws + ")";
      }
      text += '\n';
    }
    j["checks"] = jc;
    j["holds"] = all;
  }
  detail::emit(out, o, j, text);
  return all ? 0 : 1;
}

struct VerifyArgs {
  std::string corpus = "default", mode = "exhaustive", catalog = "default", out_file;
  std::size_t max_n = 4, samples = 500, max_counterexamples = 20;
  std::uint64_t seed = 7;
  unsigned threads = 0;
  std::string groups, carriers;
  std::vector<std::string> extra;
  bool list = false, no_timing = false;
};

inline int cmd_verify(const Options& o, const VerifyArgs& v, std::ostream& out) {
  GenConfig cfg;
  cfg.corpus = v.corpus;
  if (v.mode == "exhaustive") cfg.mode = GenMode::Exhaustive;
  else if (v.mode == "random") cfg.mode = GenMode::Random;
  else throw InputError("unknown mode: " + v.mode);
  if (v.max_n > 4) throw InputError("exhaustive enumeration is limited to n <= 4");
  cfg.max_n = v.max_n;
  cfg.seed = v.seed;
  cfg.samples = v.samples;
  cfg.threads = v.threads;
  cfg.max_counterexamples = v.max_counterexamples;
  if (v.catalog == "default") cfg.reading = Reading::Default;
  else if (v.catalog == "literal") cfg.reading = Reading::Literal;
  else throw InputError("unknown catalog: " + v.catalog);
  cfg.groups = detail::split_list(v.groups);
  cfg.carriers = detail::split_list(v.carriers);
  auto known = catalog_groups();
  for (const auto& g : cfg.groups)
    if (std::find(known.begin(), known.end(), g) == known.end()) throw InputError("unknown group: " + g);
  for (const auto& f : v.extra) {
    AlgebraInput a = load_algebra(f);
    std::string name = a.carrier.name.empty() ? std::filesystem::path(f).stem().string() : a.carrier.name;
    cfg.extra.emplace_back(name, std::move(a));
  }
  auto catalog = build_catalog(cfg.reading);
  if (v.list) {
    json arr = json::array();
    std::string text;
    for (const auto& c : catalog) {
      arr.push_back({{"id", c.id}, {"group", c.group}, {"statement", c.statement}});
      text += c.group + "  " + c.id + "  " + c.statement + '\n';
    }
    detail::emit(out, o, arr, text);
    return 0;
  }
  Report rep = run_suite(cfg, catalog, build_corpus(cfg));
  json j = report_to_json(rep, !v.no_timing);
  if (!v.out_file.empty()) {
    std::ofstream f(v.out_file);
    if (!f) throw InputError("cannot write " + v.out_file);
    f << j.dump(2) << '\n';
  }
  std::string text;
  for (const auto& c : rep.checks) {
    text += (c.failed ? "FAIL " : "ok   ") + c.id + "  tested " + std::to_string(c.tested) + ", skipped " +
            std::to_string(c.skipped) + (c.refused ? ", refused " + std::to_string(c.refused) : "") +
            (c.failed ? ", counterexamples " + std::to_string(c.failed) : "") + '\n';
    for (const auto& x : c.counterexamples) text += "       " + x.instance_id + ": " + x.detail + '\n';
  }
  for (const auto& g : rep.coverage_gaps) text += "coverage gap: " + g + '\n';
  text += std::to_string(rep.instances) + " instances, " + std::to_string(rep.total_counterexamples()) +
          " counterexamples\n";
  detail::emit(out, o, j, text);
  return rep.ok() ? 0 : 1;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Input/output logic and subordination algebra toolkit"};
  app.footer(kGrammars);
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* c, bool subordination) {
    c->footer(kGrammars);
    c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    if (subordination) {
      c->add_option("--algebra", o.algebra, "algebra JSON file or builtin:NAME");
      c->add_option("--prec", o.prec, "relation file, or leq, empty, full");
      c->add_option("--sub", o.sub, "subordination JSON file");
    }
  };

  std::string props;
  bool strict_boolean = false;
  auto* check = app.add_subcommand("check", "evaluate subordination properties and named classes");
  add_common(check, true);
  check->add_option("--props", props, "comma-separated properties (default: all applicable)");
  check->add_flag("--strict-boolean", strict_boolean, "subordination algebras need a Boolean carrier");

  std::string rules;
  int system = 0;
  auto* close_cmd = app.add_subcommand("close", "close a relation under rules");
  add_common(close_cmd, true);
  close_cmd->add_option("--rules", rules, "comma-separated rules among BOT,TOP,SI,WO,AND,OR,CT,T");
  close_cmd->add_option("--system", system, "rule set of system 1..4")->check(CLI::Range(1, 4));

  std::string norms, query, gamma, psi;
  bool modal = false;
  int dsystem = 1;
  auto* derive_cmd = app.add_subcommand("derive", "derivability of a norm in N_i");
  add_common(derive_cmd, false);
  derive_cmd->add_option("--system", dsystem, "1..4")->check(CLI::Range(1, 4));
  derive_cmd->add_option("--norms", norms, "norm file")->required();
  derive_cmd->add_option("--query", query, "\"body |~ head\"")->required();

  auto* out_cmd = app.add_subcommand("out", "output operator out_i");
  add_common(out_cmd, false);
  out_cmd->add_option("--system", dsystem, "1..4")->check(CLI::Range(1, 4));
  out_cmd->add_option("--norms", norms, "norm file")->required();
  out_cmd->add_option("--gamma", gamma, "comma-separated input formulas");
  out_cmd->add_option("--psi", psi, "formula to test (omit to list the minimal outputs)");
  out_cmd->add_flag("--modal", modal, "use the slanted diamond on the meet of the inputs");

  std::string ineq;
  auto* slanted_cmd = app.add_subcommand("slanted", "slanted algebra tables and inequality validity");
  add_common(slanted_cmd, true);
  slanted_cmd->add_option("--ineq", ineq, "inequality to test (omit to print the operations)");

  auto* completion_cmd = app.add_subcommand("completion", "Dedekind-MacNeille completion of a poset");
  add_common(completion_cmd, false);
  completion_cmd->add_option("--algebra", o.algebra, "poset JSON file or builtin:NAME")->required();

  std::string construction = "jirr", rel_checks;
  auto* dual_cmd = app.add_subcommand("dual", "dual subordination space");
  add_common(dual_cmd, true);
  dual_cmd->add_option("--construction", construction, "jirr or prime-filters");
  dual_cmd->add_option("--check", rel_checks, "comma-separated relational conditions");

  VerifyArgs v;
  auto* verify_cmd = app.add_subcommand("verify", "run the property catalog over a corpus");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--corpus", v.corpus, "default or none");
  verify_cmd->add_option("--mode", v.mode, "exhaustive or random");
  verify_cmd->add_option("--max-n", v.max_n, "largest carrier enumerated exhaustively (<= 4)");
  verify_cmd->add_option("--seed", v.seed, "random seed");
  verify_cmd->add_option("--samples", v.samples, "random relations per large carrier");
  verify_cmd->add_option("--out", v.out_file, "write the JSON report here");
  verify_cmd->add_option("--catalog", v.catalog, "default or literal");
  verify_cmd->add_option("--groups", v.groups, "comma-separated check groups");
  verify_cmd->add_option("--carriers", v.carriers, "comma-separated corpus carriers");
  verify_cmd->add_option("--algebra", v.extra, "extra carrier (repeatable)");
  verify_cmd->add_option("--threads", v.threads, "worker threads (0 = hardware)");
  verify_cmd->add_option("--max-counterexamples", v.max_counterexamples, "per check");
  verify_cmd->add_flag("--list", v.list, "list the catalog and exit");
  verify_cmd->add_flag("--no-timing", v.no_timing, "omit timing from the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*check) return cmd_check(o, props, strict_boolean, out);
    if (*close_cmd) return cmd_close(o, rules, system, out);
    if (*derive_cmd) return cmd_derive(o, dsystem, norms, query, out);
    if (*out_cmd) return cmd_out(o, dsystem, norms, gamma, psi, modal, out);
    if (*slanted_cmd) return cmd_slanted(o, ineq, out);
    if (*completion_cmd) return cmd_completion(o, out);
    if (*dual_cmd) return cmd_dual(o, construction, rel_checks, out);
    if (*verify_cmd) return cmd_verify(o, v, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace iosa::cli

#include "wslab/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wslab/analysis.hpp"
#include "wslab/cayley.hpp"
#include "wslab/engine.hpp"
#include "wslab/errors.hpp"
#include "wslab/sierpinski.hpp"
#include "wslab/words.hpp"

namespace wslab::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string k = "3";
  bool json = false;
  int radius = -1;
  std::int64_t ell = 0;
  bool example1 = false;
  bool literal = false;
  std::string translate = "1";
  std::string descriptor;
  std::vector<std::string> words;
  std::string first;
  std::string second;
  std::size_t length = 0;
  std::int64_t highlight_ell = 0;
  std::string output;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

ojson param_json(const GroupParam& p) { return p.is_finite() ? ojson(p.k()) : ojson("inf"); }

BallOptions ball_options() {
  BallOptions opts;
  if (const char* env = std::getenv("WSLAB_VERTEX_CAP")) {
    const std::string_view text(env);
    std::size_t cap = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc{} || ptr != text.data() + text.size() || cap == 0) {
      throw InvalidParam("WSLAB_VERTEX_CAP must be a positive integer");
    }
    opts.vertex_cap = cap;
  }
  return opts;
}

// Subset selected by --descriptor, --example1 [--literal] or --ell, then
// right translated by --translate.
WSubset selected_subset(const Options& o, const GroupParam& p) {
  if (!o.descriptor.empty()) return parse_descriptor(o.descriptor);
  const NormalForm u = parse_element(o.translate, p);
  if (o.example1) return right_translate(example1_subset(p, o.literal), u);
  if (o.ell == 0) throw InvalidParam("select a subset with --ell, --example1 or --descriptor");
  return right_translate(canonical_subset(p, o.ell), u);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

struct Output {
  std::ostringstream out;
  std::ostringstream err;
  int code = kExitOk;
};

void emit_json(Output& o, const ojson& j) { o.out << j.dump() << '\n'; }

// --- commands ---------------------------------------------------------------

void cmd_nf(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const auto text = join(opt.words);
  const NormalForm x = parse_element(text, p);
  if (opt.json) {
    emit_json(o, {{"op", "nf"}, {"param", param_json(p)}, {"input", text}, {"nf", to_string(x)}});
  } else {
    o.out << to_string(x) << '\n';
  }
}

void cmd_mul(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const NormalForm x = multiply(parse_element(opt.first, p), parse_element(opt.second, p));
  if (opt.json) {
    emit_json(o, {{"op", "mul"}, {"param", param_json(p)}, {"nf", to_string(x)}});
  } else {
    o.out << to_string(x) << '\n';
  }
}

void cmd_inv(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const NormalForm x = invert(parse_element(join(opt.words), p));
  if (opt.json) {
    emit_json(o, {{"op", "inv"}, {"param", param_json(p)}, {"nf", to_string(x)}});
  } else {
    o.out << to_string(x) << '\n';
  }
}

void cmd_order(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const NormalForm x = parse_element(join(opt.words), p);
  const auto ord = order(x);
  const std::string text = ord ? std::to_string(*ord) : "inf";
  if (opt.json) {
    emit_json(o, {{"op", "order"},
                  {"param", param_json(p)},
                  {"nf", to_string(x)},
                  {"order", ord ? ojson(*ord) : ojson("inf")}});
  } else {
    o.out << text << '\n';
  }
}

void cmd_ball(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const Ball b = build_ball(p, opt.radius < 0 ? 2 : opt.radius, ball_options());
  if (opt.json) {
    o.out << export_json(b);
    return;
  }
  std::map<int, std::size_t> spheres;
  for (std::size_t i = 0; i < b.size(); ++i) ++spheres[b.distance_of(i)];
  o.out << "G_" << to_string(p) << " ball of radius " << b.radius() << ": " << b.size() << " vertices, "
        << b.edges().size() << " edges\n";
  for (const auto& [d, n] : spheres) o.out << "  distance " << d << ": " << n << '\n';
}

void cmd_dot(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const Ball b = build_ball(p, opt.radius < 0 ? 4 : opt.radius, ball_options());
  Predicate highlight;
  if (opt.highlight_ell != 0) {
    const WSubset e = canonical_subset(p, opt.highlight_ell);
    highlight = [e](const NormalForm& x) { return membership(e, x); };
  }
  const std::string dot = export_dot(b, highlight);
  if (opt.output.empty()) {
    o.out << dot;
    return;
  }
  std::ofstream file(opt.output, std::ios::binary);
  if (!file) throw InvalidParam("cannot write " + opt.output);
  file << dot;
  o.err << "wrote " << b.size() << " vertices to " << opt.output << '\n';
}

void cmd_ws_member(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const WSubset e = selected_subset(opt, p);
  const NormalForm x = parse_element(join(opt.words), e.param());
  const bool in = membership(e, x);
  if (opt.json) {
    emit_json(o, {{"op", "ws-member"},
                  {"subset", ojson::parse(descriptor_json(e))},
                  {"element", to_string(x)},
                  {"member", in}});
  } else {
    o.out << yes_no(in) << '\n';
  }
}

// Removable points claimed for a subset: the cut heads, or (g u, h u) for
// the rule subsets even when the literal variant does not satisfy them.
RemovablePair claimed_points(const WSubset& e) {
  if (const auto* rule = std::get_if<RuleRep>(&e.rep()); rule && rule->literal) {
    return {multiply(gen_g(e.param()), e.translate()), multiply(gen_h(e.param()), e.translate())};
  }
  return removable_points(e);
}

void verify_subset(const WSubset& e, int radius, const std::string& op, Output& o, bool json) {
  const RemovablePair rp = claimed_points(e);
  const Ball ball = build_ball(e.param(), radius, ball_options());
  const auto rg = verify_translation_identity(e, EdgeLabel::G, rp.a, ball);
  const auto rh = verify_translation_identity(e, EdgeLabel::H, rp.b, ball);
  const bool ws = rp.a != rp.b;
  const bool pass = rg.pass && rh.pass;
  if (json) {
    emit_json(o, {{"op", op},
                  {"subset", ojson::parse(descriptor_json(e))},
                  {"radius", radius},
                  {"status", pass ? "pass" : "fail"},
                  {"a", to_string(rp.a)},
                  {"b", to_string(rp.b)},
                  {"g_identity", ojson::parse(report_json(rg))},
                  {"h_identity", ojson::parse(report_json(rh))},
                  {"ws", ws}});
  } else {
    o.out << "subset " << descriptor_json(e) << '\n';
    o.out << "removable points: a = " << to_string(rp.a) << ", b = " << to_string(rp.b) << '\n';
    auto line = [&](const char* name, const NormalForm& pt, const VerificationReport& r) {
      o.out << name << "E = E \\ {" << to_string(pt) << "} on B_" << radius << ": " << (r.pass ? "pass" : "FAIL");
      if (!r.pass) {
        o.out << " (witnesses:";
        for (const auto& w : r.witnesses) o.out << ' ' << to_string(w);
        o.out << ')';
      }
      o.out << '\n';
    };
    line("g", rp.a, rg);
    line("h", rp.b, rh);
    o.out << (ws ? "wS-subset (a != b)" : "not a wS-subset (a = b)") << '\n';
  }
  if (!pass) o.code = kExitCounterexample;
}

void cmd_ws_verify(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  verify_subset(selected_subset(opt, p), opt.radius < 0 ? 6 : opt.radius, "ws-verify", o, opt.json);
}

void cmd_example1_check(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const WSubset e = right_translate(example1_subset(p, opt.literal), parse_element(opt.translate, p));
  verify_subset(e, opt.radius < 0 ? 8 : opt.radius, "example1-check", o, opt.json);
}

void cmd_ws_list(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const auto subsets = enumerate_cut_candidates(p);
  std::optional<Ball> ball;
  if (opt.radius > 0) ball.emplace(build_ball(p, opt.radius, ball_options()));
  ojson list = ojson::array();
  bool all_pass = true;
  for (const auto& e : subsets) {
    const RemovablePair rp = removable_points(e);
    const auto cuts = *e.effective_cuts();
    ojson item{{"ell", e.ell() ? ojson(*e.ell()) : ojson(nullptr)},
               {"gcut", to_string(cuts.gcut)},
               {"hcut", to_string(cuts.hcut)},
               {"a", to_string(rp.a)},
               {"b", to_string(rp.b)},
               {"ws", rp.a != rp.b}};
    std::string verdict;
    if (ball) {
      const bool pass = verify_translation_identity(e, EdgeLabel::G, rp.a, *ball).pass &&
                        verify_translation_identity(e, EdgeLabel::H, rp.b, *ball).pass;
      all_pass = all_pass && pass;
      item["verified"] = pass;
      verdict = pass ? "  verified on B_" + std::to_string(opt.radius) : "  FAILED on B_" + std::to_string(opt.radius);
    }
    if (!opt.json) {
      o.out << "E_" << (e.ell() ? std::to_string(*e.ell()) : "?") << ": cuts " << to_string(cuts.gcut) << ' '
            << to_string(cuts.hcut) << "  a = " << to_string(rp.a) << "  b = " << to_string(rp.b) << "  "
            << (rp.a != rp.b ? "wS" : "not wS") << verdict << '\n';
    }
    list.push_back(std::move(item));
  }
  if (opt.json) {
    emit_json(o, {{"op", "ws-list"}, {"param", param_json(p)}, {"status", all_pass ? "pass" : "fail"}, {"subsets", list}});
  }
  if (!all_pass) o.code = kExitCounterexample;
}

void cmd_ws_normalize(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const WSubset e = selected_subset(opt, p);
  const Normalized n = normalize(e);
  if (opt.json) {
    emit_json(o, {{"op", "ws-normalize"},
                  {"subset", ojson::parse(descriptor_json(e))},
                  {"ell", n.ell},
                  {"translate", to_string(n.translate)}});
  } else {
    o.out << "ell = " << n.ell << ", translate = " << to_string(n.translate) << '\n';
  }
}

void cmd_loops(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const int radius = opt.radius >= 0 ? opt.radius : (p.is_finite() ? static_cast<int>(2 * p.k()) : 8);
  const Ball b = build_ball(p, radius, ball_options());
  const CriticalLoopReport r = minimal_loops(b);
  if (opt.json) {
    ojson reps = ojson::array();
    for (const auto& loop : r.representatives) {
      ojson edges = ojson::array();
      for (const auto& e : loop) {
        edges.push_back({{"tail", to_string(e.tail)}, {"head", to_string(e.head)}, {"label", std::string(1, label_char(e.label))}});
      }
      reps.push_back(std::move(edges));
    }
    emit_json(o, {{"op", "loops"},
                  {"param", param_json(p)},
                  {"radius", radius},
                  {"girth", r.girth ? ojson(*r.girth) : ojson(nullptr)},
                  {"exponent", r.exponent},
                  {"cycle_count", r.cycle_count},
                  {"relator_labels", r.relator_labels},
                  {"translate_unique", r.translate_unique},
                  {"representatives", reps}});
    return;
  }
  o.out << "G_" << to_string(p) << ", B_" << radius << ": ";
  if (!r.girth) {
    o.out << "no cycles\n";
    return;
  }
  o.out << "girth " << *r.girth << ", exponent " << r.exponent << ", " << r.cycle_count << " shortest cycles\n";
  o.out << "all spell (h^-1 g)^" << r.exponent << " up to rotation/inversion: " << yes_no(r.relator_labels) << '\n';
  o.out << "unique up to right translation: " << yes_no(r.translate_unique) << '\n';
  if (!r.representatives.empty()) {
    o.out << "representative:";
    for (const auto& e : r.representatives.front()) o.out << ' ' << to_string(e);
    o.out << '\n';
  }
}

void cmd_classify(const Options& opt, Output& o) {
  const Word w = parse_word(join(opt.words), Alphabet::GH);
  const WordClass c = classify_word(w);
  if (opt.json) {
    o.out << to_json(c, w) << '\n';
    return;
  }
  o.out << to_string(c) << '\n';
  if (const auto fork = find_fork(w)) {
    o.out << "fork: " << to_string(*fork) << '\n';
  } else {
    o.out << "fork: none\n";
  }
}

void cmd_fork_lemma(const Options& opt, Output& o) {
  const ForkLemmaReport r = verify_fork_lemma(opt.length == 0 ? 8 : opt.length);
  if (opt.json) {
    o.out << to_json(r) << '\n';
  } else {
    o.out << (r.pass ? "pass" : "FAIL") << ": " << r.words_checked << " cyclically reduced words, " << r.bad_words
          << " bad, " << r.counterexamples.size() << " bad words without a fork\n";
    for (const auto& w : r.counterexamples) o.out << "  counterexample: " << to_string(w) << '\n';
    o.out << "family members with a fork (not asserted): " << r.converse_violations << '\n';
  }
  if (!r.pass) o.code = kExitCounterexample;
}

void cmd_charge(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const WSubset e = selected_subset(opt, p);
  const NormalForm gamma = parse_element(join(opt.words), e.param());
  const ChargeReport r = charge(e, gamma);
  if (opt.json) {
    o.out << to_json(r) << '\n';
    return;
  }
  auto list = [](const std::vector<NormalForm>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
    return s + "}";
  };
  o.out << "gamma = " << to_string(gamma) << '\n';
  o.out << "E \\ gamma E = " << list(r.outflow_set) << " (" << r.outflow << ")\n";
  o.out << "gamma E \\ E = " << list(r.inflow_set) << " (" << r.inflow << ")\n";
  o.out << "f = " << r.f << '\n';
}

void cmd_free_check(const Options& opt, Output& o) {
  const GroupParam p = GroupParam::parse(opt.k);
  const FreePairReport r = free_pair_check(p, opt.length == 0 ? 6 : opt.length);
  if (opt.json) {
    o.out << to_json(r, p) << '\n';
  } else {
    o.out << (r.pass ? "pass" : "FAIL") << ": " << r.words_checked
          << " reduced words in x = g, y = h^-1 g h, none trivial" << (r.pass ? "" : " (violated)") << '\n';
    for (const auto& w : r.counterexamples) o.out << "  trivial: " << render_xy(w) << '\n';
  }
  if (!r.pass) o.code = kExitCounterexample;
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  CLI::App app{"Weak Sierpinski subsets of G_k = <g, h | (h^-1 g)^k>", "wslab"};
  app.require_subcommand(1);
  Options opt;
  Output o;
  std::function<void(const Options&, Output&)> action;

  auto add = [&](const std::string& name, const std::string& desc, auto handler) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_flag("--json", opt.json, "Emit JSON");
    sub->callback([&action, handler] { action = handler; });
    return sub;
  };
  auto with_k = [&](CLI::App* sub) { sub->add_option("--k", opt.k, "Order of s: an integer >= 2 or 'inf'"); };
  auto with_subset = [&](CLI::App* sub) {
    sub->add_option("--ell", opt.ell, "Canonical subset E_ell");
    sub->add_flag("--example1", opt.example1, "Use the rule subset E+ (positive final g-power)");
    sub->add_flag("--literal", opt.literal, "With --example1: include negative final g-powers");
    sub->add_option("--translate", opt.translate, "Right translate the subset by this element");
    sub->add_option("--descriptor", opt.descriptor, "Subset descriptor JSON");
  };

  auto* nf = add("nf", "Normal form of a word", cmd_nf);
  with_k(nf);
  nf->add_option("word", opt.words, "Word over {g,h} or {g,s}")->required();

  auto* mul = add("mul", "Product of two elements", cmd_mul);
  with_k(mul);
  mul->add_option("a", opt.first, "First factor")->required();
  mul->add_option("b", opt.second, "Second factor")->required();

  auto* inv = add("inv", "Inverse of an element", cmd_inv);
  with_k(inv);
  inv->add_option("word", opt.words)->required();

  auto* ord = add("order", "Order of an element", cmd_order);
  with_k(ord);
  ord->add_option("word", opt.words)->required();

  auto* ball = add("ball", "Summary or JSON export of a ball", cmd_ball);
  with_k(ball);
  ball->add_option("--radius", opt.radius, "Radius (default 2)");

  auto* dot = add("dot", "DOT export of a ball", cmd_dot);
  with_k(dot);
  dot->add_option("--radius", opt.radius, "Radius (default 4)");
  dot->add_option("--highlight-ell", opt.highlight_ell, "Fill the vertices of E_ell");
  dot->add_option("-o,--output", opt.output, "Write to a file instead of stdout");

  auto* member = add("ws-member", "Membership in a subset", cmd_ws_member);
  with_k(member);
  with_subset(member);
  member->add_option("element", opt.words)->required();

  auto* verify = add("ws-verify", "Verify gE = E \\ {a} and hE = E \\ {b} on a ball", cmd_ws_verify);
  with_k(verify);
  with_subset(verify);
  verify->add_option("--radius", opt.radius, "Ball radius (default 6)");

  auto* list = add("ws-list", "The k cut candidates E_1..E_k", cmd_ws_list);
  with_k(list);
  list->add_option("--radius", opt.radius, "Also verify each candidate on this ball");

  auto* normal = add("ws-normalize", "The (ell, u) with E = E_ell u", cmd_ws_normalize);
  with_k(normal);
  with_subset(normal);

  auto* loops = add("loops", "Shortest cycles of a ball", cmd_loops);
  with_k(loops);
  loops->add_option("--radius", opt.radius, "Ball radius (default 2k, or 8 when k is infinite)");

  auto* classify = add("classify", "Classify a cyclically reduced {g,h}-word", cmd_classify);
  classify->add_option("word", opt.words)->required();

  auto* fork = add("fork-lemma", "Check that every bad word has a fork", cmd_fork_lemma);
  fork->add_option("--length", opt.length, "Maximum word length (default 8)");

  auto* chg = add("charge", "f(gamma) = |E \\ gamma E| - |gamma E \\ E|", cmd_charge);
  with_k(chg);
  with_subset(chg);
  chg->add_option("gamma", opt.words)->required();

  auto* free = add("free-check", "Check that (g, h^-1 g h) is free up to a length", cmd_free_check);
  with_k(free);
  free->add_option("--length", opt.length, "Maximum word length (default 6)");

  auto* ex1 = add("example1-check", "Verify the rule subset E+ on a ball", cmd_example1_check);
  with_k(ex1);
  ex1->add_flag("--literal", opt.literal, "Use the literal reading (any final g-power)");
  ex1->add_option("--translate", opt.translate, "Right translate the subset");
  ex1->add_option("--radius", opt.radius, "Ball radius (default 8)");

  Result result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    action(opt, o);
    result.exit_code = o.code;
  } catch (const CLI::CallForHelp&) {
    o.out << app.help();
    result.exit_code = kExitOk;
  } catch (const CLI::ParseError& e) {
    o.err << "usage error: " << e.what() << '\n' << "run 'wslab --help' for the command list\n";
    result.exit_code = kExitUsage;
  } catch (const ResourceLimit& e) {
    o.err << "resource limit: " << e.what() << '\n';
    result.exit_code = kExitResourceLimit;
  } catch (const Error& e) {
    o.err << "invalid input: " << e.what() << '\n';
    result.exit_code = kExitInvalidInput;
  }
  result.out = o.out.str();
  result.err = o.err.str();
  return result;
}

}  // namespace wslab::cli

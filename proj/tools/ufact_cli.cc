// Command-line front end: build, verify, split, tree, expr, parse, gen, sweep.

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <ufact/elimination.hh>
#include <ufact/errors.hh>
#include <ufact/generator.hh>
#include <ufact/goodness.hh>
#include <ufact/io.hh>
#include <ufact/parsing.hh>
#include <ufact/pipeline.hh>
#include <ufact/ramsey.hh>
#include <ufact/synthesis.hh>

using namespace ufact;

namespace
{
  enum exit_code { pass = 0, violation = 1, bad_input = 2 };

  struct globals
  {
    std::size_t max_len = 8;
    std::vector<std::size_t> up_bound{3, 3};
    bool optimize_heights = false;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
  };

  struct word_args
  {
    std::string word;
    std::string word_file;
  };

  struct source_args
  {
    std::string morphism_file;
    std::string automaton_file;
    std::string report_file;
  };

  // Writes `name` under --out when given, otherwise prints to stdout.
  void
  emit(const globals& g, const std::string& name, const std::string& text)
  {
    if (g.out.empty())
      {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
          std::cout << '\n';
        return;
      }
    std::filesystem::create_directories(g.out);
    write_file((std::filesystem::path(g.out) / name).string(),
               text.back() == '\n' ? text : text + '\n');
  }

  std::string
  dump(const json& j)
  {
    return j.dump(2);
  }

  std::string
  word_text(const word_args& w)
  {
    if (!w.word_file.empty())
      {
        auto s = read_file(w.word_file);
        auto b = s.find_first_not_of(" \t\r\n");
        auto e = s.find_last_not_of(" \t\r\n");
        return b == std::string::npos ? "" : s.substr(b, e - b + 1);
      }
    return w.word;
  }

  bool
  is_up(const std::string& s)
  {
    return s.size() >= 2 && s.compare(s.size() - 2, 2, "^w") == 0;
  }

  const json&
  unwrap(const json& j, const char* key)
  {
    return j.is_object() && j.contains(key) ? j.at(key) : j;
  }

  // The automaton and its heights, from files or from a fresh build.
  struct loaded
  {
    morphism phi;
    ordered_automaton a;
    build_ptr report;
    std::optional<json> report_json;
  };

  loaded
  load(const source_args& src)
  {
    auto phi = morphism_from_json(read_json_file(src.morphism_file));
    if (src.automaton_file.empty())
      {
        auto b = build_good_report(phi);
        return {phi, b->good, b, std::nullopt};
      }
    auto a = automaton_from_json(
        unwrap(read_json_file(src.automaton_file), "automaton"));
    a = with_alphabet(a, phi.alphabet());
    std::optional<json> rj;
    if (!src.report_file.empty())
      rj = unwrap(read_json_file(src.report_file), "report");
    return {phi, a, nullptr, rj};
  }

  height_assignment
  heights_for(const loaded& l, const globals& g)
  {
    if (!g.optimize_heights)
      return default_heights(l.a);
    if (l.report)
      return optimized_heights(l.report.get(), l.a);
    if (l.report_json)
      return heights_from_report(*l.report_json, l.a);
    throw missing_build_report(
        "--optimize-heights needs --report when --automaton is given");
  }

  std::string
  report_text(const build_level& b, int depth = 0)
  {
    std::string pad(2 * depth, ' ');
    std::ostringstream o;
    o << pad << to_string(b.decision.tag);
    if (b.decision.c >= 0)
      o << '(' << b.phi.semigroup().name(b.decision.c) << ')';
    o << " |S|=" << b.phi.semigroup().size() << " states=" << b.good.size()
      << " (weak " << b.weak.size() << ") height=" << b.height()
      << " (weak " << b.weak_height() << ")";
    if (b.profile)
      o << " profile=(" << b.profile->k << ',' << b.profile->ell << ','
        << b.profile->n << ')';
    if (!b.derived.empty())
      {
        o << " B={";
        for (std::size_t i = 0; i < b.derived.size(); ++i)
          o << (i ? "," : "") << b.phi.semigroup().name(b.derived[i]);
        o << '}';
      }
    o << '\n';
    if (b.child1)
      o << report_text(*b.child1, depth + 1)
        << report_text(*b.child2, depth + 1);
    return o.str();
  }

  int
  cmd_build(const globals& g, const std::string& file)
  {
    auto phi = morphism_from_json(read_json_file(file));
    auto b = build_good_report(phi);
    auto aj = automaton_to_json(b->good);
    auto rj = build_report_to_json(*b);
    if (!g.out.empty())
      {
        emit(g, "automaton.json", dump(aj));
        emit(g, "automaton.dot", automaton_to_dot(b->good));
        emit(g, "report.json", dump(rj));
        emit(g, "report.txt", report_text(*b));
      }
    else if (g.format == "dot")
      emit(g, "", automaton_to_dot(b->good));
    else if (g.format == "text")
      emit(g, "", report_text(*b));
    else
      emit(g, "", dump(json{{"automaton", aj}, {"report", rj}}));
    return pass;
  }

  int
  cmd_verify(const globals& g, const std::string& afile,
             const std::string& mfile)
  {
    auto phi = morphism_from_json(read_json_file(mfile));
    auto a = with_alphabet(
        automaton_from_json(unwrap(read_json_file(afile), "automaton")),
        phi.alphabet());
    auto r = verify_goodness(a, phi,
                             {g.max_len, g.up_bound[0], g.up_bound[1]});
    if (g.format == "text")
      emit(g, "goodness.txt", goodness_report_to_text(r, a, phi));
    else
      emit(g, "goodness.json", dump(goodness_report_to_json(r, a, phi)));
    return r.good() ? pass : violation;
  }

  int
  cmd_split(const globals& g, const source_args& src, const word_args& wa)
  {
    auto l = load(src);
    auto h = heights_for(l, g);
    auto text = word_text(wa);
    split s;
    ramsey_verdict v;
    if (is_up(text))
      {
        auto w = parse_up_word(text, l.phi.lookup());
        s = split_word(l.a, h, w);
        v = verify_ramsey(s, l.phi, w);
      }
    else
      {
        auto w = parse_word(text, l.phi.lookup());
        if (w.empty())
          throw input_error("empty word");
        s = split_word(l.a, h, w);
        v = verify_ramsey(s, l.phi, w);
      }
    if (g.format == "text")
      {
        std::string t;
        for (std::size_t i = 0; i < s.stem.size(); ++i)
          t += (i ? " " : "") + std::to_string(s.stem[i]);
        if (s.is_lasso())
          {
            t += " (";
            for (std::size_t i = 0; i < s.cycle.size(); ++i)
              t += (i ? " " : "") + std::to_string(s.cycle[i]);
            t += ")^w";
          }
        emit(g, "split.txt", t);
      }
    else
      emit(g, "split.json", split_to_json(s).dump());
    if (!v.ramsey)
      std::cerr << "split is not Ramsey: " << v.detail << '\n';
    return v.ramsey ? pass : violation;
  }

  int
  cmd_tree(const globals& g, const source_args& src, const word_args& wa)
  {
    auto l = load(src);
    auto h = heights_for(l, g);
    auto text = word_text(wa);
    if (is_up(text))
      throw input_error("trees are built for finite words only");
    auto w = parse_word(text, l.phi.lookup());
    if (w.empty())
      throw input_error("empty word");
    auto t = tree_from_split(w, split_word(l.a, h, w), l.phi);
    auto v = verify_fact_tree(t, l.phi, w);
    if (!g.out.empty())
      {
        emit(g, "tree.json", dump(fact_tree_to_json(t, l.phi)));
        emit(g, "tree.dot", fact_tree_to_dot(t, l.phi));
      }
    else if (g.format == "dot")
      emit(g, "", fact_tree_to_dot(t, l.phi));
    else
      emit(g, "", dump(fact_tree_to_json(t, l.phi)));
    if (!v.ok)
      std::cerr << "tree check failed: " << v.detail << '\n';
    return v.ok ? pass : violation;
  }

  int
  cmd_expr(const globals& g, const source_args& src, std::uint64_t limit)
  {
    auto l = load(src);
    auto ex = eliminate_all(l.a, l.phi);
    expr_bundle b{l.phi, {}, ex.omega};
    const auto& sg = l.phi.semigroup();
    for (elem s = 0; s < sg.size(); ++s)
      b.finite[sg.name(s)] = ex.finite[s];
    if (g.format == "text")
      {
        std::ostringstream o;
        for (elem s = 0; s < sg.size(); ++s)
          o << "F_" << sg.name(s) << " = "
            << (tree_size(ex.finite[s]) <= limit
                    ? to_text(ex.finite[s], l.phi.alphabet(), &sg)
                    : "<" + std::to_string(dag_size(ex.finite[s]))
                          + " shared nodes>")
            << '\n';
        o << "omega = "
          << (tree_size(ex.omega) <= limit
                  ? to_text(ex.omega, l.phi.alphabet(), &sg)
                  : "<" + std::to_string(dag_size(ex.omega))
                        + " shared nodes>")
          << '\n';
        emit(g, "expressions.txt", o.str());
      }
    else
      emit(g, "expressions.json", dump(expr_bundle_to_json(b, limit)));
    return pass;
  }

  int
  cmd_parse(const globals& g, const std::string& file, const word_args& wa)
  {
    auto b = expr_bundle_from_json(read_json_file(file));
    const auto& phi = b.phi;
    auto text = word_text(wa);
    json out;
    bool ok = true;
    if (is_up(text))
      {
        if (!b.omega)
          throw input_error("expression file has no omega expression");
        auto w = parse_up_word(text, phi.lookup());
        expr_matcher m(b.omega);
        auto c = m.count_up(w);
        json branches = json::array();
        int hit = 0;
        for (std::size_t i = 0; i < c.branches.size(); ++i)
          if (c.branches[i] != up_count::zero)
            {
              ++hit;
              branches.push_back(
                  {{"branch", i},
                   {"parses", c.branches[i] == up_count::one ? "one" : "many"}});
            }
        ok = hit == 1 && c.total == up_count::one;
        out = {{"word", text}, {"matches", branches}, {"unique", ok}};
      }
    else
      {
        auto w = parse_word(text, phi.lookup());
        if (w.empty())
          throw input_error("empty word");
        std::vector<std::string> hits;
        for (const auto& [name, e] : b.finite)
          if (count_parses(e, w) > 0)
            hits.push_back(name);
        if (hits.size() != 1)
          {
            ok = false;
            out = {{"word", text}, {"matches", hits}, {"unique", false}};
          }
        else
          {
            const auto& e = b.finite.at(hits[0]);
            try
              {
                auto p = parse_unique(e, w);
                auto t = parse_to_fact_tree(p, w, phi);
                ok = verify_fact_tree(t, phi, w).ok;
                out = {{"word", text},
                       {"element", hits[0]},
                       {"unique", true},
                       {"parse", parse_tree_to_json(p, phi)},
                       {"tree", fact_tree_to_json(t, phi)}};
                if (g.format == "dot")
                  {
                    emit(g, "tree.dot", fact_tree_to_dot(t, phi));
                    return ok ? pass : violation;
                  }
              }
            catch (const ambiguous_parse& x)
              {
                ok = false;
                out = {{"word", text},
                       {"element", hits[0]},
                       {"unique", false},
                       {"parses", x.count}};
              }
          }
      }
    emit(g, "parse.json", dump(out));
    return ok ? pass : violation;
  }

  std::uint64_t
  seed_or_default(const globals& g)
  {
    std::uint64_t s = g.seed.value_or(1);
    if (!g.seed)
      std::cerr << "seed: " << s << '\n';
    return s;
  }

  int
  cmd_gen(const globals& g, int points, int gens, std::size_t cap)
  {
    auto phi = generate_morphism(points, gens, seed_or_default(g), cap);
    emit(g, "morphism.json", dump(morphism_to_json(phi)));
    return pass;
  }

  int
  cmd_sweep(const globals& g, int count, int points, int gens,
            std::size_t max_size, std::size_t words)
  {
    std::uint64_t seed = seed_or_default(g);
    pipeline_options opt;
    opt.max_len = g.max_len;
    opt.up_u = g.up_bound[0];
    opt.up_v = g.up_bound[1];
    opt.words = words;
    opt.tree_words = words;
    std::mt19937_64 seeds(seed);
    int done = 0, failed = 0;
    json log = json::array();
    while (done < count)
      {
        std::uint64_t s = seeds();
        std::optional<morphism> phi;
        try
          {
            phi = generate_morphism(points, gens, s, max_size);
          }
        catch (const size_overflow&)
          {
            continue;
          }
        opt.seed = s;
        auto t0 = std::chrono::steady_clock::now();
        auto rep = run_pipeline(*phi, opt);
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        json stages = json::array();
        for (const auto& st : rep.stages)
          stages.push_back(
              {{"stage", st.name}, {"pass", st.pass}, {"detail", st.detail}});
        log.push_back({{"seed", s},
                       {"elements", phi->semigroup().size()},
                       {"states", rep.states},
                       {"pass", rep.ok()},
                       {"seconds", secs},
                       {"stages", stages}});
        if (!rep.ok())
          ++failed;
        if (g.format == "text")
          {
            std::cout << "seed " << s << " |S|=" << phi->semigroup().size()
                      << " |Q|=" << rep.states << ' '
                      << (rep.ok() ? "pass" : "FAIL");
            for (const auto& st : rep.stages)
              if (!st.pass)
                std::cout << " [" << st.name << ": " << st.detail << ']';
            std::cout << " (" << std::fixed << std::setprecision(1) << secs
                      << " s)" << std::endl;
          }
        ++done;
      }
    if (g.format != "text")
      emit(g, "sweep.json",
           dump(json{{"seed", seed},
                     {"instances", done},
                     {"failed", failed},
                     {"results", log}}));
    return failed ? violation : pass;
  }
}

int
main(int argc, char** argv)
{
  CLI::App app{"Good automata, Ramsey splits and good expressions for "
               "finite semigroup morphisms"};
  app.require_subcommand(1);
  app.fallthrough();
  globals g;
  app.add_option("--max-len", g.max_len, "exhaustive finite word length")
      ->capture_default_str();
  app.add_option("--up-bound", g.up_bound,
                 "prefix and period bounds for u(v)^w words")
      ->expected(2)
      ->capture_default_str();
  app.add_flag("--optimize-heights", g.optimize_heights,
               "use the construction's heights for splits");
  app.add_option("--seed", g.seed, "random seed (default 1)");
  app.add_option("--out", g.out, "write artifacts into this directory");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "dot", "text"}))
      ->capture_default_str();

  auto add_word = [](CLI::App* c, word_args& w) {
    auto* o1 = c->add_option("--word", w.word, "word, or u(v)^w");
    auto* o2 = c->add_option("--word-file", w.word_file,
                             "file holding the word");
    o1->excludes(o2);
    c->require_option(1, 0);
  };
  auto add_source = [](CLI::App* c, source_args& s) {
    c->add_option("morphism", s.morphism_file, "morphism file")->required();
    c->add_option("--automaton", s.automaton_file,
                  "good automaton (default: build one)");
    c->add_option("--report", s.report_file,
                  "build report holding optimized heights");
  };

  std::string file1, file2;
  int result = pass;

  auto* build = app.add_subcommand("build", "synthesize a good automaton");
  build->add_option("morphism", file1, "morphism file")->required();
  build->callback([&] { result = cmd_build(g, file1); });

  auto* verify = app.add_subcommand("verify", "check the axioms G1-G4");
  verify->add_option("automaton", file1, "automaton file")->required();
  verify->add_option("morphism", file2, "morphism file")->required();
  verify->callback([&] { result = cmd_verify(g, file1, file2); });

  source_args src;
  word_args wa;
  auto* split = app.add_subcommand("split", "Ramsey split of a word");
  add_source(split, src);
  add_word(split, wa);
  split->callback([&] { result = cmd_split(g, src, wa); });

  auto* tree = app.add_subcommand("tree", "factorization tree of a word");
  add_source(tree, src);
  add_word(tree, wa);
  tree->callback([&] { result = cmd_tree(g, src, wa); });

  std::uint64_t text_limit = 100000;
  auto* ex = app.add_subcommand("expr", "good expressions by elimination");
  add_source(ex, src);
  ex->add_option("--text-limit", text_limit,
                 "largest unfolded expression printed as text")
      ->capture_default_str();
  ex->callback([&] { result = cmd_expr(g, src, text_limit); });

  auto* parse = app.add_subcommand("parse", "parse a word by an expression");
  parse->add_option("expressions", file1, "expression file")->required();
  add_word(parse, wa);
  parse->callback([&] { result = cmd_parse(g, file1, wa); });

  int points = 3, gens = 2;
  std::size_t cap = 64;
  auto* gen = app.add_subcommand("gen", "random transformation morphism");
  gen->add_option("--points", points, "size of the acted-on set")
      ->capture_default_str();
  gen->add_option("--gens", gens, "number of generators (letters)")
      ->capture_default_str();
  gen->add_option("--cap", cap, "largest closure accepted")
      ->capture_default_str();
  gen->callback([&] { result = cmd_gen(g, points, gens, cap); });

  int count = 50;
  std::size_t max_size = 6, words = 100;
  auto* sweep = app.add_subcommand("sweep", "pipeline over random morphisms");
  sweep->add_option("--count", count, "number of instances")
      ->capture_default_str();
  sweep->add_option("--points", points, "size of the acted-on set")
      ->capture_default_str();
  sweep->add_option("--gens", gens, "number of generators")
      ->capture_default_str();
  sweep->add_option("--max-size", max_size,
                    "skip instances whose closure is larger")
      ->capture_default_str();
  sweep->add_option("--words", words, "random words per instance")
      ->capture_default_str();
  sweep->callback([&] {
    result = cmd_sweep(g, count, points, gens, max_size, words);
  });

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::ParseError& e)
    {
      int rc = app.exit(e);
      return rc == 0 ? pass : bad_input;
    }
  catch (const input_error& e)
    {
      std::cerr << "input error: " << e.what() << '\n';
      return bad_input;
    }
  catch (const missing_build_report& e)
    {
      std::cerr << "input error: " << e.what() << '\n';
      return bad_input;
    }
  catch (const size_overflow& e)
    {
      std::cerr << "input error: " << e.what() << '\n';
      return bad_input;
    }
  catch (const error& e)
    {
      std::cerr << "violation: " << e.what() << '\n';
      return violation;
    }
  catch (const std::filesystem::filesystem_error& e)
    {
      std::cerr << "input error: " << e.what() << '\n';
      return bad_input;
    }
  return result;
}

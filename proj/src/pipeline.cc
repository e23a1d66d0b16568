#include <ufact/pipeline.hh>
#include <ufact/errors.hh>
#include <ufact/goodness.hh>
#include <ufact/parsing.hh>
#include <ufact/ramsey.hh>

#include <functional>

namespace ufact
{
  namespace
  {
    stage_verdict
    fail(stage_verdict v, std::string detail)
    {
      v.pass = false;
      v.detail = std::move(detail);
      return v;
    }

    std::vector<word>
    corpus(const morphism& phi, const pipeline_options& opt)
    {
      rng g(opt.seed);
      std::vector<word> ws;
      for (std::size_t i = 0; i < opt.words; ++i)
        ws.push_back(random_word(g, phi.alphabet_size(), 1, opt.word_len));
      return ws;
    }

    // First ideal level whose weakly-good automaton is higher than
    // H1 + H2 + 2; the fresh final sink adds one more level on top.
    const build_level*
    height_violation(const build_level& b)
    {
      if (!b.child1)
        return nullptr;
      if (b.weak_height() > b.h1 + b.h2 + 2)
        return &b;
      if (auto x = height_violation(*b.child1))
        return x;
      return height_violation(*b.child2);
    }
  }

  stage_verdict
  check_goodness_stage(const ordered_automaton& a, const morphism& phi,
                       const pipeline_options& opt)
  {
    stage_verdict v{"goodness", true, {}};
    auto r = verify_goodness(a, phi, {opt.max_len, opt.up_u, opt.up_v});
    const axiom_verdict* ax[] = {&r.g1, &r.g2, &r.g3, &r.g4};
    for (int i = 0; i < 4; ++i)
      if (!ax[i]->pass)
        {
          std::string d = "G" + std::to_string(i + 1) + ": " + ax[i]->detail;
          if (ax[i]->witness)
            d += " on \"" + format_word(*ax[i]->witness, a.alphabet()) + "\"";
          if (ax[i]->up_witness)
            d += " on " + format_up_word(*ax[i]->up_witness, a.alphabet());
          return fail(v, d);
        }
    v.detail = std::to_string(a.size()) + " states";
    return v;
  }

  stage_verdict
  check_split_stage(const build_level& report, const pipeline_options& opt)
  {
    stage_verdict v{"splits", true, {}};
    const auto& a = report.good;
    const auto& phi = report.phi;
    auto hd = default_heights(a);
    auto ho = optimized_heights(&report, a);
    int most = 0;
    for (const auto& w : corpus(phi, opt))
      for (const auto* h : {&hd, &ho})
        {
          auto s = split_word(a, *h, w);
          auto r = verify_ramsey(s, phi, w);
          if (!r.ramsey)
            return fail(v, (h == &hd ? "default" : "optimized")
                               + std::string(" split of \"")
                               + format_word(w, phi.alphabet())
                               + "\" is not Ramsey: " + r.detail);
          if (h == &hd && s.height() > a.size())
            return fail(v, "split uses " + std::to_string(s.height())
                               + " levels for " + std::to_string(a.size())
                               + " states");
          most = std::max(most, s.height());
        }
    for (const auto& w : all_up_words(phi.alphabet_size(), opt.up_u,
                                      opt.up_v))
      for (const auto* h : {&hd, &ho})
        {
          auto s = split_word(a, *h, w);
          auto r = verify_ramsey(s, phi, w);
          if (!r.ramsey)
            return fail(v, "split of " + format_up_word(w, phi.alphabet())
                               + " is not Ramsey: " + r.detail);
        }
    if (auto b = height_violation(report))
      return fail(v, "level " + to_string(b->decision.tag) + " has height "
                         + std::to_string(b->weak_height()) + " > "
                         + std::to_string(b->h1) + "+"
                         + std::to_string(b->h2) + "+2");
    v.detail = "H=" + std::to_string(ho.height()) + " of "
               + std::to_string(a.size()) + ", max level "
               + std::to_string(most);
    return v;
  }

  stage_verdict
  check_tree_stage(const build_level& report, const elimination_result& ex,
                   const pipeline_options& opt)
  {
    stage_verdict v{"trees", true, {}};
    const auto& a = report.good;
    const auto& phi = report.phi;
    auto hd = default_heights(a);
    auto ho = optimized_heights(&report, a);
    auto ws = corpus(phi, opt);
    for (const auto& w : ws)
      for (const auto* h : {&hd, &ho})
        {
          auto t = tree_from_split(w, split_word(a, *h, w), phi);
          auto r = verify_fact_tree(t, phi, w);
          if (!r.ok)
            return fail(v, "tree from split of \""
                               + format_word(w, phi.alphabet())
                               + "\": " + r.detail);
        }
    for (std::size_t i = 0; i < std::min(opt.tree_words, ws.size()); ++i)
      {
        const auto& w = ws[i];
        auto p = parse_unique(ex.finite.at(phi.eval(w)), w);
        auto t = parse_to_fact_tree(p, w, phi);
        auto r = verify_fact_tree(t, phi, w);
        if (!r.ok)
          return fail(v, "tree from parse of \""
                             + format_word(w, phi.alphabet())
                             + "\": " + r.detail);
      }
    return v;
  }

  stage_verdict
  check_expression_stage(const morphism& phi, const elimination_result& ex,
                         const pipeline_options& opt)
  {
    stage_verdict v{"expressions", true, {}};
    const auto& sg = phi.semigroup();
    std::vector<std::unique_ptr<expr_matcher>> m;
    for (const auto& e : ex.finite)
      m.push_back(std::make_unique<expr_matcher>(e));
    std::string bad;
    for_each_word(phi.alphabet_size(), 1, opt.max_len, [&](const word& w) {
      if (!bad.empty())
        return;
      elem s = phi.eval(w);
      for (elem x = 0; x < sg.size(); ++x)
        {
          auto c = m[x]->count(w);
          if (c != (x == s ? 1u : 0u))
            bad = "\"" + format_word(w, phi.alphabet()) + "\" has "
                  + std::to_string(c) + " parses in F_" + sg.name(x);
        }
    });
    if (!bad.empty())
      return fail(v, bad);
    good_expr_options go{opt.max_len, opt.up_u, opt.up_v};
    for (elem x = 0; x < sg.size(); ++x)
      {
        auto r = check_good_expression(ex.finite[x], phi, go);
        if (!r.ok())
          return fail(v, "F_" + sg.name(x) + ": " + r.detail);
      }
    expr_matcher om(ex.omega);
    for (const auto& w : all_up_words(phi.alphabet_size(), opt.up_u,
                                      opt.up_v))
      {
        auto c = om.count_up(w);
        int hit = 0;
        bool unique = true;
        for (auto b : c.branches)
          if (b != up_count::zero)
            {
              ++hit;
              unique = unique && b == up_count::one;
            }
        if (hit != 1 || !unique || c.total != up_count::one)
          return fail(v, format_up_word(w, phi.alphabet()) + " matches "
                             + std::to_string(hit) + " branches"
                             + (unique ? "" : ", ambiguously"));
      }
    v.detail = std::to_string(ex.branches.size()) + " omega branches";
    return v;
  }

  bool
  pipeline_report::ok() const
  {
    for (const auto& s : stages)
      if (!s.pass)
        return false;
    return !stages.empty();
  }

  pipeline_report
  run_pipeline(const morphism& phi, const pipeline_options& opt)
  {
    pipeline_report rep;
    auto guard = [&](const char* name, const std::function<stage_verdict()>& f) {
      try
        {
          rep.stages.push_back(f());
        }
      catch (const error& e)
        {
          rep.stages.push_back({name, false, e.what()});
        }
      return rep.stages.back().pass;
    };
    build_ptr b;
    if (!guard("build", [&] {
          b = build_good_report(phi);
          return stage_verdict{"build", true, to_string(b->decision.tag)};
        }))
      return rep;
    rep.states = b->good.size();
    if (!guard("goodness",
               [&] { return check_goodness_stage(b->good, b->phi, opt); }))
      return rep;
    guard("splits", [&] { return check_split_stage(*b, opt); });
    elimination_result ex;
    if (!guard("elimination", [&] {
          ex = eliminate_all(b->good, b->phi);
          return stage_verdict{"elimination", true, ""};
        }))
      return rep;
    guard("trees", [&] { return check_tree_stage(*b, ex, opt); });
    guard("expressions",
          [&] { return check_expression_stage(b->phi, ex, opt); });
    return rep;
  }
}

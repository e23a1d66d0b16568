#include <ufact/ramsey.hh>
#include <ufact/errors.hh>
#include <ufact/runs.hh>

#include <algorithm>

namespace ufact
{
  int
  height_assignment::height() const
  {
    return h.empty() ? 0 : *std::max_element(h.begin(), h.end());
  }

  height_assignment
  default_heights(const ordered_automaton& a)
  {
    height_assignment out;
    for (int p : a.positions())
      out.h.push_back(p + 1);
    return out;
  }

  height_assignment
  optimized_heights(const build_level* report, const ordered_automaton& a)
  {
    if (!report)
      throw missing_build_report("no build report for this automaton");
    if (!(report->good == a))
      throw missing_build_report("build report describes another automaton");
    return height_assignment{report->heights};
  }

  int
  split::height() const
  {
    int m = 0;
    for (int v : stem)
      m = std::max(m, v);
    for (int v : cycle)
      m = std::max(m, v);
    return m;
  }

  split
  split_word(const ordered_automaton& a, const height_assignment& h,
             const word& w)
  {
    auto runs = accepting_runs_finite(a, w);
    if (runs.empty())
      throw no_accepting_run("no accepting run on "
                             + format_word(w, a.alphabet()));
    split s;
    for (state q : runs.front().stem)
      s.stem.push_back(h.h.at(q));
    return s;
  }

  split
  split_word(const ordered_automaton& a, const height_assignment& h,
             const up_word& w)
  {
    auto v = accepting_runs_up(a, w, up_mode::exists);
    if (v.count == up_count::zero)
      throw no_accepting_run("no accepting run on "
                             + format_up_word(w, a.alphabet()));
    split s;
    for (state q : v.run->stem)
      s.stem.push_back(h.h.at(q));
    for (state q : v.run->cycle)
      s.cycle.push_back(h.h.at(q));
    return s;
  }

  namespace
  {
    ramsey_verdict
    check_levels(const std::vector<int>& levels, const morphism& phi,
                 const word& w)
    {
      const auto& s = phi.semigroup();
      ramsey_verdict r;
      // open positions with strictly decreasing levels, each carrying the
      // idempotent of its class once known
      struct open_pos
      {
        int level;
        std::size_t pos;
        elem e;
      };
      std::vector<open_pos> stack;
      for (std::size_t j = 0; j < levels.size(); ++j)
        {
          int l = levels[j];
          while (!stack.empty() && stack.back().level < l)
            stack.pop_back();
          if (!stack.empty() && stack.back().level == l)
            {
              auto& top = stack.back();
              elem g = phi.eval(w, top.pos, j);
              bool bad = top.e < 0 ? !is_idempotent(s, g) : g != top.e;
              if (bad)
                {
                  r.ramsey = false;
                  r.i = top.pos;
                  r.j = j;
                  r.detail = "positions " + std::to_string(top.pos) + " ~ "
                    + std::to_string(j) + " at level " + std::to_string(l)
                    + ": gap " + format_word(word(w.begin() + top.pos,
                                                  w.begin() + j),
                                             phi.alphabet())
                    + " maps to " + s.name(g);
                  if (top.e >= 0)
                    r.detail += ", class idempotent is " + s.name(top.e);
                  else
                    r.detail += ", not idempotent";
                  return r;
                }
              top.e = g;
              top.pos = j;
            }
          else
            stack.push_back({l, j, -1});
        }
      return r;
    }
  }

  ramsey_verdict
  verify_ramsey(const split& s, const morphism& phi, const word& w)
  {
    if (s.is_lasso() || s.stem.size() != w.size() + 1)
      {
        ramsey_verdict r;
        r.ramsey = false;
        r.detail = "split is not aligned with the word";
        return r;
      }
    return check_levels(s.stem, phi, w);
  }

  ramsey_verdict
  verify_ramsey(const split& s, const morphism& phi, const up_word& w,
                std::size_t unrollings)
  {
    if (!s.is_lasso() || s.cycle.size() % w.period.size() != 0
        || s.stem.size() < w.prefix.size())
      {
        ramsey_verdict r;
        r.ramsey = false;
        r.detail = "split is not aligned with the word";
        return r;
      }
    std::size_t len = s.stem.size() + unrollings * s.cycle.size();
    word u;
    std::vector<int> levels;
    for (std::size_t i = 0; i < len; ++i)
      u.push_back(w.at(i));
    for (std::size_t i = 0; i <= len; ++i)
      levels.push_back(s.at(i));
    return check_levels(levels, phi, u);
  }

  int
  fact_tree::height() const
  {
    int m = -1;
    for (const auto& c : children)
      m = std::max(m, c.height());
    return m + 1;
  }

  word
  fact_tree::yield() const
  {
    if (is_leaf())
      return {a};
    word out;
    for (const auto& c : children)
      {
        auto y = c.yield();
        out.insert(out.end(), y.begin(), y.end());
      }
    return out;
  }

  fact_tree
  fact_leaf(letter a, const morphism& phi)
  {
    return fact_tree{a, phi.image(a), {}};
  }

  fact_tree
  fact_node(std::vector<fact_tree> children, const morphism& phi)
  {
    elem l = children.at(0).label;
    for (std::size_t i = 1; i < children.size(); ++i)
      l = phi.semigroup().product(l, children[i].label);
    return fact_tree{-1, l, std::move(children)};
  }

  namespace
  {
    // Tree over the factor between positions i < j.
    fact_tree
    build(const word& w, const std::vector<int>& lv, const morphism& phi,
          std::size_t i, std::size_t j)
    {
      if (j - i == 1)
        return fact_leaf(w[i], phi);
      int top = 0;
      for (std::size_t k = i + 1; k < j; ++k)
        top = std::max(top, lv[k]);
      std::vector<std::size_t> cuts;
      for (std::size_t k = i + 1; k < j; ++k)
        if (lv[k] == top)
          cuts.push_back(k);
      fact_tree left = build(w, lv, phi, i, cuts.front());
      fact_tree right = build(w, lv, phi, cuts.back(), j);
      if (cuts.size() == 1)
        return fact_node({std::move(left), std::move(right)}, phi);
      std::vector<fact_tree> mids;
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        mids.push_back(build(w, lv, phi, cuts[k], cuts[k + 1]));
      fact_tree mid = mids.size() == 1 ? std::move(mids[0])
                                       : fact_node(std::move(mids), phi);
      return fact_node(
          {std::move(left),
           fact_node({std::move(mid), std::move(right)}, phi)},
          phi);
    }
  }

  fact_tree
  tree_from_split(const word& w, const split& s, const morphism& phi)
  {
    if (w.empty())
      throw input_error("tree_from_split needs a nonempty word");
    auto v = verify_ramsey(s, phi, w);
    if (!v.ramsey)
      throw not_ramsey(v.detail);
    return build(w, s.stem, phi, 0, w.size());
  }

  namespace
  {
    struct tree_checker
    {
      const morphism& phi;
      const word& w;
      tree_verdict r;
      std::vector<std::size_t> path;

      void
      fail(const std::string& what)
      {
        if (!r.ok)
          return;
        r.ok = false;
        r.detail = what;
        r.path = path;
      }

      // returns φ of the yield; pos advances over the leaves
      elem
      visit(const fact_tree& t, std::size_t& pos)
      {
        const auto& s = phi.semigroup();
        if (t.is_leaf())
          {
            if (pos >= w.size() || w[pos] != t.a)
              fail("yield differs from the word at position "
                   + std::to_string(pos));
            ++pos;
            elem e = t.a >= 0 && t.a < phi.alphabet_size() ? phi.image(t.a)
                                                           : -1;
            if (t.label != e)
              fail("leaf label differs from the letter image");
            return e;
          }
        if (t.children.size() < 2)
          fail("internal node of arity 1");
        elem acc = -1;
        for (std::size_t k = 0; k < t.children.size(); ++k)
          {
            path.push_back(k);
            elem e = visit(t.children[k], pos);
            path.pop_back();
            if (e < 0 || acc == -2)
              acc = -2;
            else
              acc = acc < 0 ? e : s.product(acc, e);
          }
        if (acc >= 0 && t.label != acc)
          fail("label " + (t.label >= 0 && t.label < s.size()
                               ? s.name(t.label)
                               : std::to_string(t.label))
               + " differs from the image " + s.name(acc) + " of the yield");
        if (t.children.size() > 2)
          {
            elem e = t.children[0].label;
            for (const auto& c : t.children)
              if (c.label != e)
                {
                  fail("node of arity " + std::to_string(t.children.size())
                       + " has children with different labels");
                  return acc;
                }
            if (e < 0 || e >= s.size() || !is_idempotent(s, e))
              fail("node of arity " + std::to_string(t.children.size())
                   + " has a non-idempotent child label");
          }
        return acc;
      }
    };
  }

  tree_verdict
  verify_fact_tree(const fact_tree& t, const morphism& phi, const word& w)
  {
    tree_checker c{phi, w, {}, {}};
    std::size_t pos = 0;
    c.visit(t, pos);
    if (c.r.ok && pos != w.size())
      c.fail("yield is shorter than the word");
    return c.r;
  }
}

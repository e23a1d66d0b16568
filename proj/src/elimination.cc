#include <ufact/elimination.hh>
#include <ufact/errors.hh>
#include <ufact/goodness.hh>

#include <algorithm>
#include <unordered_map>

namespace ufact
{
  namespace
  {
    state
    sole_final(const ordered_automaton& a)
    {
      auto fin = a.finals();
      if (fin.size() != 1)
        throw not_good("automaton has " + std::to_string(fin.size())
                       + " final states");
      return fin[0];
    }

    void
    require_reduced(const ordered_automaton& a)
    {
      a.validate();
      if (reduce(a).size() != a.size())
        throw not_reduced("automaton has useless states");
    }
  }

  elim_table::elim_table(const ordered_automaton& a, const morphism& phi)
    : a_(a), phi_(phi), order_(a.by_rank()), pos_(a.positions())
  {
    require_reduced(a);
    auto rep = verify_structure(a, phi);
    if (!rep.g2.pass)
      throw not_good(rep.g2.detail);
    if (!rep.g3.pass)
      throw not_good(rep.g3.detail);
    if (!rep.g4.pass)
      throw not_good(rep.g4.detail);
    idem_ = rep.idempotent_map();
  }

  expr
  elim_table::entry(state p, int k, state q, elem s)
  {
    auto key = std::make_tuple(p, k, q, s);
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
    const auto& sg = phi_.semigroup();
    std::vector<expr> parts;
    if (k == 0)
      {
        for (letter l = 0; l < a_.alphabet_size(); ++l)
          if (phi_.image(l) == s)
            for (state t : a_.succ(p, l))
              if (t == q)
                parts.push_back(e_letter(l, s));
      }
    else
      {
        state r = order_[k - 1];
        if (auto x = entry(p, k - 1, q, s); !is_empty(x))
          parts.push_back(x);
        elem e = idem_[r];
        expr loop = e >= 0 ? entry(r, k - 1, r, e) : e_empty();
        expr iter = is_empty(loop) ? loop : e_plus(loop, e);
        for (elem s1 = 0; s1 < sg.size(); ++s1)
          {
            expr x = entry(p, k - 1, r, s1);
            if (is_empty(x))
              continue;
            for (elem s2 = 0; s2 < sg.size(); ++s2)
              {
                expr y = entry(r, k - 1, q, s2);
                if (is_empty(y))
                  continue;
                if (sg.product(s1, s2) == s)
                  parts.push_back(e_concat(x, y, s));
                if (!is_empty(iter)
                    && sg.product(sg.product(s1, e), s2) == s)
                  parts.push_back(
                      e_concat(e_concat(x, iter, sg.product(s1, e)), y, s));
              }
          }
      }
    expr out = parts.empty() ? e_empty() : union_of(parts, s);
    memo_.emplace(key, out);
    return out;
  }

  expr
  elim_table::below_entry(state p, state r, elem s)
  {
    return entry(p, pos_[r], r, s);
  }

  elim_table
  eliminate(const ordered_automaton& a, const morphism& phi)
  {
    return elim_table(a, phi);
  }

  namespace
  {
    // Pending label of one pair (p, q): summands grouped by element.
    class label
    {
    public:
      void
      add(elem s, expr e)
      {
        for (auto& [t, parts] : parts_)
          if (t == s)
            {
              parts.push_back(std::move(e));
              return;
            }
        parts_.push_back({s, {std::move(e)}});
      }

      /// One annotated union per element, in increasing element order.
      std::vector<std::pair<elem, expr>>
      finish() const
      {
        std::vector<std::pair<elem, expr>> out;
        for (const auto& [s, parts] : parts_)
          out.push_back({s, union_of(parts, s)});
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
      }

    private:
      std::vector<std::pair<elem, std::vector<expr>>> parts_;
    };

    using finished = std::vector<std::pair<elem, expr>>;
  }

  elimination_result
  eliminate_all(const ordered_automaton& a, const morphism& phi)
  {
    require_reduced(a);
    const auto& sg = phi.semigroup();
    const int n = a.size();
    const state iota = a.initial();
    const state f = sole_final(a);
    for (letter l = 0; l < a.alphabet_size(); ++l)
      if (!a.succ(f, l).empty())
        throw not_good("final state " + a.name(f) + " has outgoing edges");

    std::vector<std::unordered_map<state, label>> out(n);
    std::vector<std::unordered_map<state, bool>> in(n);
    for (auto [p, l, q] : a.transitions())
      {
        if (q == iota)
          throw not_good("transition into the initial state");
        out[p][q].add(phi.image(l), e_letter(l, phi.image(l)));
        in[q][p] = true;
      }

    // what the ω-expression needs from the moment r is eliminated
    struct snapshot
    {
      std::vector<std::pair<state, finished>> column;  // L(z, r), z ≠ r
      expr loop;                                        // L(r, r) at e_r
      elem e = -1;
    };
    std::vector<snapshot> snap(n);
    std::vector<state> inner;
    for (state r : a.by_rank())
      if (r != iota && r != f)
        inner.push_back(r);

    for (state r : inner)
      {
        auto& sn = snap[r];
        auto self = out[r].find(r);
        if (self != out[r].end())
          {
            auto lp = self->second.finish();
            if (lp.size() != 1 || !is_idempotent(sg, lp[0].first))
              {
                std::string names;
                for (const auto& [s, e] : lp)
                  names += (names.empty() ? "" : ",") + sg.name(s);
                throw not_good("L_" + a.name(r) + " has image {" + names
                               + "}");
              }
            sn.e = lp[0].first;
            sn.loop = lp[0].second;
            out[r].erase(self);
            in[r].erase(r);
          }
        expr iter = sn.loop ? e_plus(sn.loop, sn.e) : nullptr;

        std::vector<std::pair<state, finished>> succ;
        for (const auto& [q, lab] : out[r])
          succ.push_back({q, lab.finish()});
        std::sort(succ.begin(), succ.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<state> preds;
        for (const auto& [p, _] : in[r])
          preds.push_back(p);
        std::sort(preds.begin(), preds.end());

        for (state p : preds)
          {
            auto lab = out[p].at(r).finish();
            for (const auto& [s1, x] : lab)
              {
                expr xi = iter ? e_concat(x, iter, sg.product(s1, sn.e))
                               : nullptr;
                for (const auto& [q, ys] : succ)
                  {
                    auto& target = out[p][q];
                    in[q][p] = true;
                    for (const auto& [s2, y] : ys)
                      {
                        elem s = sg.product(s1, s2);
                        target.add(s, e_concat(x, y, s));
                        if (xi)
                          {
                            elem t = sg.product(xi->ann.value(), s2);
                            target.add(t, e_concat(xi, y, t));
                          }
                      }
                  }
              }
            sn.column.push_back({p, std::move(lab)});
            out[p].erase(r);
          }
        for (const auto& [q, _] : succ)
          in[q].erase(r);
        out[r].clear();
        in[r].clear();
      }

    elimination_result res;
    res.finite.assign(sg.size(), e_empty());
    if (auto it = out[iota].find(f); it != out[iota].end())
      for (auto& [s, e] : it->second.finish())
        res.finite[s] = e;

    // A^s(z): every run from ι ending in z, built from the runs that reach
    // z after their last visit above z (P) and the loops at z.  Processed
    // from the top rank down; A(ι) is the empty run.
    std::vector<std::vector<expr>> reach(n);
    for (auto it = inner.rbegin(); it != inner.rend(); ++it)
      {
        state r = *it;
        std::vector<std::vector<expr>> parts(sg.size());
        for (const auto& [z, lab] : snap[r].column)
          for (const auto& [s2, y] : lab)
            {
              if (z == iota)
                {
                  parts[s2].push_back(y);
                  continue;
                }
              for (elem s1 = 0; s1 < sg.size(); ++s1)
                if (reach[z].size() && reach[z][s1])
                  {
                    elem s = sg.product(s1, s2);
                    parts[s].push_back(e_concat(reach[z][s1], y, s));
                  }
            }
        std::vector<expr> first(sg.size());
        for (elem s = 0; s < sg.size(); ++s)
          if (!parts[s].empty())
            first[s] = union_of(parts[s], s);
        if (a.is_buchi(r) && snap[r].loop)
          for (elem s = 0; s < sg.size(); ++s)
            if (first[s])
              res.branches.push_back(
                  {r, s, first[s], with_annotation(snap[r].loop, snap[r].e)});
        std::vector<std::vector<expr>> all(sg.size());
        for (elem s = 0; s < sg.size(); ++s)
          if (first[s])
            {
              all[s].push_back(first[s]);
              if (snap[r].loop)
                {
                  elem t = sg.product(s, snap[r].e);
                  all[t].push_back(e_concat(
                      first[s], e_plus(snap[r].loop, snap[r].e), t));
                }
            }
        reach[r].assign(sg.size(), nullptr);
        for (elem s = 0; s < sg.size(); ++s)
          if (!all[s].empty())
            reach[r][s] = union_of(all[s], s);
      }
    std::vector<expr> terms;
    for (const auto& b : res.branches)
      terms.push_back(e_concat(b.prefix, e_omega(b.loop, b.loop->ann)));
    res.omega = union_of(terms);
    return res;
  }

  std::vector<expr>
  finite_expressions(const ordered_automaton& a, const morphism& phi)
  {
    return eliminate_all(a, phi).finite;
  }

  expr
  omega_expression(const ordered_automaton& a, const morphism& phi)
  {
    return eliminate_all(a, phi).omega;
  }
}

#include <ufact/goodness.hh>

#include <algorithm>
#include <deque>

namespace ufact
{
  language_image
  restricted_language_image(const ordered_automaton& a, const morphism& phi,
                            state p, const std::vector<bool>& x, state q)
  {
    const auto& s = phi.semigroup();
    int n = s.size();
    // BFS over (intermediate state, accumulated element); letters in order
    // so first discoveries carry shortlex-least words
    std::vector<int> parent(static_cast<std::size_t>(a.size()) * n, -2);
    std::vector<letter> via(parent.size());
    std::vector<std::optional<word>> found(n);
    std::deque<int> todo;
    auto path_of = [&](int node) {
      word w;
      for (int v = node; v >= 0; v = parent[v])
        w.push_back(via[v]);
      return word(w.rbegin(), w.rend());
    };
    auto visit = [&](int from, letter l, state r, elem e) {
      if (r == q && !found[e])
        {
          word w = from >= 0 ? path_of(from) : word{};
          w.push_back(l);
          found[e] = std::move(w);
        }
      if (!x[r])
        return;
      int node = r * n + e;
      if (parent[node] != -2)
        return;
      parent[node] = from;
      via[node] = l;
      todo.push_back(node);
    };
    for (letter l = 0; l < a.alphabet_size(); ++l)
      for (state r : a.succ(p, l))
        visit(-1, l, r, phi.image(l));
    while (!todo.empty())
      {
        int node = todo.front();
        todo.pop_front();
        state r = node / n;
        elem e = node % n;
        for (letter l = 0; l < a.alphabet_size(); ++l)
          for (state r2 : a.succ(r, l))
            visit(node, l, r2, s.product(e, phi.image(l)));
      }
    language_image out;
    for (elem e = 0; e < n; ++e)
      if (found[e])
        {
          out.elements.push_back(e);
          out.witnesses.push_back(*found[e]);
        }
    return out;
  }

  std::vector<elem>
  image_of_restricted_language(const ordered_automaton& a, const morphism& phi,
                               state p, const std::vector<bool>& x, state q)
  {
    return restricted_language_image(a, phi, p, x, q).elements;
  }

  std::vector<bool>
  below(const ordered_automaton& a, state q)
  {
    std::vector<bool> x(a.size());
    for (state r = 0; r < a.size(); ++r)
      x[r] = a.less(r, q);
    return x;
  }

  std::vector<elem>
  goodness_report::idempotent_map() const
  {
    std::vector<elem> out(images.size(), -1);
    for (const auto& im : images)
      if (im.idempotent)
        out[im.q] = *im.idempotent;
    return out;
  }

  namespace
  {
    bool
    shortlex_less(const word& a, const word& b)
    {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    }

    void
    check_g2(const ordered_automaton& a, const morphism& phi,
             goodness_report& r)
    {
      const auto& s = phi.semigroup();
      for (state q = 0; q < a.size(); ++q)
        {
          auto img = restricted_language_image(a, phi, q, below(a, q), q);
          state_image si{q, img.elements, std::nullopt, std::nullopt};
          if (img.elements.size() == 1 && is_idempotent(s, img.elements[0]))
            si.idempotent = img.elements[0];
          else if (!img.elements.empty())
            {
              // first word in shortlex order that is non-idempotent or
              // disagrees with the least word
              std::vector<std::size_t> idx(img.elements.size());
              for (std::size_t i = 0; i < idx.size(); ++i)
                idx[i] = i;
              std::sort(idx.begin(), idx.end(), [&](auto i, auto j) {
                return shortlex_less(img.witnesses[i], img.witnesses[j]);
              });
              elem first = img.elements[idx[0]];
              for (auto i : idx)
                if (!is_idempotent(s, img.elements[i])
                    || img.elements[i] != first)
                  {
                    si.witness = img.witnesses[i];
                    break;
                  }
              if (r.g2.pass)
                {
                  r.g2.pass = false;
                  r.g2.witness = si.witness;
                  r.g2.detail = "L_" + a.name(q) + " contains "
                    + format_word(*si.witness, a.alphabet()) + " with image "
                    + s.name(phi.eval(*si.witness));
                  if (!is_idempotent(s, phi.eval(*si.witness)))
                    r.g2.detail += ", not idempotent";
                  else
                    r.g2.detail += ", image set not a singleton";
                }
            }
          r.images.push_back(std::move(si));
        }
    }

    void
    check_g3_g4(const ordered_automaton& a, goodness_report& r)
    {
      state i = a.initial();
      auto order = a.by_rank();
      for (auto [p, l, q] : a.transitions())
        if (q == i)
          {
            r.g3.pass = false;
            r.g3.detail = "transition " + a.name(p) + " -" + a.alphabet()[l]
              + "-> " + a.name(i) + " enters the initial state";
            break;
          }
      if (r.g3.pass && order.back() != i)
        {
          r.g3.pass = false;
          r.g3.detail = "initial state is not maximal";
        }
      auto fin = a.finals();
      if (fin.size() != 1)
        {
          r.g4.pass = false;
          r.g4.detail = std::to_string(fin.size()) + " final states";
          return;
        }
      state f = fin[0];
      for (letter l = 0; l < a.alphabet_size(); ++l)
        if (!a.succ(f, l).empty())
          {
            r.g4.pass = false;
            r.g4.detail = "final state " + a.name(f) + " has outgoing edges";
            return;
          }
      if (a.size() < 2 || order[order.size() - 2] != f || order.back() != i)
        {
          r.g4.pass = false;
          r.g4.detail = "final state is not ranked just below the initial";
        }
    }
  }

  goodness_report
  verify_structure(const ordered_automaton& a, const morphism& phi)
  {
    goodness_report r;
    check_g2(a, phi, r);
    check_g3_g4(a, r);
    return r;
  }

  goodness_report
  verify_goodness(const ordered_automaton& a, const morphism& phi,
                  const check_bounds& bounds)
  {
    auto r = verify_structure(a, phi);
    auto amb = check_unambiguous_finite(a);
    if (!amb.ok)
      {
        r.g1.pass = false;
        r.g1.witness = amb.witness;
        r.g1.detail = "two accepting runs on "
          + format_word(*amb.witness, a.alphabet());
        return r;
      }
    auto uni = check_universal_finite(a);
    if (!uni.ok)
      {
        r.g1.pass = false;
        r.g1.witness = uni.witness;
        r.g1.detail = "no accepting run on "
          + format_word(*uni.witness, a.alphabet());
        return r;
      }
    auto up = check_universal_up_bounded(a, bounds.up_u, bounds.up_v, true);
    if (!up.ok)
      {
        r.g1.pass = false;
        r.g1.up_witness = up.witness;
        r.g1.detail = std::string(up.found == up_count::zero
                                      ? "no accepting run on "
                                      : "several accepting runs on ")
          + format_up_word(*up.witness, a.alphabet());
      }
    return r;
  }
}

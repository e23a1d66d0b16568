#include <ufact/fixtures.hh>
#include <ufact/errors.hh>

#include <map>

namespace ufact::fixtures
{
  namespace
  {
    morphism
    make(std::vector<std::string> names,
         const std::vector<std::vector<long long>>& table,
         std::vector<std::string> alphabet, std::vector<elem> images)
    {
      auto s = std::make_shared<const finite_semigroup>(std::move(names),
                                                        table);
      return morphism(s, std::move(alphabet), std::move(images));
    }

    // Nonempty words of length <= k over two symbols; the product keeps the
    // first k letters.
    morphism
    truncated_words(int k, const std::string& x, const std::string& y)
    {
      std::vector<std::vector<int>> spelled;
      std::vector<std::vector<int>> layer{{}};
      for (int len = 1; len <= k; ++len)
        {
          std::vector<std::vector<int>> next;
          for (const auto& w : layer)
            for (int l : {0, 1})
              {
                auto v = w;
                v.push_back(l);
                next.push_back(v);
              }
          spelled.insert(spelled.end(), next.begin(), next.end());
          layer = std::move(next);
        }
      std::map<std::vector<int>, int> index;
      std::vector<std::string> names;
      for (std::size_t i = 0; i < spelled.size(); ++i)
        {
          index[spelled[i]] = static_cast<int>(i);
          std::string n;
          for (int l : spelled[i])
            n += l ? y : x;
          names.push_back(n);
        }
      std::vector<std::vector<long long>> table(
          spelled.size(), std::vector<long long>(spelled.size()));
      for (std::size_t i = 0; i < spelled.size(); ++i)
        for (std::size_t j = 0; j < spelled.size(); ++j)
          {
            auto v = spelled[i];
            v.insert(v.end(), spelled[j].begin(), spelled[j].end());
            v.resize(std::min<std::size_t>(v.size(), k));
            table[i][j] = index[v];
          }
      return make(names, table, {"a", "b"}, {0, 1});
    }
  }

  morphism
  ra2()
  {
    return make({"α", "β"}, {{0, 0}, {1, 1}}, {"a", "b"}, {0, 1});
  }

  morphism
  psi6()
  {
    return truncated_words(2, "α", "β");
  }

  morphism
  pow4()
  {
    // s^i * s^j = s^(i+j) folded by s^5 = s^3
    std::vector<std::vector<long long>> t(4, std::vector<long long>(4));
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        {
          int e = i + j;
          while (e > 4)
            e -= 2;
          t[i - 1][j - 1] = e - 1;
        }
    return make({"s", "s^2", "s^3", "s^4"}, t, {"a", "b"}, {0, 1});
  }

  morphism
  pow4_single()
  {
    auto p = pow4();
    return morphism(p.shared_semigroup(), {"a", "b"}, {0, 0});
  }

  morphism
  klein()
  {
    // index = 2*x + y for (x, y)
    std::vector<std::vector<long long>> t(4, std::vector<long long>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        t[i][j] = i ^ j;
    return make({"(0,0)", "(0,1)", "(1,0)", "(1,1)"}, t, {"a", "b"}, {2, 1});
  }

  morphism
  z3()
  {
    return make({"g", "g^2", "1"}, {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}}, {"a"},
                {0});
  }

  morphism
  bounded_words(int k)
  {
    if (k < 1)
      throw input_error("k must be positive");
    return truncated_words(k, "a", "b");
  }

  std::vector<std::string>
  names()
  {
    return {"ra2", "psi6", "pow4", "klein"};
  }

  morphism
  by_name(const std::string& name)
  {
    if (name == "ra2")
      return ra2();
    if (name == "psi6")
      return psi6();
    if (name == "pow4")
      return pow4();
    if (name == "klein")
      return klein();
    throw input_error("unknown fixture '" + name + "'");
  }

  ordered_automaton
  ra2_hand_automaton()
  {
    ordered_automaton a({"a", "b"});
    state nb = a.add_state("n_b", 0);
    state na = a.add_state("n_a", 1);
    state f = a.add_state("f", 2);
    state i = a.add_state("ι", 3);
    a.set_initial(i);
    a.set_final(f);
    a.set_buchi(na);
    a.set_buchi(nb);
    for (letter x : {0, 1})
      for (state t : {na, nb, f})
        a.add_transition(i, x, t);
    a.add_transition(na, 0, na);
    a.add_transition(na, 0, nb);
    a.add_transition(na, 0, f);
    a.add_transition(nb, 1, nb);
    a.add_transition(nb, 1, na);
    a.add_transition(nb, 1, f);
    return a;
  }

  namespace
  {
    ordered_automaton
    psi6_hand(bool merged)
    {
      ordered_automaton a({"a", "b"});
      // every loop reads two letters xy first, so any order of the inner
      // states satisfies G2; this one puts the primed copies lowest
      state aa2 = merged ? -1 : a.add_state("n'_aa", 0);
      state bb2 = a.add_state("n'_bb", 1);
      state aa = a.add_state("n_aa", 2);
      state bb = a.add_state("n_bb", 3);
      state ab = a.add_state("n_ab", 4);
      state ba = a.add_state("n_ba", 5);
      state f = a.add_state("f", 6);
      state i = a.add_state("ι", 7);
      if (merged)
        aa2 = aa;
      a.set_initial(i);
      a.set_final(f);
      for (state r : {aa, ab, bb, ba})
        a.set_buchi(r);
      for (letter x : {0, 1})
        for (state t : {aa, ba, ab, bb, f})
          a.add_transition(i, x, t);
      const letter la = 0, lb = 1;
      a.add_transition(aa, la, ab);
      a.add_transition(aa, la, aa2);
      a.add_transition(aa2, la, aa);
      a.add_transition(aa2, la, ab);
      a.add_transition(ab, la, bb);
      a.add_transition(ab, la, ba);
      a.add_transition(ab, la, f);
      a.add_transition(bb, lb, bb2);
      a.add_transition(bb2, lb, bb);
      a.add_transition(bb2, lb, ba);
      a.add_transition(bb2, lb, f);
      a.add_transition(bb, lb, ba);
      a.add_transition(bb, lb, f);
      a.add_transition(ba, lb, ab);
      a.add_transition(ba, lb, aa);
      return a;
    }
  }

  ordered_automaton
  psi6_hand_automaton()
  {
    return psi6_hand(false);
  }

  ordered_automaton
  psi6_hand_automaton_merged()
  {
    return psi6_hand(true);
  }
}

#include <ufact/runs.hh>
#include <ufact/errors.hh>
#include <ufact/graph.hh>

#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

namespace ufact
{
  namespace
  {
    void
    check_letters(const ordered_automaton& a, const word& w)
    {
      for (letter x : w)
        if (x < 0 || x >= a.alphabet_size())
          throw unknown_letter(std::to_string(x));
    }

    // can[i][q]: from q, the suffix w[i..] leads into F.
    std::vector<std::vector<bool>>
    co_reach(const ordered_automaton& a, const word& w)
    {
      std::size_t n = w.size();
      std::vector<std::vector<bool>> can(n + 1,
                                         std::vector<bool>(a.size(), false));
      for (state q = 0; q < a.size(); ++q)
        can[n][q] = a.is_final(q);
      for (std::size_t i = n; i-- > 0;)
        for (state q = 0; q < a.size(); ++q)
          for (state r : a.succ(q, w[i]))
            if (can[i + 1][r])
              {
                can[i][q] = true;
                break;
              }
      return can;
    }
  }

  std::vector<run_trace>
  accepting_runs_finite(const ordered_automaton& a, const word& w)
  {
    if (w.empty())
      throw input_error("runs are only defined on nonempty words");
    check_letters(a, w);
    auto can = co_reach(a, w);
    std::vector<run_trace> out;
    if (!can[0][a.initial()])
      return out;
    std::vector<state> path{a.initial()};
    // depth-first, successors in increasing order
    std::function<void()> go = [&]() {
      std::size_t i = path.size() - 1;
      if (i == w.size())
        {
          out.push_back({path, {}, true});
          return;
        }
      for (state r : a.succ(path.back(), w[i]))
        if (can[i + 1][r])
          {
            path.push_back(r);
            go();
            path.pop_back();
          }
    };
    go();
    return out;
  }

  std::uint64_t
  count_runs_finite(const ordered_automaton& a, const word& w)
  {
    check_letters(a, w);
    constexpr std::uint64_t cap = std::uint64_t{1} << 63;
    std::vector<std::uint64_t> cur(a.size(), 0), next(a.size());
    cur[a.initial()] = 1;
    for (letter x : w)
      {
        std::fill(next.begin(), next.end(), 0);
        for (state q = 0; q < a.size(); ++q)
          if (cur[q])
            for (state r : a.succ(q, x))
              next[r] = std::min(cap, next[r] + cur[q]);
        std::swap(cur, next);
      }
    std::uint64_t total = 0;
    for (state q = 0; q < a.size(); ++q)
      if (a.is_final(q))
        total = std::min(cap, total + cur[q]);
    return total;
  }

  bool
  accepts_finite(const ordered_automaton& a, const word& w)
  {
    check_letters(a, w);
    std::vector<bool> cur(a.size(), false), next(a.size());
    cur[a.initial()] = true;
    for (letter x : w)
      {
        std::fill(next.begin(), next.end(), false);
        for (state q = 0; q < a.size(); ++q)
          if (cur[q])
            for (state r : a.succ(q, x))
              next[r] = true;
        std::swap(cur, next);
      }
    for (state q = 0; q < a.size(); ++q)
      if (cur[q] && a.is_final(q))
        return true;
    return false;
  }

  namespace
  {
    // Product of the automaton with the folded position graph of u·v^ω.
    // Node (q, p) has id q * N + p.
    struct lasso_product
    {
      const ordered_automaton& a;
      const up_word& w;
      int N;
      digraph g;
      scc_result scc;
      std::vector<bool> good;  // reachable and some accepting continuation
      int start;

      lasso_product(const ordered_automaton& aut, const up_word& uw)
        : a(aut), w(uw),
          N(static_cast<int>(uw.prefix.size() + uw.period.size())),
          g(aut.size() * N)
      {
        for (state q = 0; q < a.size(); ++q)
          for (int p = 0; p < N; ++p)
            {
              int np = static_cast<int>(w.next_position(p));
              for (state r : a.succ(q, w.at(p)))
                g.add_edge(q * N + p, r * N + np);
            }
        start = a.initial() * N;
        scc = tarjan_scc(g);
        auto fwd = g.reachable_from({start});
        std::vector<int> seeds;
        for (int v = 0; v < g.size(); ++v)
          if (fwd[v] && accepting_cycle_node(v))
            seeds.push_back(v);
        auto bwd = g.reversed().reachable_from(seeds);
        good.resize(g.size());
        for (int v = 0; v < g.size(); ++v)
          good[v] = fwd[v] && bwd[v];
      }

      bool accepting_cycle_node(int v) const
      {
        return a.is_buchi(v / N) && scc.nontrivial[scc.comp[v]];
      }

      run_trace lasso() const
      {
        auto stem = bfs_path(
            g, start,
            [&](int v) { return good[v] && accepting_cycle_node(v); },
            [&](int v) { return good[v]; });
        int x = stem.back();
        auto loop = bfs_path(
            g, x, [&](int v) { return v == x; },
            [&](int v) { return scc.comp[v] == scc.comp[x]; }, false);
        run_trace r;
        r.accepted = true;
        for (std::size_t i = 0; i + 1 < stem.size(); ++i)
          r.stem.push_back(stem[i] / N);
        for (std::size_t i = 0; i + 1 < loop.size(); ++i)
          r.cycle.push_back(loop[i] / N);
        return r;
      }
    };

    bool
    has_two_runs(const lasso_product& lp)
    {
      const auto& a = lp.a;
      int N = lp.N;
      // Nodes of the self-product over good single nodes only; any accepting
      // run stays within good nodes.
      std::map<std::tuple<int, int, int>, int> id;
      std::vector<std::tuple<int, int, int>> nodes;
      digraph g;
      auto get = [&](int v1, int v2, int d) {
        auto key = std::make_tuple(v1, v2, d);
        auto it = id.find(key);
        if (it != id.end())
          return std::make_pair(it->second, false);
        int n = g.add_node();
        id.emplace(key, n);
        nodes.push_back(key);
        return std::make_pair(n, true);
      };
      if (!lp.good[lp.start])
        return false;
      std::deque<int> todo{get(lp.start, lp.start, 0).first};
      while (!todo.empty())
        {
          int n = todo.front();
          todo.pop_front();
          auto [v1, v2, d] = nodes[n];
          for (int x1 : lp.g.succ(v1))
            {
              if (!lp.good[x1])
                continue;
              for (int x2 : lp.g.succ(v2))
                {
                  if (!lp.good[x2])
                    continue;
                  int nd = d || x1 != x2;
                  auto [m, fresh] = get(x1, x2, nd);
                  g.add_edge(n, m);
                  if (fresh)
                    todo.push_back(m);
                }
            }
        }
      auto scc = tarjan_scc(g);
      std::vector<bool> left(scc.count, false), right(scc.count, false);
      for (int n = 0; n < g.size(); ++n)
        {
          auto [v1, v2, d] = nodes[n];
          int c = scc.comp[n];
          if (!d || !scc.nontrivial[c])
            continue;
          left[c] = left[c] || a.is_buchi(v1 / N);
          right[c] = right[c] || a.is_buchi(v2 / N);
          if (left[c] && right[c])
            return true;
        }
      return false;
    }
  }

  up_verdict
  accepting_runs_up(const ordered_automaton& a, const up_word& w,
                    up_mode mode)
  {
    if (w.period.empty())
      throw input_error("the period of an ultimately periodic word is empty");
    check_letters(a, w.prefix);
    check_letters(a, w.period);
    lasso_product lp(a, w);
    if (!lp.good[lp.start])
      return {up_count::zero, std::nullopt};
    up_verdict v{up_count::one, lp.lasso()};
    if (mode == up_mode::unique && has_two_runs(lp))
      v.count = up_count::many;
    return v;
  }

  namespace
  {
    word
    word_from_parents(const std::vector<std::pair<int, letter>>& parent,
                      int node)
    {
      word w;
      for (int v = node; parent[v].first >= 0; v = parent[v].first)
        w.push_back(parent[v].second);
      return word(w.rbegin(), w.rend());
    }
  }

  finite_check
  check_unambiguous_finite(const ordered_automaton& a)
  {
    using node = std::uint64_t;
    std::uint64_t n = a.size();
    auto id = [n](state p, state q, int d) {
      return (static_cast<node>(p) * n + static_cast<node>(q)) * 2 + d;
    };
    // sparse: good automata reach few of the n² pairs
    std::unordered_map<node, std::pair<node, letter>> parent;
    const node root = std::numeric_limits<node>::max();
    node s = id(a.initial(), a.initial(), 0);
    parent[s] = {root, 0};
    auto witness = [&](node u) {
      word w;
      for (node v = u; v != s; v = parent[v].first)
        w.push_back(parent[v].second);
      return word(w.rbegin(), w.rend());
    };
    // groups of nodes sharing one shortest word, in shortlex order, so the
    // first witness found is the shortlex-least ambiguous word
    std::vector<std::vector<node>> level{{s}};
    while (!level.empty())
      {
        std::vector<std::vector<node>> next;
        for (const auto& group : level)
          for (letter x = 0; x < a.alphabet_size(); ++x)
            {
              std::vector<node> found;
              for (node v : group)
                {
                  int d = static_cast<int>(v % 2);
                  state p = static_cast<state>((v / 2) / n);
                  state q = static_cast<state>((v / 2) % n);
                  for (state p2 : a.succ(p, x))
                    for (state q2 : a.succ(q, x))
                      {
                        int nd = d || p2 != q2;
                        node u = id(p2, q2, nd);
                        if (!parent.try_emplace(u, v, x).second)
                          continue;
                        if (nd && a.is_final(p2) && a.is_final(q2))
                          return {false, witness(u)};
                        found.push_back(u);
                      }
                }
              if (!found.empty())
                next.push_back(std::move(found));
            }
        level = std::move(next);
      }
    return {true, std::nullopt};
  }

  finite_check
  check_universal_finite(const ordered_automaton& a)
  {
    std::map<std::vector<state>, int> id;
    std::vector<std::vector<state>> sets;
    std::vector<std::pair<int, letter>> parent;
    // the start set is left out of `id`: it has read no letter yet
    sets.push_back({a.initial()});
    parent.push_back({-1, 0});
    std::deque<int> todo{0};
    while (!todo.empty())
      {
        int v = todo.front();
        todo.pop_front();
        for (letter x = 0; x < a.alphabet_size(); ++x)
          {
            std::vector<bool> in(a.size(), false);
            for (state q : sets[v])
              for (state r : a.succ(q, x))
                in[r] = true;
            std::vector<state> next;
            bool accepting = false;
            for (state r = 0; r < a.size(); ++r)
              if (in[r])
                {
                  next.push_back(r);
                  accepting = accepting || a.is_final(r);
                }
            if (id.count(next))
              continue;
            int u = static_cast<int>(sets.size());
            id[next] = u;
            sets.push_back(std::move(next));
            parent.push_back({v, x});
            if (!accepting)
              return {false, word_from_parents(parent, u)};
            todo.push_back(u);
          }
      }
    return {true, std::nullopt};
  }

  up_check
  check_universal_up_bounded(const ordered_automaton& a, std::size_t max_u,
                             std::size_t max_v, bool unique)
  {
    for (const auto& w : all_up_words(a.alphabet_size(), max_u, max_v))
      {
        auto v = accepting_runs_up(a, w,
                                   unique ? up_mode::unique : up_mode::exists);
        if (v.count == up_count::zero || (unique && v.count == up_count::many))
          return {false, w, v.count};
      }
    return {true, std::nullopt};
  }
}

#include <ufact/parsing.hh>
#include <ufact/errors.hh>
#include <ufact/graph.hh>

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>

namespace ufact
{
  namespace
  {
    constexpr std::uint64_t many = std::numeric_limits<std::uint64_t>::max();

    std::uint64_t
    sat_add(std::uint64_t a, std::uint64_t b)
    {
      return a > many - b ? many : a + b;
    }

    std::uint64_t
    sat_mul(std::uint64_t a, std::uint64_t b)
    {
      if (a == 0 || b == 0)
        return 0;
      return a > many / b ? many : a * b;
    }

    // Derivation counts per (node, span), memoized.  Plus nodes keep a
    // second table for the iteration count P(i, j).
    class span_counter
    {
    public:
      explicit span_counter(const word& w) : w_(w), n_(w.size() + 1) {}

      std::uint64_t
      count(const expr_node* e, std::size_t i, std::size_t j)
      {
        std::size_t len = j - i;
        if (len < e->min_len)
          return 0;
        if (len == 0 ? !e->nullable
                     : !(e->first & letter_bit(w_[i]))
                         || !(e->last & letter_bit(w_[j - 1])))
          return 0;
        auto& slot = cell(memo_, e, i, j);
        if (slot != unset)
          return slot;
        std::uint64_t c = 0;
        switch (e->kind)
          {
          case expr_kind::empty:
          case expr_kind::omega:
            break;
          case expr_kind::epsilon:
            c = len == 0;
            break;
          case expr_kind::letter:
            c = len == 1 && w_[i] == e->a;
            break;
          case expr_kind::union_:
            c = sat_add(count(e->left.get(), i, j),
                        count(e->right.get(), i, j));
            break;
          case expr_kind::concat:
            for (std::size_t m = i; m <= j; ++m)
              {
                auto l = count(e->left.get(), i, m);
                if (l)
                  c = sat_add(c, sat_mul(l, count(e->right.get(), m, j)));
              }
            break;
          case expr_kind::plus:
            c = iterations(e, i, j);
            break;
          }
        cell(memo_, e, i, j) = c;
        return c;
      }

      /// P(i, j): derivations of w[i, j) as one or more nonempty
      /// iterations of the body of plus node e.
      std::uint64_t
      iterations(const expr_node* e, std::size_t i, std::size_t j)
      {
        auto& slot = cell(plus_memo_, e, i, j);
        if (slot != unset)
          return slot;
        const expr_node* b = e->left.get();
        std::uint64_t c = count(b, i, j);
        for (std::size_t m = i + 1; m < j; ++m)
          {
            auto l = count(b, i, m);
            if (l)
              c = sat_add(c, sat_mul(l, iterations(e, m, j)));
          }
        if (c && b->nullable)
          c = many;  // empty iterations can be inserted anywhere
        cell(plus_memo_, e, i, j) = c;
        return c;
      }

      const word& w() const { return w_; }

    private:
      static constexpr std::uint64_t unset = many - 1;
      using table = std::unordered_map<const expr_node*,
                                       std::vector<std::uint64_t>>;

      std::uint64_t&
      cell(table& t, const expr_node* e, std::size_t i, std::size_t j)
      {
        auto it = t.find(e);
        if (it == t.end())
          it = t.emplace(e, std::vector<std::uint64_t>(n_ * n_, unset)).first;
        return it->second[i * n_ + j];
      }

      const word& w_;
      std::size_t n_;
      table memo_, plus_memo_;
    };

    parse_tree
    rebuild(span_counter& sc, const expr& e, std::size_t i, std::size_t j)
    {
      parse_tree t{e, i, j, {}};
      switch (e->kind)
        {
        case expr_kind::empty:
        case expr_kind::omega:
        case expr_kind::epsilon:
        case expr_kind::letter:
          break;
        case expr_kind::union_:
          if (sc.count(e->left.get(), i, j))
            t.children.push_back(rebuild(sc, e->left, i, j));
          else
            t.children.push_back(rebuild(sc, e->right, i, j));
          break;
        case expr_kind::concat:
          for (std::size_t m = i; m <= j; ++m)
            if (sc.count(e->left.get(), i, m)
                && sc.count(e->right.get(), m, j))
              {
                t.children.push_back(rebuild(sc, e->left, i, m));
                t.children.push_back(rebuild(sc, e->right, m, j));
                break;
              }
          break;
        case expr_kind::plus:
          {
            const expr_node* b = e->left.get();
            std::size_t from = i;
            while (from < j)
              {
                if (sc.count(b, from, j))
                  {
                    t.children.push_back(rebuild(sc, e->left, from, j));
                    break;
                  }
                for (std::size_t m = from + 1; m < j; ++m)
                  if (sc.count(b, from, m) && sc.iterations(e.get(), m, j))
                    {
                      t.children.push_back(rebuild(sc, e->left, from, m));
                      from = m;
                      break;
                    }
              }
            break;
          }
        }
      return t;
    }
  }

  namespace
  {
    // uint64 -> int map with open addressing; keys never equal `none`.
    class flat_index
    {
    public:
      flat_index() : keys_(1024, none), vals_(1024) {}

      /// The value stored under key, inserting `fresh_value` if absent.
      int
      get(std::uint64_t key, int fresh_value, bool& fresh)
      {
        if (2 * (count_ + 1) > keys_.size())
          grow();
        std::size_t mask = keys_.size() - 1;
        for (std::size_t i = mix(key) & mask;; i = (i + 1) & mask)
          {
            if (keys_[i] == key)
              {
                fresh = false;
                return vals_[i];
              }
            if (keys_[i] == none)
              {
                keys_[i] = key;
                vals_[i] = fresh_value;
                ++count_;
                fresh = true;
                return fresh_value;
              }
          }
      }

      const int*
      find(std::uint64_t key) const
      {
        std::size_t mask = keys_.size() - 1;
        for (std::size_t i = mix(key) & mask;; i = (i + 1) & mask)
          {
            if (keys_[i] == key)
              return &vals_[i];
            if (keys_[i] == none)
              return nullptr;
          }
      }

      void
      put(std::uint64_t key, int value)
      {
        bool fresh;
        get(key, value, fresh);
      }

    private:
      static constexpr std::uint64_t none = ~std::uint64_t(0);

      static std::size_t
      mix(std::uint64_t k)
      {
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
      }

      void
      grow()
      {
        std::vector<std::uint64_t> keys(keys_.size() * 2, none);
        std::vector<int> vals(keys.size());
        std::size_t mask = keys.size() - 1;
        for (std::size_t j = 0; j < keys_.size(); ++j)
          if (keys_[j] != none)
            {
              std::size_t i = mix(keys_[j]) & mask;
              while (keys[i] != none)
                i = (i + 1) & mask;
              keys[i] = keys_[j];
              vals[i] = vals_[j];
            }
        keys_ = std::move(keys);
        vals_ = std::move(vals);
      }

      std::vector<std::uint64_t> keys_;
      std::vector<int> vals_;
      std::size_t count_ = 0;
    };
  }

  // Derivative terms are stacks of pending items, stored as interned
  // linked lists: term t has a top item and the id of the rest (-1 for the
  // empty stack).  Expansion carries the top item separately so that only
  // the stacks left under it get interned.
  struct expr_matcher::impl
  {
    enum item_kind : unsigned { node_item, star_item, omega_item };

    struct item
    {
      item_kind kind;
      const expr_node* e;
    };

    struct edge
    {
      int to;
      bool flag;
      std::uint64_t mult;
    };

    expr root;
    std::unordered_map<const expr_node*, std::uint32_t> node_id;
    std::vector<item> top;
    std::vector<int> rest;
    flat_index ids;
    flat_index steps;  // (term, letter) -> index into step_ranges
    std::vector<std::pair<int, int>> step_ranges;
    std::vector<edge> step_edges;
    std::unordered_map<int, std::uint64_t> ends;
    std::vector<edge> scratch;

    static constexpr std::size_t term_cap = std::size_t(1) << 20;

    // called between words only: term ids do not survive it
    void
    trim()
    {
      if (top.size() < term_cap)
        return;
      top.clear();
      rest.clear();
      ids = flat_index{};
      steps = flat_index{};
      step_ranges.clear();
      step_edges.clear();
      ends.clear();
    }

    std::uint64_t
    item_code(item it)
    {
      auto [pos, fresh] = node_id.try_emplace(
          it.e, static_cast<std::uint32_t>(node_id.size()));
      (void)fresh;
      return std::uint64_t(pos->second) * 3 + it.kind;
    }

    int
    push(item it, int r)
    {
      std::uint64_t key = (item_code(it) << 32) | std::uint32_t(r + 1);
      bool fresh;
      int id = ids.get(key, static_cast<int>(top.size()), fresh);
      if (fresh)
        {
          top.push_back(it);
          rest.push_back(r);
        }
      return id;
    }

    // Expands `it` over stack r until a letter is on top.  `ready` receives
    // the letter node and the stack under it with the Büchi flag (an omega
    // iteration completed on the way); `done` receives the ε-paths that
    // empty the stack.
    template <class Ready, class Done>
    void
    close(item it, int r, bool flag, std::uint64_t filter, const Ready& ready,
          const Done& done)
    {
      const expr_node* e = it.e;
      auto pending = [&](const expr_node* x) {
        return (x->first & filter) || x->nullable;
      };
      switch (it.kind)
        {
        case star_item:
          pop(r, flag, filter, ready, done);
          if (pending(e->left.get()))
            close({node_item, e->left.get()}, push(it, r), flag, filter,
                  ready, done);
          return;
        case omega_item:
          if (pending(e->left.get()))
            close({node_item, e->left.get()}, push(it, r), true, filter,
                  ready, done);
          return;
        case node_item:
          break;
        }
      if (!pending(e))
        return;
      switch (e->kind)
        {
        case expr_kind::empty:
          break;
        case expr_kind::epsilon:
          pop(r, flag, filter, ready, done);
          break;
        case expr_kind::letter:
          ready(e, r, flag);
          break;
        case expr_kind::union_:
          close({node_item, e->left.get()}, r, flag, filter, ready, done);
          close({node_item, e->right.get()}, r, flag, filter, ready, done);
          break;
        case expr_kind::concat:
          close({node_item, e->left.get()},
                push({node_item, e->right.get()}, r), flag, filter, ready,
                done);
          break;
        case expr_kind::plus:
        case expr_kind::omega:
          if (e->left->nullable)
            throw input_error("iterated expression accepts the empty word");
          close({node_item, e->left.get()},
                push({e->kind == expr_kind::plus ? star_item : omega_item, e},
                     r),
                flag, filter, ready, done);
          break;
        }
    }

    template <class Ready, class Done>
    void
    pop(int t, bool flag, std::uint64_t filter, const Ready& ready,
        const Done& done)
    {
      if (t < 0)
        done(flag);
      else
        close(top[t], rest[t], flag, filter, ready, done);
    }

    /// Successors of term t on letter x, merged by (target, flag).
    std::pair<const edge*, const edge*>
    step(int t, letter x)
    {
      std::uint64_t key = (std::uint64_t(std::uint32_t(t + 1)) << 32)
        | std::uint32_t(x);
      if (const int* k = steps.find(key))
        {
          auto [b, n] = step_ranges[*k];
          return {step_edges.data() + b, step_edges.data() + b + n};
        }
      scratch.clear();
      pop(
          t, false, letter_bit(x),
          [&](const expr_node* e, int r, bool flag) {
            if (e->a == x)
              scratch.push_back({r, flag, 1});
          },
          [](bool) {});
      std::sort(scratch.begin(), scratch.end(),
                [](const edge& a, const edge& b) {
                  return a.to != b.to ? a.to < b.to : a.flag < b.flag;
                });
      int begin = static_cast<int>(step_edges.size());
      for (const auto& ed : scratch)
        if (static_cast<int>(step_edges.size()) > begin
            && step_edges.back().to == ed.to
            && step_edges.back().flag == ed.flag)
          step_edges.back().mult = sat_add(step_edges.back().mult, 1);
        else
          step_edges.push_back(ed);
      int n = static_cast<int>(step_edges.size()) - begin;
      steps.put(key, static_cast<int>(step_ranges.size()));
      step_ranges.push_back({begin, n});
      return {step_edges.data() + begin, step_edges.data() + begin + n};
    }

    std::uint64_t
    end_count(int t)
    {
      auto it = ends.find(t);
      if (it != ends.end())
        return it->second;
      std::uint64_t c = 0;
      pop(
          t, false, 0, [](const expr_node*, int, bool) {},
          [&](bool) { c = sat_add(c, 1); });
      ends.emplace(t, c);
      return c;
    }

    // Graph over (term, folded position) seeded with one start node per
    // branch.  A node is good when an accepting continuation exists; a
    // branch has several parses iff it reaches a good node with two live
    // continuations.  Edges are stored flat: node v owns [first[v],
    // first[v+1]).
    std::vector<up_count>
    count_branches(const std::vector<expr>& branches, const up_word& w)
    {
      flat_index id;
      std::vector<std::pair<int, std::uint32_t>> nodes;
      std::vector<int> first{0};
      std::vector<edge> edges;
      const std::uint64_t span = w.prefix.size() + w.period.size();
      auto get = [&](int t, std::size_t p) {
        bool fresh;
        int v = id.get(std::uint64_t(t + 1) * span + p,
                       static_cast<int>(nodes.size()), fresh);
        if (fresh)
          nodes.push_back({t, static_cast<std::uint32_t>(p)});
        return v;
      };
      std::vector<int> starts;
      for (const auto& b : branches)
        starts.push_back(get(push({node_item, b.get()}, -1), 0));
      for (std::size_t v = 0; v < nodes.size(); ++v)
        {
          auto [t, p] = nodes[v];
          std::size_t np = w.next_position(p);
          auto [b, e] = step(t, w.at(p));
          for (auto ed = b; ed != e; ++ed)
            if (ed->to >= 0)  // otherwise a finite word ended here
              {
                edge x{0, ed->flag, ed->mult};
                int to = ed->to;
                x.to = get(to, np);
                edges.push_back(x);
              }
          first.push_back(static_cast<int>(edges.size()));
        }
      const int n = static_cast<int>(nodes.size());

      // iterative Tarjan
      std::vector<int> index(n, -1), low(n), comp(n, -1), stack, work;
      std::vector<int> cursor(n);
      int counter = 0, ncomp = 0;
      for (int root = 0; root < n; ++root)
        {
          if (index[root] >= 0)
            continue;
          work.push_back(root);
          index[root] = low[root] = counter++;
          cursor[root] = first[root];
          stack.push_back(root);
          while (!work.empty())
            {
              int v = work.back();
              if (cursor[v] < first[v + 1])
                {
                  int u = edges[cursor[v]++].to;
                  if (index[u] < 0)
                    {
                      index[u] = low[u] = counter++;
                      cursor[u] = first[u];
                      stack.push_back(u);
                      work.push_back(u);
                    }
                  else if (comp[u] < 0)
                    low[v] = std::min(low[v], index[u]);
                  continue;
                }
              work.pop_back();
              if (!work.empty())
                low[work.back()] = std::min(low[work.back()], low[v]);
              if (low[v] == index[v])
                {
                  int u;
                  do
                    {
                      u = stack.back();
                      stack.pop_back();
                      comp[u] = ncomp;
                    }
                  while (u != v);
                  ++ncomp;
                }
            }
        }

      // a flagged edge inside a component lies on a cycle
      std::vector<int> pred_first(n + 1, 0), preds(edges.size());
      for (const auto& ed : edges)
        ++pred_first[ed.to + 1];
      for (int v = 0; v < n; ++v)
        pred_first[v + 1] += pred_first[v];
      {
        auto fill = pred_first;
        for (int v = 0; v < n; ++v)
          for (int k = first[v]; k < first[v + 1]; ++k)
            preds[fill[edges[k].to]++] = v;
      }
      auto back_reach = [&](std::vector<int> todo) {
        std::vector<bool> seen(n, false);
        for (int v : todo)
          seen[v] = true;
        while (!todo.empty())
          {
            int v = todo.back();
            todo.pop_back();
            for (int k = pred_first[v]; k < pred_first[v + 1]; ++k)
              if (!seen[preds[k]])
                {
                  seen[preds[k]] = true;
                  todo.push_back(preds[k]);
                }
          }
        return seen;
      };
      std::vector<int> seeds;
      for (int v = 0; v < n; ++v)
        for (int k = first[v]; k < first[v + 1]; ++k)
          if (edges[k].flag && comp[edges[k].to] == comp[v])
            {
              seeds.push_back(v);
              break;
            }
      auto good = back_reach(std::move(seeds));
      std::vector<int> forks;
      for (int v = 0; v < n; ++v)
        {
          if (!good[v])
            continue;
          std::uint64_t live = 0;
          for (int k = first[v]; k < first[v + 1]; ++k)
            if (good[edges[k].to])
              live = sat_add(live, edges[k].mult);
          if (live >= 2)
            forks.push_back(v);
        }
      auto forked = back_reach(std::move(forks));
      std::vector<up_count> res;
      for (int v : starts)
        res.push_back(!good[v]    ? up_count::zero
                      : forked[v] ? up_count::many
                                  : up_count::one);
      return res;
    }
  };

  expr_matcher::expr_matcher(expr e) : impl_(std::make_unique<impl>())
  {
    impl_->root = std::move(e);
  }

  expr_matcher::~expr_matcher() = default;

  std::uint64_t
  expr_matcher::count(const word& w)
  {
    if (w.empty())
      throw input_error("count_parses needs a nonempty word");
    auto& m = *impl_;
    m.trim();
    std::map<int, std::uint64_t> cur{
        {m.push({impl::node_item, m.root.get()}, -1), 1}};
    for (letter x : w)
      {
        std::map<int, std::uint64_t> next;
        for (const auto& [t, c] : cur)
          {
            if (t < 0)
              continue;
            auto [b, e] = m.step(t, x);
            for (auto ed = b; ed != e; ++ed)
              {
                auto& slot = next[ed->to];
                slot = sat_add(slot, sat_mul(c, ed->mult));
              }
          }
        cur = std::move(next);
      }
    std::uint64_t total = 0;
    for (const auto& [t, c] : cur)
      total = sat_add(total, sat_mul(c, t < 0 ? 1 : m.end_count(t)));
    return total;
  }

  up_parse_count
  expr_matcher::count_up(const up_word& w)
  {
    if (w.period.empty())
      throw input_error("empty period");
    impl_->trim();
    up_parse_count r;
    int ones = 0;
    bool any_many = false;
    r.branches = impl_->count_branches(union_operands(impl_->root), w);
    for (auto c : r.branches)
      {
        ones += c == up_count::one;
        any_many = any_many || c == up_count::many;
      }
    if (any_many || ones > 1)
      r.total = up_count::many;
    else
      r.total = ones ? up_count::one : up_count::zero;
    return r;
  }

  std::uint64_t
  count_parses(const expr& e, const word& w)
  {
    if (w.empty())
      throw input_error("count_parses needs a nonempty word");
    span_counter sc(w);
    return sc.count(e.get(), 0, w.size());
  }

  std::uint64_t
  count_parses_derivative(const expr& e, const word& w)
  {
    return expr_matcher(e).count(w);
  }

  parse_tree
  parse_unique(const expr& e, const word& w)
  {
    if (w.empty())
      throw input_error("parse_unique needs a nonempty word");
    span_counter sc(w);
    auto c = sc.count(e.get(), 0, w.size());
    if (c == 0)
      throw no_parse("word has no parse");
    if (c > 1)
      throw ambiguous_parse(c);
    return rebuild(sc, e, 0, w.size());
  }

  up_parse_count
  count_up_parses(const expr& e, const up_word& w)
  {
    return expr_matcher(e).count_up(w);
  }

  namespace
  {
    std::optional<fact_tree>
    to_fact(const parse_tree& t, const word& w, const morphism& phi)
    {
      switch (t.e->kind)
        {
        case expr_kind::empty:
        case expr_kind::epsilon:
          return std::nullopt;
        case expr_kind::omega:
          throw input_error("infinite parse has no factorization tree");
        case expr_kind::letter:
          return fact_leaf(w[t.from], phi);
        case expr_kind::union_:
          return to_fact(t.children.at(0), w, phi);
        case expr_kind::concat:
        case expr_kind::plus:
          {
            std::vector<fact_tree> kids;
            for (const auto& c : t.children)
              if (auto f = to_fact(c, w, phi))
                kids.push_back(std::move(*f));
            if (kids.empty())
              return std::nullopt;
            if (kids.size() == 1)
              return std::move(kids[0]);
            return fact_node(std::move(kids), phi);
          }
        }
      return std::nullopt;
    }
  }

  fact_tree
  parse_to_fact_tree(const parse_tree& t, const word& w, const morphism& phi)
  {
    auto f = to_fact(t, w, phi);
    if (!f)
      throw input_error("parse of the empty word");
    return *f;
  }
}
